import numpy as np
import pytest

from betahermite import EnsembleParams, SampleSeed, sample_beta_hermite


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240911)


def sample_matrices(n, beta, reps, master_seed, kind=None):
    """Replicate matrices from the production sampler."""
    from betahermite import EnsembleKind, fixed_trace_rescale

    params = EnsembleParams(n, beta, kind or EnsembleKind.GAUSSIAN)
    for r in range(reps):
        h = sample_beta_hermite(params, SampleSeed(master_seed, r))
        if params.kind is EnsembleKind.FIXED_TRACE:
            h = fixed_trace_rescale(h, params)
        yield h
