"""beta-Hermite and fixed-trace beta-Hermite ensembles: sampling, spectral
density estimation, limiting special functions, and exact verification."""

__version__ = "0.1.0"

from .airy import airy_ai, airy_ai_prime, airy_tail, edge_density_closed
from .density import (
    DensityEstimate,
    Regime,
    TestFunction,
    bulk_rescale,
    bump,
    edge_rescale,
    estimate_density,
    raised_cosine,
    semicircle,
    triangle,
    weak_functional,
)
from .ensemble import (
    EnsembleKind,
    EnsembleParams,
    SampleSeed,
    TridiagonalSymmetric,
    fixed_trace_rescale,
    sample_beta_hermite,
    sample_ensemble,
    sample_half_chi,
)
from .kontsevich import (
    KontsevichResult,
    QuadratureControls,
    edge_prefactor,
    kontsevich_edge_density,
    kontsevich_k,
)
from .moments import MomentIndex, big_l, moment_mc, moment_ratio_exact, verify_moment_equivalence
from .tridiag import Spectrum, eigenvalues, eigenvalues_bisect, sample_spectrum

__all__ = [
    "__version__",
    "EnsembleKind", "EnsembleParams", "SampleSeed", "TridiagonalSymmetric",
    "sample_half_chi", "sample_beta_hermite", "fixed_trace_rescale", "sample_ensemble",
    "Spectrum", "eigenvalues", "eigenvalues_bisect", "sample_spectrum",
    "airy_ai", "airy_ai_prime", "airy_tail", "edge_density_closed",
    "QuadratureControls", "KontsevichResult", "kontsevich_k", "edge_prefactor",
    "kontsevich_edge_density",
    "Regime", "DensityEstimate", "TestFunction", "bump", "triangle", "raised_cosine",
    "bulk_rescale", "edge_rescale", "estimate_density", "semicircle", "weak_functional",
    "MomentIndex", "big_l", "moment_mc", "moment_ratio_exact", "verify_moment_equivalence",
]
