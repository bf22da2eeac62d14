"""Eigenvalues of real symmetric tridiagonal matrices.

Two independent routes: the production path wraps the LAPACK implicit-shift
QL/QR solver, and a Sturm-sequence bisection solver serves as a slow oracle
for cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .ensemble import EnsembleParams, SampleSeed, TridiagonalSymmetric, sample_ensemble

__all__ = ["Spectrum", "EigenvalueError", "eigenvalues", "eigenvalues_bisect", "sample_spectrum"]


class EigenvalueError(RuntimeError):
    """QL/QR iteration failed to converge; carries the offending matrix."""


@dataclass
class Spectrum:
    """Sorted eigenvalues of one replicate with sampling provenance."""

    values: np.ndarray
    params: EnsembleParams | None = None
    seed: SampleSeed | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)

    @property
    def n(self) -> int:
        return len(self.values)


def eigenvalues(t: TridiagonalSymmetric, params=None, seed=None) -> Spectrum:
    """All eigenvalues by implicit-shift QL/QR with Wilkinson shifts (LAPACK stev).

    Non-convergence raises EigenvalueError naming the failing matrix rather
    than returning silently.
    """
    if t.n == 1:
        return Spectrum(t.diag.copy(), params, seed)
    try:
        vals = scipy.linalg.eigh_tridiagonal(
            t.diag, t.subdiag, eigvals_only=True, lapack_driver="stev"
        )
    except np.linalg.LinAlgError as exc:
        raise EigenvalueError(
            f"QL iteration did not converge for n={t.n}: "
            f"diag={t.diag!r} subdiag={t.subdiag!r}"
        ) from exc
    return Spectrum(np.sort(vals), params, seed)


def _sturm_count(diag: np.ndarray, sub_sq: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Number of eigenvalues strictly below each query point x."""
    n = len(diag)
    # relative safeguard keeps the recurrence defined when a pivot hits zero
    scale = np.max(np.abs(diag)) + np.max(sub_sq, initial=0.0) + 1.0
    tiny = np.finfo(float).tiny * scale + 1e-300
    q = diag[0] - x
    count = (q < 0).astype(np.int64)
    for i in range(1, n):
        q = np.where(np.abs(q) < tiny, np.where(q < 0, -tiny, tiny), q)
        q = diag[i] - x - sub_sq[i - 1] / q
        count += q < 0
    return count


def eigenvalues_bisect(t: TridiagonalSymmetric, abs_tol: float = 1e-12) -> Spectrum:
    """Eigenvalues by Sturm counting and bisection on Gershgorin intervals."""
    if not abs_tol > 0:
        raise ValueError("abs_tol must be > 0")
    n = t.n
    if n == 1:
        return Spectrum(t.diag.copy())
    d, e = t.diag, t.subdiag
    r = np.zeros(n)
    r[:-1] += np.abs(e)
    r[1:] += np.abs(e)
    lo_all = float(np.min(d - r))
    hi_all = float(np.max(d + r))
    sub_sq = e * e

    lo = np.full(n, lo_all)
    hi = np.full(n, hi_all)
    k = np.arange(n)
    # bisection on counts; converges for repeated eigenvalues too
    max_iter = int(np.ceil(np.log2(max((hi_all - lo_all) / abs_tol, 1.0)))) + 4
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        c = _sturm_count(d, sub_sq, mid)
        below = c <= k
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.max(hi - lo) <= abs_tol:
            break
    return Spectrum(0.5 * (lo + hi))


def sample_spectrum(params: EnsembleParams, seed: SampleSeed) -> Spectrum:
    """Sample one replicate and return its spectrum with provenance."""
    return eigenvalues(sample_ensemble(params, seed), params=params, seed=seed)
