"""Named verification checks with machine-readable reports.

Each check returns CheckResult entries carrying the measured metric, the
tolerance it was held to, and a pass flag; the CLI serializes them to JSON.
All Monte Carlo inside a check is keyed off the caller's master seed, so a
report is a pure function of its configuration.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import sqrt

import numpy as np

from . import exact
from .density import Regime, estimate_density
from .ensemble import EnsembleKind, EnsembleParams, SampleSeed, sample_beta_hermite
from .kontsevich import QuadratureControls, kontsevich_edge_density, kontsevich_k
from .airy import edge_density_closed
from .moments import MomentIndex, big_l, moment_ratio_exact, verify_moment_equivalence
from .tridiag import sample_spectrum

__all__ = ["CheckResult", "CHECK_NAMES", "run_checks"]


@dataclass
class CheckResult:
    check_name: str
    params: dict
    metric: float
    tolerance: float
    passed: bool
    details: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def check_integral_eq(n: int = 2, beta: float = 2.0) -> list[CheckResult]:
    tol = 1e-6 if n == 2 else 1e-5
    step = 0.1 if n == 2 else 0.5
    grid = np.arange(-3.0, 3.0 + step / 2, step)
    res = exact.verify_integral_equation(n, beta, grid)
    return [CheckResult(
        check_name="integral-eq",
        params={"n": n, "beta": beta, "grid": [-3.0, 3.0, step]},
        metric=res, tolerance=tol, passed=bool(res <= tol),
        details="max |gaussian density - radial integral of fixed-trace density|",
    )]


def check_stieltjes(n_max: int = 50, master_seed: int = 1) -> list[CheckResult]:
    out = []
    worst_rel = 0.0
    worst_sum = 0.0
    exceeded = 0
    rng = np.random.default_rng(master_seed)
    for n in range(2, n_max + 1):
        z = exact.hermite_zeros(n)
        lv = exact.log_vandermonde_sq(z)
        lmax = exact.log_vandermonde_sq_max(n).log_abs
        worst_rel = max(worst_rel, abs(lv - lmax) / abs(lmax))
        worst_sum = max(worst_sum, abs(np.sum(z**2) - n * (n - 1) / 2.0))
        r2 = n * (n - 1) / 2.0
        for _ in range(100):
            d = rng.standard_normal(n)
            pt = d / np.linalg.norm(d) * sqrt(r2 * rng.uniform(0.0, 1.0))
            if exact.log_vandermonde_sq(pt) > lmax:
                exceeded += 1
    out.append(CheckResult(
        check_name="stieltjes",
        params={"n_max": n_max}, metric=worst_rel, tolerance=1e-10,
        passed=bool(worst_rel <= 1e-10),
        details="log-relative error of Vandermonde^2 at Hermite zeros vs closed form",
    ))
    out.append(CheckResult(
        check_name="stieltjes-sphere",
        params={"n_max": n_max}, metric=worst_sum, tolerance=1e-9,
        passed=bool(worst_sum <= 1e-9),
        details="sum of squared Hermite zeros vs n(n-1)/2",
    ))
    out.append(CheckResult(
        check_name="stieltjes-perturbations",
        params={"n_max": n_max, "per_n": 100, "seed": master_seed},
        metric=float(exceeded), tolerance=0.0, passed=bool(exceeded == 0),
        details="random feasible points exceeding the maximum",
    ))
    return out


def check_bound(
    n: int = 20,
    betas=(1.0, 2.0, 4.0),
    n_reps: int = 10_000,
    master_seed: int = 2,
) -> list[CheckResult]:
    out = []
    r = sqrt(n * (n - 1) / 2.0)
    grid = np.linspace(-1.0, 1.0, 41)
    for beta in betas:
        params = EnsembleParams(n, beta, EnsembleKind.FIXED_TRACE)
        vecs = []
        for rep in range(n_reps):
            s = sample_spectrum(params, SampleSeed(master_seed, rep))
            vecs.append(s.values / r)  # bulk coordinate of the bound
        d = estimate_density(vecs, grid, Regime.RAW, params)
        # d estimates rho_x(x) = r * rho_lambda(r x); the bound is on rho_lambda
        emp = d.height / r
        bound = exact.density_upper_bound(n, beta, d.centers)
        margin = float(np.max(emp - bound))
        out.append(CheckResult(
            check_name="bound-dominance",
            params={"n": n, "beta": beta, "n_reps": n_reps, "seed": master_seed},
            metric=margin, tolerance=0.0, passed=bool(margin <= 0.0),
            details="max (empirical density - upper bound) over bin centers",
        ))
    for beta in betas:
        diffs = [abs(exact.bound_constants(m, beta).w_n_beta - np.log(exact.c_beta(beta)))
                 for m in (50, 200, 800)]
        mono = diffs[0] > diffs[1] > diffs[2]
        out.append(CheckResult(
            check_name="bound-constant-limit",
            params={"beta": beta, "n_ladder": [50, 200, 800]},
            metric=diffs[-1], tolerance=diffs[0],
            passed=bool(mono),
            details=f"|w_N - ln C_beta| ladder {['%.5f' % d for d in diffs]}, monotone decrease",
        ))
    return out


def check_moments(master_seed: int = 3, n_reps: int = 10_000) -> list[CheckResult]:
    out = []
    for n in (10, 40):
        rep = verify_moment_equivalence(
            EnsembleParams(n, 2.0), MomentIndex.single_a(n, 1, 2), n_reps,
            SampleSeed(master_seed, 0),
        )
        out.append(CheckResult(
            check_name="moments-equivalence",
            params={"n": n, "beta": 2.0, "moment": "a1^2", "n_reps": n_reps, "seed": master_seed},
            metric=abs((rep.mc_ratio or 0.0) - rep.exact_ratio),
            tolerance=3.0 * (rep.std_error or 0.0),
            passed=bool(rep.within_3_sigma),
            details=f"mc_ratio={rep.mc_ratio:.5f} exact={rep.exact_ratio:.5f} "
                    f"distance from unity {rep.distance_from_unity:.2e}",
        ))
    # exact-ratio ladder is monotone toward 1
    ratios = [moment_ratio_exact(n, 2.0, 2) for n in (10, 40, 160)]
    mono = ratios[0] < ratios[1] < ratios[2] < 1.0 + 1e-15
    out.append(CheckResult(
        check_name="moments-ratio-ladder",
        params={"beta": 2.0, "s": 2, "n_ladder": [10, 40, 160]},
        metric=1.0 - ratios[-1], tolerance=1.0 - ratios[0],
        passed=bool(mono),
        details=f"ratios {['%.6f' % q for q in ratios]}",
    ))
    # Gaussian trace moment <tr H^2> = 2L
    n, beta = 20, 1.0
    reps = 4000
    vals = np.empty(reps)
    for k in range(reps):
        h = sample_beta_hermite(EnsembleParams(n, beta), SampleSeed(master_seed + 7, k))
        vals[k] = h.trace_sq()
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / sqrt(reps))
    target = 2.0 * big_l(n, beta)
    out.append(CheckResult(
        check_name="moments-trace",
        params={"n": n, "beta": beta, "n_reps": reps, "seed": master_seed + 7},
        metric=abs(mean - target), tolerance=3.0 * se,
        passed=bool(abs(mean - target) <= 3.0 * se),
        details=f"<tr H^2> = {mean:.2f} vs 2L = {target:.2f} (se {se:.3f})",
    ))
    return out


def check_edge_remark(ctrl: QuadratureControls | None = None) -> list[CheckResult]:
    out = []
    ctrl = ctrl or QuadratureControls()
    xs = np.arange(-5.0, 3.0 + 1e-9, 0.25)
    worst = 0.0
    for x in xs:
        k = kontsevich_k(2, 2.0, float(x), route="reduction")
        closed = edge_density_closed(2, float(x)).value
        worst = max(worst, abs(0.5 * k.value - closed))
    out.append(CheckResult(
        check_name="edge-remark-identity",
        params={"beta": 2, "grid": [-5.0, 3.0, 0.25]},
        metric=worst, tolerance=1e-8, passed=bool(worst <= 1e-8),
        details="max |prefactor*K_22(x) - (Ai'^2 - x Ai^2)|",
    ))
    worst_q = 0.0
    for x in (-2.0, 0.0, 2.0):
        kq = kontsevich_k(2, 2.0, x, ctrl=ctrl, route="quadrature")
        kr = kontsevich_k(2, 2.0, x, route="reduction")
        worst_q = max(worst_q, abs(kq.value - kr.value))
    out.append(CheckResult(
        check_name="edge-remark-quadrature",
        params={"beta": 2, "x": [-2.0, 0.0, 2.0], "eps_ladder": list(ctrl.eps_ladder)},
        metric=worst_q, tolerance=1e-3, passed=bool(worst_q <= 1e-3),
        details="regularized quadrature vs Airy-derivative reduction",
    ))
    k4 = kontsevich_edge_density(4, 0.0, ctrl=ctrl)
    closed4 = edge_density_closed(4, 0.0).value
    err_bar = max(k4.error or 0.0, 1e-12)
    diff = abs(k4.value - closed4)
    out.append(CheckResult(
        check_name="edge-remark-beta4",
        params={"beta": 4, "x": 0.0, "eps_ladder": list(ctrl.eps_ladder)},
        metric=diff, tolerance=min(max(err_bar, 1e-6), 5e-2),
        passed=bool(diff <= max(err_bar, 1e-6) and err_bar <= 5e-2),
        details=f"multiple-integral {k4.value:.7f} +- {err_bar:.1e} vs closed {closed4:.7f}",
    ))
    return out


CHECK_NAMES = ("integral-eq", "stieltjes", "bound", "moments", "edge-remark")


def run_checks(
    names,
    master_seed: int = 1,
    n: int | None = None,
    beta: float | None = None,
) -> list[CheckResult]:
    """Run the named checks (or all) and return their results."""
    results: list[CheckResult] = []
    for name in names:
        if name == "integral-eq":
            if n is not None or beta is not None:
                results += check_integral_eq(n or 2, beta or 2.0)
            else:
                for b in (1.0, 2.0, 4.0):
                    results += check_integral_eq(2, b)
                results += check_integral_eq(3, 2.0)
        elif name == "stieltjes":
            results += check_stieltjes(n_max=n or 50, master_seed=master_seed)
        elif name == "bound":
            results += check_bound(n=n or 20, master_seed=master_seed + 10)
        elif name == "moments":
            results += check_moments(master_seed=master_seed + 20)
        elif name == "edge-remark":
            results += check_edge_remark()
        else:
            raise ValueError(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}")
    return results
