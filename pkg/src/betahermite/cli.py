"""Command-line interface: sample, density, special, verify.

Every output file is a pure function of its JSON sidecar; replicate streams
are keyed by (seed, replicate), so --threads changes wall time but not
results.  Exit status: 0 all good, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .airy import airy_ai, airy_ai_prime, airy_tail, edge_density_closed
from .checks import CHECK_NAMES, run_checks
from .density import (
    Regime,
    bulk_rescale,
    density_sidecar,
    edge_rescale,
    estimate_density,
    semicircle_mass,
    write_density_csv,
    write_sidecar,
)
from .ensemble import EnsembleKind, EnsembleParams, SampleSeed
from .kontsevich import QuadratureControls, kontsevich_k
from .tridiag import sample_spectrum

USAGE_ERROR = 2


def _params(args) -> EnsembleParams:
    kind = EnsembleKind(args.kind)
    return EnsembleParams(n=args.n, beta=args.beta, kind=kind)


def _spectra(params, master_seed, reps, threads):
    seeds = [SampleSeed(master_seed, r) for r in range(reps)]
    if threads <= 1:
        return [sample_spectrum(params, s) for s in seeds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda s: sample_spectrum(params, s), seeds))


def _sidecar_base(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func" and v is not None}
    return {"config": cfg, "versions": {"betahermite": __version__, "numpy": np.__version__}}


def cmd_sample(args) -> int:
    params = _params(args)
    spectra = _spectra(params, args.seed, args.reps, args.threads)
    out = Path(args.output)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["replicate", "index", "eigenvalue"])
        for s in spectra:
            for i, lam in enumerate(s.values):
                w.writerow([s.seed.replicate, i, repr(float(lam))])
    write_sidecar(_sidecar_base(args), out.with_suffix(out.suffix + ".json"))
    print(f"wrote {args.reps} replicates ({params.n} eigenvalues each) to {out}")
    return 0


def _read_spectra(path, params):
    """Rebuild per-replicate spectra from a `sample` CSV."""
    from betahermite.tridiag import Spectrum

    by_rep: dict[int, list[float]] = {}
    with Path(path).open() as fh:
        for row in csv.DictReader(fh):
            by_rep.setdefault(int(row["replicate"]), []).append(float(row["eigenvalue"]))
    return [
        Spectrum(np.sort(np.array(by_rep[r])), params=params, seed=SampleSeed(0, r))
        for r in sorted(by_rep)
    ]


def cmd_density(args) -> int:
    params = _params(args)
    if args.grid_hi <= args.grid_lo:
        print("error: --grid-hi must exceed --grid-lo", file=sys.stderr)
        return USAGE_ERROR
    regime = Regime(args.regime)
    if args.input:
        spectra = _read_spectra(args.input, params)
    else:
        spectra = _spectra(params, args.seed, args.reps, args.threads)
    rescale = edge_rescale if regime is Regime.EDGE else bulk_rescale
    vecs = [s.values for s in spectra] if regime is Regime.RAW else [rescale(s) for s in spectra]
    grid = np.linspace(args.grid_lo, args.grid_hi, args.bins + 1)
    if all(np.min(v) > grid[-1] or np.max(v) < grid[0] for v in vecs):
        print("error: no samples meet the grid; adjust --grid-lo/--grid-hi", file=sys.stderr)
        return USAGE_ERROR
    d = estimate_density(vecs, grid, regime, params)
    ref = None
    if args.reference == "semicircle":
        ref = {"semicircle": np.array(
            [semicircle_mass(a, b) / (b - a) for a, b in zip(grid[:-1], grid[1:])]
        )}
    elif args.reference == "aibeta":
        if int(params.beta) not in (1, 2, 4) or params.beta != int(params.beta):
            print("error: --reference aibeta needs beta in {1,2,4}; "
                  "use `special --fn kontsevich` for other even beta", file=sys.stderr)
            return USAGE_ERROR
        ref = {"aibeta": edge_density_closed(int(params.beta), d.centers).value}
    out = Path(args.output)
    write_density_csv(d, out, reference=ref)
    meta = density_sidecar(d, extra=_sidecar_base(args))
    write_sidecar(meta, out.with_suffix(out.suffix + ".json"))
    print(f"wrote {regime.value} density ({args.bins} bins, {d.n_samples} replicates) to {out}")
    return 0


def cmd_special(args) -> int:
    xs = np.arange(args.x_lo, args.x_hi + 1e-12, args.x_step) if args.x is None else np.array([args.x])
    rows = []
    if args.fn == "ai":
        for x in xs:
            rows.append((x, airy_ai(float(x)), None))
    elif args.fn == "ai-prime":
        for x in xs:
            rows.append((x, airy_ai_prime(float(x)), None))
    elif args.fn == "ai-tail":
        for x in xs:
            rows.append((x, airy_tail(float(x)), None))
    elif args.fn == "aibeta":
        if int(args.beta) not in (1, 2, 4) or args.beta != int(args.beta):
            print("error: --fn aibeta needs beta in {1,2,4}; "
                  "use --fn kontsevich for other even beta", file=sys.stderr)
            return USAGE_ERROR
        for x in xs:
            rows.append((x, edge_density_closed(int(args.beta), float(x)).value, None))
    elif args.fn == "kontsevich":
        ctrl = QuadratureControls()
        for x in xs:
            r = kontsevich_k(args.kn, args.beta, float(x), ctrl=ctrl)
            if not r.converged:
                print(f"error: quadrature budget exhausted at x={x}", file=sys.stderr)
                return 1
            rows.append((x, r.value, r.error))
    out = Path(args.output) if args.output else None
    lines = [("x", "value", "error_estimate")]
    for x, v, e in rows:
        lines.append((repr(float(x)), repr(float(v)), "" if e is None else repr(float(e))))
    if out:
        with out.open("w", newline="") as fh:
            csv.writer(fh).writerows(lines)
        write_sidecar(_sidecar_base(args), out.with_suffix(out.suffix + ".json"))
    else:
        for row in lines:
            print(",".join(row))
    return 0


def cmd_verify(args) -> int:
    names = list(CHECK_NAMES) if args.check == "all" else [args.check]
    try:
        results = run_checks(names, master_seed=args.seed, n=args.n, beta=args.beta)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    report = {
        "seed": args.seed,
        "checks": [r.to_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.check_name} {r.params}: metric={r.metric:.3e} tol={r.tolerance:.3e}",
              file=sys.stderr)
    return 0 if report["all_passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="betahermite",
        description="Monte Carlo and exact verification for beta-Hermite and "
                    "fixed-trace beta-Hermite ensembles",
    )
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("BETAHERMITE_THREADS", "1")),
                   help="worker threads for replicate fan-out (results independent of k)")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("sample", help="sample spectra to CSV")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--beta", type=float, required=True)
    ps.add_argument("--kind", choices=[k.value for k in EnsembleKind], default="gaussian")
    ps.add_argument("--reps", type=int, default=1)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--output", default="spectra.csv")
    ps.set_defaults(func=cmd_sample)

    pd = sub.add_parser("density", help="estimate a scaled density to CSV")
    pd.add_argument("--n", type=int, required=True)
    pd.add_argument("--beta", type=float, required=True)
    pd.add_argument("--kind", choices=[k.value for k in EnsembleKind], default="gaussian")
    pd.add_argument("--reps", type=int, default=100)
    pd.add_argument("--seed", type=int, default=0)
    pd.add_argument("--input", default=None, metavar="SPECTRA_CSV",
                    help="reuse spectra from a `sample` run instead of sampling inline")
    pd.add_argument("--regime", choices=[r.value for r in Regime], default="bulk")
    pd.add_argument("--grid-lo", type=float, default=-1.2)
    pd.add_argument("--grid-hi", type=float, default=1.2)
    pd.add_argument("--bins", type=int, default=60)
    pd.add_argument("--reference", choices=["semicircle", "aibeta"], default=None)
    pd.add_argument("--output", default="density.csv")
    pd.set_defaults(func=cmd_density)

    pf = sub.add_parser("special", help="tabulate the limiting special functions")
    pf.add_argument("--fn", choices=["ai", "ai-prime", "ai-tail", "aibeta", "kontsevich"],
                    required=True)
    pf.add_argument("--beta", type=float, default=2.0)
    pf.add_argument("--kn", type=int, default=2, metavar="N",
                    help="number of integration variables for --fn kontsevich")
    pf.add_argument("--x", type=float, default=None)
    pf.add_argument("--x-lo", type=float, default=-5.0)
    pf.add_argument("--x-hi", type=float, default=3.0)
    pf.add_argument("--x-step", type=float, default=0.25)
    pf.add_argument("--output", default=None)
    pf.set_defaults(func=cmd_special)

    pv = sub.add_parser("verify", help="run exact/statistical verification checks")
    pv.add_argument("--check", choices=[*CHECK_NAMES, "all"], default="all")
    pv.add_argument("--n", type=int, default=None)
    pv.add_argument("--beta", type=float, default=None)
    pv.add_argument("--seed", type=int, default=1)
    pv.add_argument("--output", default=None)
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
