"""Command-line frontend: alpha sweeps, witness checks, separable-set
projections, distance-vs-violation comparisons, sign patterns, and CHSH
scans, emitted as CSV or JSON for external plotting.

Exit codes: 0 success, 1 domain error, 2 solver non-convergence (partial
results are still emitted, flagged converged=false).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .measures import (
    ProjectionConfig,
    ProjectionError,
    bnt_check,
    gbi_violation,
    hs_measure_isotropic,
    nearest_separable,
)
from .states import (
    DensityMatrix,
    IsotropicParams,
    density_from_json,
    gamma_signs,
    isotropic,
    isotropic_separability,
)
from .witness import SolverConfig, chsh_max_violation, verify_nearest_separable, witness_candidate

#: column order of projection/violation result rows
RESULT_COLUMNS = ("d", "alpha", "D_closed", "D_numeric", "B", "discrepancy", "gap", "iters", "converged")


def _py(x):
    return x.item() if isinstance(x, np.generic) else x


def _fmt(x) -> str:
    x = _py(x)
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def _parse_alpha_range(spec: str):
    """'v' for a single value, 'start:end:step' for an inclusive grid."""
    parts = spec.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"bad alpha range {spec!r}; expected start:end:step")
    start, end, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError("alpha range step must be > 0")
    values = []
    k = 0
    while True:
        v = start + k * step
        if v > end + step / 2:
            break
        values.append(v)
        k += 1
    return values


def _emit(rows, columns, args):
    if args.format == "json":
        payload = [dict(zip(columns, (_py(x) for x in row))) for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [",".join(columns)]
        lines += [",".join(_fmt(x) for x in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _solver_config(args) -> SolverConfig:
    cfg = {}
    if args.solver_config:
        with open(args.solver_config) as fh:
            cfg = json.load(fh)
    return SolverConfig(
        n_starts=args.n_starts if args.n_starts is not None else cfg.get("n_starts", 32),
        max_iters=args.max_iters if args.max_iters is not None else cfg.get("max_iters", 500),
        tol_conv=cfg.get("tol_conv", 1e-12),
        seed=args.seed if args.seed is not None else cfg.get("seed", _default_seed()),
    )


def _projection_config(args) -> ProjectionConfig:
    solver = _solver_config(args)
    inner = SolverConfig(n_starts=8, max_iters=solver.max_iters,
                         tol_conv=solver.tol_conv, seed=solver.seed)
    return ProjectionConfig(
        tol_gap=args.tol_gap if args.tol_gap is not None else 1e-9,
        solver=inner,
    )


def _default_seed() -> int:
    env = os.environ.get("WITNESSKIT_SEED")
    return int(env) if env else 0


def _seed(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


def _load_state(path: str) -> DensityMatrix:
    with open(path) as fh:
        return density_from_json(json.load(fh))


def _result_row(d, alpha, mr, b_value, discrepancy):
    d_closed = None
    if d is not None and alpha is not None:
        thr = 1.0 / (d + 1)
        d_closed = hs_measure_isotropic(d, alpha) if alpha > thr else 0.0
    return (
        d, alpha, d_closed, mr.distance, b_value, discrepancy,
        mr.gap_certificate, mr.iterations, mr.converged,
    )


def cmd_iso_sweep(args) -> int:
    columns = ("d", "alpha", "threshold", "separable", "D")
    rows = []
    for alpha in _parse_alpha_range(args.alpha):
        p = IsotropicParams(args.d, alpha)
        sep = isotropic_separability(args.d, alpha) == "separable"
        dist = 0.0 if sep else hs_measure_isotropic(args.d, alpha)
        rows.append((args.d, alpha, p.threshold, sep, dist))
    _emit(rows, columns, args)
    return 0


def cmd_gamma_signs(args) -> int:
    signs = gamma_signs(args.d)
    pattern = " ".join("+" if s > 0 else "-" for s in signs)
    if args.format == "json":
        text = json.dumps({"d": args.d, "signs": [int(s) for s in signs]}) + "\n"
    else:
        text = pattern + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_witness_check(args) -> int:
    if args.state:
        target = _load_state(args.state)
        guess = _load_state(args.guess)
        d, alpha = None, None
    else:
        d, alpha = args.d, _single_alpha(args)
        target = isotropic(d, alpha)
        guess_alpha = args.guess_alpha if args.guess_alpha is not None else 1.0 / (d + 1)
        guess = isotropic(d, guess_alpha)
    report = verify_nearest_separable(guess, target, _solver_config(args))
    columns = ("d", "alpha", "ent_expectation", "sep_minimum", "is_witness", "is_optimal")
    _emit([(d, alpha, report.ent_expectation, report.sep_minimum,
            report.is_witness, report.is_optimal)], columns, args)
    return 0


def _single_alpha(args) -> float:
    values = _parse_alpha_range(args.alpha)
    if len(values) != 1:
        raise ValueError("this command takes a single --alpha value")
    return values[0]


def _run_projection(args, target, d, alpha) -> int:
    cfg = _projection_config(args)
    exit_code = 0
    try:
        report = bnt_check(target, cfg)
        row = _result_row(d, alpha, report.measure, report.b_value, report.discrepancy)
    except ProjectionError as exc:
        mr = exc.result
        cand = witness_candidate(mr.nearest.to_density(), target)
        b = gbi_violation(target, cand.operator, cfg.solver)
        row = _result_row(d, alpha, mr, b, abs(mr.distance - b))
        exit_code = 2
        print(f"witnesskit: {exc}", file=sys.stderr)
    _emit([row], RESULT_COLUMNS, args)
    return exit_code


def cmd_measure(args) -> int:
    if args.state:
        target = _load_state(args.state)
        return _run_projection(args, target, None, None)
    alpha = _single_alpha(args)
    return _run_projection(args, isotropic(args.d, alpha), args.d, alpha)


def cmd_bnt(args) -> int:
    alpha = _single_alpha(args)
    return _run_projection(args, isotropic(args.d, alpha), args.d, alpha)


def cmd_chsh_scan(args) -> int:
    if args.d != 2:
        raise ValueError("chsh-scan is defined for d = 2 only")
    cfg = _solver_config(args)
    columns = ("d", "alpha", "chsh_max", "lhv_bound", "violates_chsh")
    rows = []
    for alpha in _parse_alpha_range(args.alpha):
        rho = isotropic(2, alpha)
        value = chsh_max_violation(rho, cfg)
        rows.append((2, alpha, value, 2.0, value > 2.0))
    _emit(rows, columns, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="witnesskit",
        description="Entanglement witnesses and Hilbert-Schmidt distances for isotropic qudit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_alpha=True):
        p.add_argument("--d", type=int, default=2, help="subsystem dimension")
        if needs_alpha:
            p.add_argument("--alpha", required=False,
                           help="mixing parameter, single value or start:end:step")
        p.add_argument("--n-starts", type=int, default=None)
        p.add_argument("--max-iters", type=int, default=None)
        p.add_argument("--tol-gap", type=float, default=None)
        p.add_argument("--seed", type=int, default=None,
                       help="RNG seed (default: WITNESSKIT_SEED env var or 0)")
        p.add_argument("--solver-config", default=None,
                       help="JSON file {n_starts, max_iters, tol_conv, seed}")
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("iso-sweep", help="closed-form distance sweep over alpha")
    common(p)
    p.set_defaults(func=cmd_iso_sweep)

    p = sub.add_parser("witness-check", help="check a nearest-separable-state guess")
    common(p)
    p.add_argument("--guess-alpha", type=float, default=None,
                   help="alpha of the isotropic guess state (default: threshold)")
    p.add_argument("--state", default=None, help="target state JSON file")
    p.add_argument("--guess", default=None, help="guess state JSON file")
    p.set_defaults(func=cmd_witness_check)

    p = sub.add_parser("measure", help="numeric projection onto the separable set")
    common(p)
    p.add_argument("--state", default=None, help="target state JSON file")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("bnt", help="compare numeric distance with maximal GBI violation")
    common(p)
    p.set_defaults(func=cmd_bnt)

    p = sub.add_parser("gamma-signs", help="sign pattern of the correlation operator")
    common(p, needs_alpha=False)
    p.set_defaults(func=cmd_gamma_signs)

    p = sub.add_parser("chsh-scan", help="numeric CHSH maximum over settings")
    common(p)
    p.set_defaults(func=cmd_chsh_scan)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "alpha", None) is None and args.command in (
        "iso-sweep", "witness-check", "measure", "bnt", "chsh-scan",
    ) and not getattr(args, "state", None):
        print("witnesskit: --alpha is required (or --state where supported)", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"witnesskit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
