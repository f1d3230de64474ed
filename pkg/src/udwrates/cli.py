"""Command-line front end: point rates, parameter sweeps, lab estimates, verification.

Exit codes: 0 success, 2 invalid arguments, 3 kernel non-convergence,
4 sweep with failed points, 1 failed verification.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

from . import rates as R
from . import units as U
from .errors import ConvergenceError, DomainError
from .kernels import SeriesPolicy
from .verify import run_suite

SWEEPABLE = ("T-over-w0", "alpha-over-w0", "w0L", "w0z0", "w0d", "theta")


def _fmt(x, digits):
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return repr(x) if digits is None else format(x, f".{digits - 1}e")
    return str(x)


def _add_scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--atoms", type=int, choices=(1, 2), default=1)
    p.add_argument("--bath", choices=("thermal", "accel"), default="thermal")
    p.add_argument("--T-over-w0", dest="T_over_w0", type=float)
    p.add_argument("--alpha-over-w0", dest="alpha_over_w0", type=float)
    p.add_argument("--geom", choices=("free", "mirror", "cavity"), default="free")
    p.add_argument("--w0L", type=float)
    p.add_argument("--w0z0", type=float)
    p.add_argument("--w0d", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--dir", dest="direction", choices=("up", "down"), default="up")
    p.add_argument("--lambda", dest="coupling", type=float, default=1.0)
    p.add_argument("--omega0-ev", dest="omega0_ev", type=float)
    p.add_argument("--policy-rel-tol", dest="policy_rel_tol", type=float)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--fixed-digits", dest="fixed_digits", type=int)


def _build_scenario(args):
    det = R.DetectorSpec(omega0=1.0, coupling=args.coupling)
    if args.bath == "thermal":
        if args.T_over_w0 is None:
            raise DomainError("thermal bath requires --T-over-w0")
        bath = R.ThermalBath(T=args.T_over_w0)
    else:
        if args.alpha_over_w0 is None:
            raise DomainError("accelerated bath requires --alpha-over-w0")
        bath = R.UniformAcceleration(alpha=args.alpha_over_w0)
    if args.geom == "free":
        geom = R.FreeSpace()
    elif args.geom == "mirror":
        if args.w0z0 is None:
            raise DomainError("mirror geometry requires --w0z0")
        geom = R.SingleBoundary(z0=args.w0z0)
    else:
        if args.w0L is None or args.w0z0 is None:
            raise DomainError("cavity geometry requires --w0L and --w0z0")
        geom = R.Cavity(L=args.w0L, z0=args.w0z0)
    cfg = None
    if args.atoms == 2:
        if args.theta is None or args.w0d is None:
            raise DomainError("two atoms require --theta and --w0d")
        cfg = R.TwoAtomConfig(theta=args.theta, d=args.w0d)
    policy = SeriesPolicy() if args.policy_rel_tol is None \
        else SeriesPolicy(rel_tol=args.policy_rel_tol)
    return det, bath, geom, cfg, policy


def _compute(det, bath, geom, cfg, direction, policy) -> R.RateResult:
    if cfg is None:
        return R.single_atom_rate(det, bath, geom, direction, policy)
    return R.two_atom_rate(det, bath, geom, cfg, direction, policy)


def _rate_record(result: R.RateResult, args) -> dict:
    rec = {
        "geometric_factor": result.geometric_factor,
        "occupation_factor": result.occupation_factor,
        "rate": result.rate,
        "normalized_rate": result.normalized_rate,
        "converged": result.converged,
    }
    if args.omega0_ev is not None:
        rate_eV = result.rate * args.omega0_ev
        rec["rate_eV"] = rate_eV
        rec["rate_per_s"] = U.rate_to_inverse_seconds(rate_eV)
    return rec


def cmd_rate(args) -> int:
    det, bath, geom, cfg, policy = _build_scenario(args)
    result = _compute(det, bath, geom, cfg, args.direction, policy)
    rec = _rate_record(result, args)
    if args.format == "json":
        print(json.dumps(rec))
    else:
        for key, val in rec.items():
            print(f"{key}={_fmt(val, args.fixed_digits)}")
    return 0


def cmd_sweep(args) -> int:
    if args.steps < 2:
        raise DomainError("--steps must be >= 2")
    if not args.min < args.max:
        raise DomainError("--min must be below --max")
    axis = args.sweep
    det, bath, geom, cfg, policy = _build_scenario(_with_axis(args, axis, args.min))

    def at(value: float):
        d, b, g, c, _ = _build_scenario(_with_axis(args, axis, value))
        return _compute(d, b, g, c, args.direction, policy)

    values = [args.min + (args.max - args.min) * i / (args.steps - 1)
              for i in range(args.steps)]
    with ThreadPoolExecutor(max_workers=8) as pool:
        futures = [pool.submit(_safe, at, v) for v in values]
        rows = [f.result() for f in futures]

    header = [axis, "normalized_rate", "geometric_factor", "occupation_factor", "converged"]
    records = []
    any_failed = False
    for v, (result, err) in zip(values, rows):
        if err is not None:
            any_failed = True
            records.append({axis: v, "normalized_rate": "", "geometric_factor": "",
                            "occupation_factor": "", "converged": "failed: " + err})
        else:
            records.append({axis: v, "normalized_rate": result.normalized_rate,
                            "geometric_factor": result.geometric_factor,
                            "occupation_factor": result.occupation_factor,
                            "converged": result.converged})
    if args.format == "json":
        print(json.dumps(records))
    else:
        print(",".join(header))
        for rec in records:
            print(",".join(_fmt(rec[k], args.fixed_digits) for k in header))
    return 4 if any_failed else 0


def _safe(fn, v):
    try:
        return fn(v), None
    except (DomainError, ConvergenceError) as exc:
        return None, str(exc)


def _with_axis(args, axis: str, value: float):
    ns = argparse.Namespace(**vars(args))
    setattr(ns, axis.replace("-", "_"), value)
    return ns


def cmd_estimate(args) -> int:
    preset = U.PRESETS[args.preset]
    dim = preset.rounded if args.paper_rounding else U.to_dimensionless(preset.lab)
    det = R.DetectorSpec(omega0=1.0, coupling=preset.lab.coupling)
    bath = R.ThermalBath(T=dim.T_over_w0)
    cav = R.Cavity(L=dim.w0L, z0=dim.w0z0)
    if args.atoms == 1:
        result = R.single_atom_rate(det, bath, cav, "up")
        published_eV, published_per_s = preset.single_eV, preset.single_per_s
    else:
        cfg = R.TwoAtomConfig(theta=preset.lab.theta, d=dim.w0d)
        result = R.two_atom_rate(det, bath, cav, cfg, "up")
        published_eV, published_per_s = preset.pair_eV, preset.pair_per_s
    rate_eV = result.rate * preset.lab.omega0_eV
    rate_per_s = U.rate_to_inverse_seconds(rate_eV)
    rec = {
        "preset": preset.name,
        "atoms": args.atoms,
        "T_over_w0": dim.T_over_w0,
        "w0L": dim.w0L,
        "w0z0": dim.w0z0,
        "w0d": dim.w0d if args.atoms == 2 else None,
        "rate_eV": rate_eV,
        "rate_per_s": rate_per_s,
        "published_eV": published_eV,
        "published_per_s": published_per_s,
        "rel_dev_eV": abs(rate_eV - published_eV) / published_eV,
        "rel_dev_per_s": abs(rate_per_s - published_per_s) / published_per_s,
    }
    if args.format == "json":
        print(json.dumps(rec))
    else:
        for key, val in rec.items():
            print(f"{key}={_fmt(val, args.fixed_digits)}")
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite)
    all_pass = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        all_pass &= res.passed
        line = f"[{status}] {res.suite}: {res.name} (worst {res.worst:.3e}, tol {res.tol:.3e})"
        if res.detail:
            line += f" -- {res.detail}"
        print(line)
    print("verification " + ("passed" if all_pass else "FAILED"))
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udwrates",
        description="Transition rates of static and accelerated two-level detectors "
                    "in thermal baths with Dirichlet boundaries.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rate = sub.add_parser("rate", help="one rate evaluation")
    _add_scenario_flags(p_rate)
    p_rate.set_defaults(fn=cmd_rate)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter, emit a table")
    _add_scenario_flags(p_sweep)
    p_sweep.add_argument("--sweep", choices=SWEEPABLE, required=True,
                         help="the single parameter to sweep")
    p_sweep.add_argument("--min", type=float, required=True)
    p_sweep.add_argument("--max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.set_defaults(fn=cmd_sweep)

    p_est = sub.add_parser("estimate", help="laboratory estimate from a preset")
    p_est.add_argument("--preset", choices=sorted(U.PRESETS), required=True)
    p_est.add_argument("--atoms", type=int, choices=(1, 2), default=1)
    p_est.add_argument("--paper-rounding", dest="paper_rounding", action="store_true",
                       help="use the rounded dimensionless parameters the published "
                            "estimates were computed from")
    p_est.add_argument("--format", choices=("csv", "json"), default="csv")
    p_est.add_argument("--fixed-digits", dest="fixed_digits", type=int)
    p_est.set_defaults(fn=cmd_estimate)

    p_ver = sub.add_parser("verify", help="run a self-verification suite")
    p_ver.add_argument("suite", choices=("balance", "equivalence", "limits",
                                         "oracle", "wightman", "all"))
    p_ver.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
