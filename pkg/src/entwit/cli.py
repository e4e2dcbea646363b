"""``entwit`` command line: ``eval``, ``scan`` and ``verify``.

Exit codes: 0 success (no violations), 1 violations found, 2 usage or
validation error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import oracles
from .exceptions import EntwitError
from .scan import ScanGrid, parse_grid, run_scan, scan_csv
from .states import parse_state_spec
from .witnesses import FIRE_TOL, LU_BASES, LocalUnitarySearchConfig, witness_gamma, witness_lu_min

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2

DEFAULT_TRIALS = {
    "opineq": 1000, "opineq_trace": 1000, "monotonicity": 1000, "support_oracle": 100,
    "majorization_f_l": 1000, "gwer_vertices": 500, "lu_orbit": 20, "blindness": 500,
    "trigger_bounds": 500, "abstract_claim": 200, "soundness": 500,
}


def fmt12(v) -> str:
    """Shortest round-trip decimal, capped at 12 significant digits."""
    if v is None:
        return "undefined"
    r = repr(float(v))
    digits = r.split("e")[0].replace("-", "").replace(".", "").lstrip("0")
    return r if len(digits) <= 12 else f"{float(v):.12g}"


def _seed(args) -> int:
    if args.seed is not None:
        seed = args.seed
    else:
        env = os.environ.get("ENTWIT_SEED")
        if env is None:
            return 0
        try:
            seed = int(env)
        except ValueError:
            raise EntwitError(f"ENTWIT_SEED must be an integer, got {env!r}") from None
    if not 0 <= seed < 2**64:
        raise EntwitError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def cmd_eval(args) -> int:
    rho = parse_state_spec(args.rho).build()
    sigma = parse_state_spec(args.sigma).build()
    tol = FIRE_TOL if args.tol is None else args.tol
    rep = witness_gamma(rho, sigma, fire_tol=tol)
    values = rep.values()
    values["W_C"] = rep.W_C
    lu = None
    if args.lu:
        cfg = LocalUnitarySearchConfig(seed=_seed(args))
        lu = witness_lu_min(rho, sigma, args.lu, cfg).value
        values[f"LU_{args.lu}"] = lu
    print(f"rho   = {args.rho}")
    print(f"sigma = {args.sigma}")
    width = max(len(k) for k in values)
    for key, v in values.items():
        tag = ""
        if key in rep.verdicts:
            tag = rep.verdicts[key].value
        elif key.startswith("LU_"):
            tag = "fired" if v < -tol else "silent"
        print(f"{key:<{width}}  {fmt12(v):>20}  {tag}".rstrip())
    for note in rep.notes:
        print(f"note: {note}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(",".join(values) + "\n")
            fh.write(",".join("" if v is None else fmt12(v) for v in values.values()) + "\n")
    return EXIT_OK


def cmd_scan(args) -> int:
    x_axis, y_axis = parse_grid(args.grid)
    grid = ScanGrid(x_axis, y_axis, parse_state_spec(args.rho), parse_state_spec(args.sigma))
    tol = FIRE_TOL if args.tol is None else args.tol
    text = scan_csv(run_scan(grid, tol))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in oracles.SUITES:
        return _fail(f"unknown suite {args.suite!r}; choose from {', '.join(oracles.SUITES)}")
    trials = args.trials if args.trials is not None else DEFAULT_TRIALS[args.suite]
    if trials < 1:
        return _fail("--trials must be >= 1")
    rep = oracles.run_suite(args.suite, _seed(args), trials)
    print(rep.line())
    return EXIT_OK if rep.ok else EXIT_VIOLATIONS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entwit", description="Negativity-based entanglement conversion witnesses.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate every witness on one (rho, sigma) pair")
    e.add_argument("--rho", required=True, help='source descriptor, e.g. "werner d=2 alpha=-0.2"')
    e.add_argument("--sigma", required=True, help="target descriptor")
    e.add_argument("--out", help="also write the values as a one-row CSV")
    e.add_argument("--tol", type=float, help=f"fired threshold (default {FIRE_TOL:g})")
    e.add_argument("--lu", choices=LU_BASES, help="also minimize this witness over local unitaries")
    e.add_argument("--seed", type=int, help="seed for --lu (fallback: ENTWIT_SEED)")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("scan", help="two-parameter grid scan written as CSV")
    s.add_argument("--rho", required=True, help="source descriptor with one free parameter")
    s.add_argument("--sigma", required=True, help="target descriptor with one free parameter")
    s.add_argument("--grid", required=True, help='"x=<name>:<lo>:<hi>:<n>,y=<name>:<lo>:<hi>:<n>"')
    s.add_argument("--out", help="CSV path (default stdout)")
    s.add_argument("--tol", type=float)
    s.set_defaults(func=cmd_scan)

    v = sub.add_parser("verify", help="run a randomized verification suite")
    v.add_argument("suite", help=f"one of: {', '.join(oracles.SUITES)}")
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, help="u64 seed (fallback: ENTWIT_SEED, then 0)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EntwitError as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
