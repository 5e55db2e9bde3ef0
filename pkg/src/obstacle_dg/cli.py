"""Command-line harness.

    obstacle-dg solve --config FILE [--override key=value ...]
    obstacle-dg convergence --config FILE --grids 80,160,320,640
    obstacle-dg proptest --suite NAME [--seed S]

Exit codes: 0 success, 1 configuration error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .dg_space import write_solution_csv
from .exact import CompatibilityError
from .properties import SUITES, run_suite
from .runs import config_comments, convergence, run
from .solver2d import write_solution_csv_2d

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="obstacle-dg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_config(sp):
        sp.add_argument("--config", help="JSON run configuration")
        sp.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config entry; dotted keys reach nested objects")

    s = sub.add_parser("solve", help="run one simulation and dump the solution")
    add_config(s)
    s.add_argument("--out", help="solution CSV path (default: config solution_out or solution.csv)")

    c = sub.add_parser("convergence", help="error table over a list of grids")
    add_config(c)
    c.add_argument("--grids", required=True, help="comma-separated ascending cell counts")
    c.add_argument("--out", help="also write the table to this path")
    c.add_argument("--jobs", type=int, default=1, help="worker processes for the grid rows")

    t = sub.add_parser("proptest", help="run a randomized invariant suite")
    t.add_argument("--suite", required=True, help=f"one of: {', '.join(SUITES)}, all")
    t.add_argument("--seed", type=int, default=0)
    return p


def _parse_grids(text: str) -> list[int]:
    try:
        grids = [int(g) for g in text.split(",") if g.strip()]
    except ValueError:
        raise ConfigError("grids", f"not a comma-separated list of integers: {text!r}") from None
    if not grids or any(g < 1 for g in grids):
        raise ConfigError("grids", "cell counts must be positive")
    if grids != sorted(set(grids)):
        raise ConfigError("grids", "cell counts must be strictly ascending")
    return grids


def cmd_solve(args) -> int:
    cfg = load_config(args.config, args.override)
    result = run(cfg)
    out = args.out or cfg.solution_out or "solution.csv"
    if cfg.dimension == 1:
        write_solution_csv(out, result.solution, samples_per_cell=10)
    else:
        write_solution_csv_2d(out, result.solution, s=10)
    line = f"N={result.n_cells} steps={result.steps} T={cfg.T:g}"
    if result.errors is not None:
        l1, l2, linf = result.errors
        line += f" M={cfg.samples_per_cell} L1={l1:.2E} L2={l2:.2E} Linf={linf:.2E}"
    print(line)
    print(f"solution written to {out}")
    return EXIT_OK


def cmd_convergence(args) -> int:
    cfg = load_config(args.config, args.override)
    grids = _parse_grids(args.grids)
    report = convergence(cfg, grids, jobs=args.jobs)
    comments = config_comments(cfg)
    comments["grids"] = ",".join(map(str, grids))
    text = report.to_csv(comments)
    sys.stdout.write(text)
    out = args.out or cfg.table_out
    if out:
        Path(out).write_text(text)
    return EXIT_OK


def cmd_proptest(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; available: {', '.join(SUITES)}, all", file=sys.stderr)
        return EXIT_CONFIG
    print(f"# suite={args.suite} seed={args.seed}")
    failed = 0
    for name, ok, detail in run_suite(args.suite, args.seed):
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
        failed += not ok
    return EXIT_OK if failed == 0 else EXIT_RUNTIME


COMMANDS = {"solve": cmd_solve, "convergence": cmd_convergence, "proptest": cmd_proptest}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, CompatibilityError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
