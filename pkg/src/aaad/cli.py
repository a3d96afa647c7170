"""Command-line entry point.

    aaad solve <config> [--key value ...]
    aaad converge <config> --meshes n1,n2,n3 [--against runge|exact]
    aaad compare <runA> <runB> --metric l1|contact-width [--window a,b]
    aaad list-problems

Exit status: 0 success, 1 usage error, 2 solver failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import harness
from .errors import NoTransitionFound, ShapeMismatch, SolverError, UnknownProblem
from .io import read_csv_1d, read_snapshot
from .problems import build_problem, list_problems

EXIT_OK, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2
CONFIG_KEYS = ("problem", "scheme", "nx", "ny", "c", "theta", "cfl", "eps0",
               "t_final_override", "out_dir", "snapshots", "accuracy_mode", "dt_cap_k",
               "reference", "vtk", "stage_fallback")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_overrides(p):
    for key in CONFIG_KEYS:
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None,
                       metavar="VALUE")


def build_parser():
    parser = _Parser(prog="aaad", description="1-D/2-D Euler solvers with adaptive anti-diffusion")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="run one configuration")
    p.add_argument("config", help="key = value config file ('-' for none)")
    _add_overrides(p)

    p = sub.add_parser("converge", help="mesh-refinement study of the density error")
    p.add_argument("config")
    p.add_argument("--meshes", required=True, help="comma-separated nx values")
    p.add_argument("--against", choices=("auto", "runge", "exact"), default="auto")
    _add_overrides(p)

    p = sub.add_parser("compare", help="compare two snapshots or run directories")
    p.add_argument("run_a")
    p.add_argument("run_b")
    p.add_argument("--metric", choices=("l1", "contact-width"), default="l1")
    p.add_argument("--window", help="x-range a,b holding the contact (1-D)")

    sub.add_parser("list-problems", help="show the registered problems")
    return parser


def _load_config(args):
    values = {} if args.config == "-" else harness.read_config_file(args.config)
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return harness.RunConfig.from_mapping(values)


def _snapshot_path(path):
    """Accept a snapshot file or a run directory (uses its last output)."""
    path = Path(path)
    if path.is_dir():
        summary = json.loads((path / "summary.json").read_text())
        return Path([p for p in summary["outputs"] if p.endswith((".csv", ".txt"))][-1])
    return path


def _cmd_solve(args, out):
    cfg = _load_config(args)
    result = harness.run(cfg)
    print(json.dumps(result.summary, indent=2), file=out)
    return EXIT_OK


def _cmd_converge(args, out):
    cfg = _load_config(args)
    try:
        meshes = [int(m) for m in args.meshes.split(",") if m.strip()]
    except ValueError:
        raise UsageError(f"bad mesh list {args.meshes!r}") from None
    need = 2 if args.against == "exact" else 3
    if len(meshes) < need:
        raise UsageError(f"need at least {need} meshes")
    report = harness.convergence_study(cfg, meshes, args.against)
    print(report.table(), file=out)
    return EXIT_OK


def _cmd_compare(args, out):
    pa, pb = _snapshot_path(args.run_a), _snapshot_path(args.run_b)
    if args.metric == "l1":
        rho_a, vol, _ = read_snapshot(pa)
        rho_b, _, _ = read_snapshot(pb)
        print(f"l1 {harness.l1_error(rho_a, rho_b, vol):.6e}", file=out)
        return EXIT_OK
    if pa.suffix != ".csv" or pb.suffix != ".csv":
        raise UsageError("contact-width compares 1-D snapshots")
    if not args.window:
        raise UsageError("contact-width needs --window a,b")
    a, b = (float(v) for v in args.window.split(","))
    for label, path in (("A", pa), ("B", pb)):
        x, W = read_csv_1d(path)
        sel = (x >= a) & (x <= b)
        rho = W[0][sel]
        width = harness.contact_width(rho, rho[0], rho[-1])
        print(f"{label} contact_width {width}", file=out)
    return EXIT_OK


def _cmd_list(args, out):
    for name in list_problems():
        spec = build_problem(name)
        print(f"{name:18s} {spec.dim}-D  t={spec.t_final:<6g} {spec.title}", file=out)
    return EXIT_OK


COMMANDS = {"solve": _cmd_solve, "converge": _cmd_converge, "compare": _cmd_compare,
            "list-problems": _cmd_list}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.command](args, out)
    except SolverError as err:
        print(json.dumps(err.record()), file=out)
        print(f"solver failure: {err}", file=sys.stderr)
        return EXIT_SOLVER
    except UnknownProblem as err:
        print(f"usage error: {err.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, OSError, NoTransitionFound, ShapeMismatch) as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
