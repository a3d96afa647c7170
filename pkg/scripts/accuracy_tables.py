"""Density L1 errors and rates for the smooth 1-D and 2-D accuracy problems.

    python3 scripts/accuracy_tables.py [--dim 1|2] [--schemes aaad2,aaad5]

1-D errors are Runge estimates from consecutive 2:1 meshes; 2-D errors are
measured against the exact (translated vortex) solution.
"""
import argparse

from aaad.harness import RunConfig, convergence_study

MESHES = {1: {"aaad2": [25, 50, 100, 200, 400], "aaad5": [25, 50, 100, 200, 400]},
          2: {"aaad2": [25, 50, 100, 200], "aaad5": [25, 50, 100, 200]}}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, choices=(1, 2), default=1)
    ap.add_argument("--schemes", default="aaad2,aaad5")
    args = ap.parse_args()
    problem = "accuracy_1d" if args.dim == 1 else "accuracy_2d"
    for scheme in args.schemes.split(","):
        cfg = RunConfig(problem, scheme=scheme, accuracy_mode=True)
        report = convergence_study(cfg, MESHES[args.dim][scheme])
        print(f"{problem} {scheme} ({report.method})")
        print(report.table())
        print()


if __name__ == "__main__":
    main()
