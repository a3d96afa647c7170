"""Run the two-blast-wave problem with every scheme and report positivity.

    python3 scripts/blast_survey.py [--no-fallback]
"""
import argparse

from aaad.errors import SolverError
from aaad.harness import RunConfig, run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--no-fallback", action="store_true",
                    help="disable the first-order stage fallback")
    args = ap.parse_args()
    for scheme in ("cu2", "aaad2", "aweno5", "aaad5"):
        cfg = RunConfig("blast", scheme=scheme, stage_fallback=not args.no_fallback)
        try:
            s = run(cfg, write=False).summary
        except SolverError as err:
            print(f"{scheme:8s} failed: {err}")
            continue
        print(f"{scheme:8s} nx={s['nx']:4d} min rho={s['min_rho']:.4f} min p={s['min_p']:.3e} "
              f"fallback stages={s['fallback_stages']}")


if __name__ == "__main__":
    main()
