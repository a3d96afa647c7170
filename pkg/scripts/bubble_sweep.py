"""Sweep the anti-diffusion constant C on the shock-bubble interaction.

    python3 scripts/bubble_sweep.py [--nx 200] [--ref-nx 2000] [--c 0,0.01,...]

Each run is scored by its density total variation on x in [-0.65, -0.15]
in excess of a fine CU2 reference restricted to the same cells (relative to
the reference range), plus the number of stages that needed the first-order
fallback.  Runs that break down are reported with their failure time.
"""
import argparse

import numpy as np

from aaad.errors import SolverError
from aaad.harness import RunConfig, oscillation_excess, restrict, run

WINDOW = (-0.65, -0.15)


def profile(res):
    x = res.grid.centers()[0]
    return res.density[(x >= WINDOW[0]) & (x <= WINDOW[1])]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nx", type=int, default=200)
    ap.add_argument("--ref-nx", type=int, default=2000)
    ap.add_argument("--scheme", default="aaad2")
    ap.add_argument("--c", default="0,0.01,0.03,0.05,0.1,0.15,0.25,0.5,1.0")
    args = ap.parse_args()
    ref = run(RunConfig("shock_bubble", scheme="cu2", nx=args.ref_nx), write=False)
    coarse = restrict(ref.density, args.ref_nx // args.nx, method="average")
    x = (np.arange(args.nx) + 0.5) / args.nx * (ref.grid.x_max - ref.grid.x_min) + ref.grid.x_min
    ref_profile = coarse[(x >= WINDOW[0]) & (x <= WINDOW[1])]
    print(f"{'C':>6s} {'excess':>8s} {'fallback':>8s}")
    for c in (float(v) for v in args.c.split(",")):
        try:
            res = run(RunConfig("shock_bubble", scheme=args.scheme, nx=args.nx, c=c), write=False)
        except SolverError as err:
            print(f"{c:6.3f}   failed at t={err.time:.4f} ({type(err).__name__})")
            continue
        excess = oscillation_excess(profile(res), ref_profile)
        print(f"{c:6.3f} {100 * excess:7.2f}% {res.summary['fallback_stages']:8d}")


if __name__ == "__main__":
    main()
