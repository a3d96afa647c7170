"""Contact widths and overshoot on the Lax shock tube for all four schemes.

Plateau values are read at the window edges; the acceptance test uses the
exact star-state densities instead.

    python3 scripts/lax_contact.py [--nx 200] [--window 2.9,3.5]
"""
import argparse

from aaad.harness import RunConfig, contact_width, plateau_overshoot, run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nx", type=int, default=200)
    ap.add_argument("--window", default="2.9,3.5")
    args = ap.parse_args()
    a, b = (float(v) for v in args.window.split(","))
    print(f"{'scheme':8s} {'width':>5s} {'overshoot':>9s} {'fallback':>8s}")
    for scheme in ("cu2", "aaad2", "aweno5", "aaad5"):
        res = run(RunConfig("lax", scheme=scheme, nx=args.nx), write=False)
        x = res.grid.centers()[0]
        rho = res.density[(x >= a) & (x <= b)]
        rho_l, rho_r = rho[0], rho[-1]           # plateaus at the window edges
        print(f"{scheme:8s} {contact_width(rho, rho_l, rho_r):5d} "
              f"{100 * plateau_overshoot(rho, rho_l, rho_r):8.2f}% "
              f"{res.summary['fallback_stages']:8d}")


if __name__ == "__main__":
    main()
