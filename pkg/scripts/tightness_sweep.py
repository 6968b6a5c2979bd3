"""Tightness of the power-mean bound over the (alpha, lambda) square.

Prints a text heat map of ``|I_f| / bound`` for one catalog function; the
ratio approaches 1 where the bound is nearly attained.

    python scripts/tightness_sweep.py --function pow3 --a 0 --b 2 --steps 11
"""

import argparse

from pquad.catalog import Interval, lookup
from pquad.search import SweepGrid, sweep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--function", default="pow3")
    ap.add_argument("--a", type=float, default=0.0)
    ap.add_argument("--b", type=float, default=2.0)
    ap.add_argument("--steps", type=int, default=11)
    ap.add_argument("--q", type=float, default=1.0)
    args = ap.parse_args()

    f = lookup(args.function)
    recs = sweep(f, Interval(args.a, args.b), SweepGrid(args.steps, args.steps, (args.q,)))
    axis = SweepGrid.axis(args.steps)
    print("alpha\\lam " + " ".join(f"{v:5.2f}" for v in axis))
    for i, alpha in enumerate(axis):
        row = recs[i * args.steps:(i + 1) * args.steps]
        print(f"{alpha:9.2f} " + " ".join(f"{r.ratio22:5.3f}" for r in row))
    best = max(recs, key=lambda r: r.ratio22)
    print(f"tightest: alpha={best.alpha:.3f} lambda={best.lam:.3f} ratio={best.ratio22:.4f}")
    print(f"all dominated: {all(r.passed for r in recs)}")


if __name__ == "__main__":
    main()
