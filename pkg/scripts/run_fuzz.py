"""Seeded dominance fuzz over the catalog with a per-function summary.

    python scripts/run_fuzz.py --trials 10000 --seed 42
"""

import argparse
import collections
import time

from pquad.catalog import catalog
from pquad.search import run_trials


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    t0 = time.perf_counter()
    recs = run_trials(catalog(), args.trials, args.seed)
    elapsed = time.perf_counter() - t0

    by_fn = collections.defaultdict(list)
    for r in recs:
        by_fn[r.function].append(r)
    print(f"{'function':<8} {'trials':>6} {'fails':>5} {'max r22':>9} {'max r23':>9}")
    for name, rs in by_fn.items():
        fails = sum(not r.passed for r in rs)
        r22 = max(r.ratio22 for r in rs)
        r23 = max(r.ratio23 for r in rs)
        print(f"{name:<8} {len(rs):>6} {fails:>5} {r22:>9.4f} {r23:>9.4f}")
    bad = sum(not r.passed for r in recs)
    print(f"{bad} violations in {len(recs)} trials ({elapsed:.2f}s)")


if __name__ == "__main__":
    main()
