"""Root-count case-table verification for every pair of catalog functions.

    python3 scripts/case_table_sweep.py --trials 2000 --seed 42
"""

import argparse
import itertools

from flatmink.functions import CATALOG, catalog
from flatmink.rootcraft import verify_case_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--oracle-points", type=int, default=20000)
    args = ap.parse_args()
    kinds = sorted(k for k in CATALOG if k != "reciprocal_sinh")
    bad = 0
    for stream, (k1, k2) in enumerate(itertools.product(kinds, repeat=2)):
        rep = verify_case_table(catalog(k1), catalog(k2), args.trials, args.seed,
                                oracle_points=args.oracle_points, stream=stream)
        n = len(rep.violations) + len(rep.oracle_disagreements)
        bad += n
        print(f"{k1:26s} {k2:26s} clauses={len(rep.label_counts):2d} issues={n}")
    print(f"total issues: {bad}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
