"""Randomized axiom fuzzing over the reference planes and the full catalog.

    python3 scripts/fuzz_planes.py --trials 500 --seed 42
"""

import argparse
import json

from flatmink.circles import PlaneSpec
from flatmink.classify import normalise
from flatmink.functions import CATALOG, catalog
from flatmink.incidence import fuzz_axioms
from flatmink.planes import TEST_PLANES, named_plane


def planes():
    for name in TEST_PLANES:
        yield name, named_plane(name)
    # every catalog member that passes the checker, as a uniform plane
    for kind in sorted(CATALOG):
        if kind == "reciprocal_sinh":
            continue
        yield f"uniform {kind}", PlaneSpec.uniform(catalog(kind), kind)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    rows = []
    for stream, (name, plane) in enumerate(planes()):
        rep = fuzz_axioms(normalise(plane), args.trials, args.seed, stream=stream)
        rows.append({"plane": name, "passed": rep.passed, "violations": len(rep.violations)})
        print(f"{name:40s} {'ok' if rep.passed else 'FAIL'} {len(rep.violations)} violations")
    print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
