"""The nine acceptance criteria, shared by ``flatmink accept`` and the test suite.

Each criterion function returns a :class:`CriterionResult`; sample sizes and
tolerances are the stated ones and are not tunable from here.
"""

from __future__ import annotations

import itertools
import math
import time
import warnings
from dataclasses import dataclass, field

from .circles import NEG, POS, Curve, PlaneSpec, apply_phi_infinity
from .classify import classify_plane, isomorphism_search, normalise, rescale_plane
from .errors import ConditioningWarning
from .functions import CATALOG, CheckerConfig, catalog, check_strongly_hyperbolic
from .incidence import (RESIDUAL_TOL, concircular_points, intersect, join, touch_solve)
from .oracles import classical_join, dense_intersection_count
from .planes import TEST_PLANES, hartmann, named_plane
from .rng import DEFAULT_SEED, make_rng
from .rootcraft import verify_case_table
from .sampling import (log_uniform, params_close, random_circle, random_point_on,
                       random_touch_config, random_triple)
from .torus import TorusPoint, parallel


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] criterion {self.number}: {self.title} ({self.seconds:.1f} s)"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


def _timed(number, title):
    def wrap(fn):
        def run(seed: int = DEFAULT_SEED) -> CriterionResult:
            t0 = time.perf_counter()
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ConditioningWarning)
                passed, detail = fn(seed)
            return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t0)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _failure(exc) -> str:
    return f"{type(exc).__name__}: {exc}"


# ------------------------------------------------------------ 1

STRONGLY_HYPERBOLIC = (
    ("reciprocal_power", {"i": 1}), ("reciprocal_power", {"i": 2}), ("reciprocal_power", {"i": 3}),
    ("reciprocal_power_sum", {"n": 1}), ("reciprocal_power_sum", {"n": 2}),
    ("reciprocal_power_sum", {"n": 3}), ("reciprocal_x_plus_arctan", {}),
    ("arcsinh_reciprocal", {}),
)
SINH_HORIZON = 30.0
SINH_RATIO_TOL = 1e-4
CATALOG_SECONDS = 5.0


@_timed(1, "catalog validation")
def criterion_1(seed):
    """Catalog functions pass the checker; reciprocal_sinh fails the
    translation-ratio condition with ratio e^-1 at X = 30."""
    t0 = time.perf_counter()
    failing = {}
    for name, params in STRONGLY_HYPERBOLIC:
        rep = check_strongly_hyperbolic(catalog(name, **params))
        if not rep.passed:
            failing[f"{name}{params}"] = rep.failed()
    cfg = CheckerConfig(limit_horizon=SINH_HORIZON, limit_b_values=(1.0,))
    sinh = check_strongly_hyperbolic(catalog("reciprocal_sinh"), cfg).conditions[3]
    ratio = sinh.detail["ratios"][0]
    elapsed = time.perf_counter() - t0
    ok = (not failing and not sinh.passed
          and abs(ratio - math.exp(-1)) <= SINH_RATIO_TOL and elapsed < CATALOG_SECONDS)
    return ok, {"failing": failing, "sinh_condition_3_passed": sinh.passed,
                "sinh_ratio": ratio, "expected": math.exp(-1), "elapsed": elapsed,
                "covered": sorted(CATALOG)}


# ------------------------------------------------------------ 2

JOIN_TRIPLES_PER_TYPE = 2000
JOIN_SECONDS = 60.0


@_timed(2, "joining existence")
def criterion_2(seed):
    """2000 random triples of each admissible type on each test plane join
    with all membership residuals below 1e-6."""
    t0 = time.perf_counter()
    failures, worst = [], 0.0
    for k, pname in enumerate(TEST_PLANES):
        plane = named_plane(pname)
        rng = make_rng(seed, 200 + k)
        for typ in range(1, 6):
            for _ in range(JOIN_TRIPLES_PER_TYPE):
                pts = random_triple(rng, typ)
                try:
                    res = max(join(plane, *pts).residuals)
                except Exception as exc:  # any failure to join counts
                    failures.append({"plane": pname, "type": typ, "points": pts,
                                     "error": _failure(exc)})
                    continue
                worst = max(worst, res)
                if not res < RESIDUAL_TOL:
                    failures.append({"plane": pname, "type": typ, "points": pts, "residual": res})
    elapsed = time.perf_counter() - t0
    return not failures and elapsed < JOIN_SECONDS, {
        "triples": 3 * 5 * JOIN_TRIPLES_PER_TYPE, "failures": len(failures),
        "examples": failures[:5], "worst_residual": worst, "elapsed": elapsed}


# ------------------------------------------------------------ 3

UNIQUE_QUADRUPLES = 2000
UNIQUE_RTOL = 1e-8
CAP_PAIRS = 5000
ORACLE_POINTS = 100_000


@_timed(3, "joining uniqueness")
def criterion_3(seed):
    """Concircular quadruples give one circle; same-half pairs meet in at most
    two points, matching a dense-scan oracle."""
    rng = make_rng(seed, 300)
    planes = [named_plane(n) for n in TEST_PLANES]
    split = []
    for k in range(UNIQUE_QUADRUPLES):
        plane = planes[k % len(planes)]
        D = random_circle(rng, plane)
        p1, p2, p3, p4 = concircular_points(rng, D)
        try:
            E1 = join(plane, p1, p2, p3).circle
            E2 = join(plane, p1, p2, p4).circle
        except Exception as exc:  # any failure to join counts
            split.append({"circle": repr(D), "error": _failure(exc)})
            continue
        if not params_close(E1, E2, UNIQUE_RTOL):
            split.append({"circle": repr(D), "first": repr(E1), "second": repr(E2)})
    over, disagree = [], []
    for k in range(CAP_PAIRS):
        plane = planes[k % len(planes)]
        half = NEG if rng.random() < 0.5 else POS
        C, D = random_circle(rng, plane, half), random_circle(rng, plane, half)
        if C == D:
            continue
        n = intersect(C, D).size
        if n > 2:
            over.append({"pair": [repr(C), repr(D)], "size": n})
        ref = dense_intersection_count(C, D, ORACLE_POINTS)
        if ref != n:
            disagree.append({"pair": [repr(C), repr(D)], "solver": n, "oracle": ref})
    return not (split or over or disagree), {
        "quadruples": UNIQUE_QUADRUPLES, "distinct_joins": len(split), "examples": split[:5],
        "pairs": CAP_PAIRS, "over_two": over[:5], "oracle_disagreements": len(disagree),
        "disagreement_examples": disagree[:5]}


# ------------------------------------------------------------ 4

TOUCH_CONFIGS = 2000
FAMILIES = ("inf-inf", "vertical", "horizontal", "finite")


@_timed(4, "touching")
def criterion_4(seed):
    """touch meets C only at p, and re-solving through another point of the
    touching circle returns the same circle."""
    rng = make_rng(seed, 400)
    planes = [named_plane(n) for n in TEST_PLANES]
    failures = []
    per_family = {f: 0 for f in FAMILIES}
    for k in range(TOUCH_CONFIGS):
        plane, family = planes[k % len(planes)], FAMILIES[k % len(FAMILIES)]
        C, p, q = random_touch_config(rng, plane, family)
        per_family[family] += 1
        try:
            sol = touch_solve(plane, C, p, q)
        except Exception as exc:  # any failure to touch counts
            failures.append({"family": family, "circle": repr(C), "p": p, "q": q,
                             "error": _failure(exc)})
            continue
        if not sol.verified:
            failures.append({"family": family, "circle": repr(C), "p": p, "q": q,
                             "issue": f"{sol.circle} does not meet C only at p"})
            continue
        D = sol.circle
        for _ in range(50):
            q2 = random_point_on(rng, D)
            if not parallel(q2, p) and q2 != q:
                break
        try:
            D2 = touch_solve(plane, C, p, q2).circle
        except Exception as exc:  # any failure to touch counts
            failures.append({"family": family, "issue": "re-solve failed", "error": _failure(exc)})
            continue
        if not params_close(D, D2, UNIQUE_RTOL):
            failures.append({"family": family, "issue": "second touching circle",
                             "first": repr(D), "second": repr(D2)})
    return not failures, {"configs": TOUCH_CONFIGS, "per_family": per_family,
                          "failures": len(failures), "examples": failures[:5]}


# ------------------------------------------------------------ 5

CLASSICAL_TRIPLES = 1000
CLASSICAL_RTOL = 1e-8


def _classical_circle(ref):
    kind = ref[0]
    if kind == "line":
        return ("line", NEG if ref[1] < 0 else POS, ref[1:])
    return ("curve", NEG if kind == "neg" else POS, ref[1:])


@_timed(5, "classical oracle equivalence")
def criterion_5(seed):
    """Joins on the all-1/x plane match the closed-form three-point solver."""
    rng = make_rng(seed, 500)
    plane = named_plane("classical")
    bad = []
    for _ in range(CLASSICAL_TRIPLES):
        pts = random_triple(rng, 5)
        kind, half, want = _classical_circle(classical_join(*pts))
        try:
            got = join(plane, *pts).circle
        except Exception as exc:  # any failure to join counts
            bad.append({"points": pts, "error": _failure(exc)})
            continue
        ok = got.kind == kind and got.half == half and all(
            abs(u - v) <= CLASSICAL_RTOL * (1 + abs(v)) for u, v in zip(got.params, want))
        if not ok:
            bad.append({"points": pts, "join": repr(got), "closed_form": [kind, half, list(want)]})
    return not bad, {"triples": CLASSICAL_TRIPLES, "mismatches": len(bad), "examples": bad[:5]}


# ------------------------------------------------------------ 6

CASE_TABLE_TRIALS = 10_000


@_timed(6, "root-structure case table")
def criterion_6(seed):
    """verify_case_table finds no clause violations and no oracle
    disagreements on two generator pairs."""
    pairs = {"reciprocal": (catalog("reciprocal_power", i=1), catalog("reciprocal_power", i=1)),
             "arctan/arcsinh": (catalog("reciprocal_x_plus_arctan"), catalog("arcsinh_reciprocal"))}
    detail, ok = {}, True
    for k, (name, (f1, f2)) in enumerate(pairs.items()):
        rep = verify_case_table(f1, f2, CASE_TABLE_TRIALS, seed, stream=600 + k)
        ok &= rep.passed
        detail[name] = {"trials": rep.trials, "violations": len(rep.violations),
                        "oracle_disagreements": len(rep.oracle_disagreements),
                        "examples": (rep.violations + rep.oracle_disagreements)[:5],
                        "clauses_seen": len(rep.label_counts)}
    return ok, detail


# ------------------------------------------------------------ 7

def classification_matrix() -> dict:
    """Planes and their expected (group dimension, Klein-Kroll type)."""
    return {"classical": (named_plane("classical"), (6, "VII.F.23")),
            "hartmann(2,1;2,1)": (hartmann(2.0), (4, "III.C.19")),
            "hartmann(2,2;2,1)": (hartmann(2.0, s1=2.0), (4, "III.C.1")),
            "mixed": (normalise(named_plane("mixed")), (3, "III.C.1"))}


@_timed(7, "classification")
def criterion_7(seed):
    """Group dimension and Klein-Kroll type for the four reference planes."""
    detail, ok = {}, True
    for name, (plane, want) in classification_matrix().items():
        rep = classify_plane(plane)
        got = (rep.group_dimension, rep.klein_kroll)
        ok &= got == want
        detail[name] = {"expected": list(want), "got": list(got),
                        "exponents": rep.detected_exponents}
    return ok, detail


# ------------------------------------------------------------ 8

ISO_R = 2.0
ISO_R_TOL = 1e-6
ISO_SECONDS = 10.0


@_timed(8, "isomorphism")
def criterion_8(seed):
    """A plane and its r = 2 rescaling are isomorphic with r recovered; the
    classical and mixed planes are not."""
    t0 = time.perf_counter()
    F = normalise(named_plane("mixed"))
    found = isomorphism_search(F, rescale_plane(F, ISO_R))
    w = found.witness
    recovered = w is not None and abs(w.r - ISO_R) <= ISO_R_TOL
    rejected = isomorphism_search(named_plane("classical"), F)
    full_sweep = len(rejected.transforms_tried) == 8
    elapsed = time.perf_counter() - t0
    ok = recovered and rejected.witness is None and full_sweep and elapsed < ISO_SECONDS
    return ok, {"witness": None if w is None else w.to_dict(), "recovered": recovered,
                "classical_vs_mixed": rejected.to_dict(), "elapsed": elapsed}


# ------------------------------------------------------------ 9

EQUIVARIANCE_INSTANCES = 1000
EQUIVARIANCE_RTOL = 1e-8


@_timed(9, "equivariance")
def criterion_9(seed):
    """Joins commute with (x, y) -> (x + b, a y + c) and ignore point order."""
    rng = make_rng(seed, 900)
    planes = [named_plane(n) for n in TEST_PLANES]
    moved_bad, perm_bad = [], []
    for k in range(EQUIVARIANCE_INSTANCES):
        plane = planes[k % len(planes)]
        pts = random_triple(rng, int(rng.integers(1, 6)))
        a, b, c = log_uniform(rng, 0.2, 5.0), float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3))
        try:
            E = join(plane, *pts).circle
            moved = join(plane, *(p.moved(a, b, c) for p in pts)).circle
            others = [join(plane, *perm).circle for perm in itertools.permutations(pts)]
        except Exception as exc:  # any failure to join counts
            perm_bad.append({"points": pts, "error": _failure(exc)})
            continue
        if not params_close(moved, apply_phi_infinity(E, a, b, c), EQUIVARIANCE_RTOL):
            moved_bad.append({"points": pts, "gamma": [a, b, c], "join": repr(E),
                              "join_of_moved": repr(moved)})
        if not all(params_close(E, o, EQUIVARIANCE_RTOL) for o in others):
            perm_bad.append({"points": pts, "joins": [repr(o) for o in others]})
    return not (moved_bad or perm_bad), {
        "instances": EQUIVARIANCE_INSTANCES, "equivariance_failures": len(moved_bad),
        "permutation_failures": len(perm_bad), "examples": (moved_bad + perm_bad)[:5]}


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


def run(numbers=None, seed: int = DEFAULT_SEED, echo=None) -> list:
    """Run the selected criteria (all by default); ``echo`` receives each pass/fail line."""
    out = []
    for n in numbers or sorted(CRITERIA):
        res = CRITERIA[n](seed)
        out.append(res)
        if echo is not None:
            echo(res.line())
    return out
