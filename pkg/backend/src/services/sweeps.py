'''
Verification suites behind `verify`.

A suite is a deterministic list of cases (label, checker, args). Checkers are
module-level functions returning (status, detail) so cases can be shipped to a
process pool; results are aggregated in case order whatever the worker count.
'''
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple

from backend.src.api.models import CaseFailure, PropMatrixSpec, RegionSpec, SuiteReport
from backend.src.config import get_settings
from backend.src.errors import InvalidInputError, ZeroDenominatorError
from backend.src.services.exact import (
    LaurentPoly,
    RationalFn,
    lp_eval,
    lp_exact_div,
    lp_from_json,
    lp_substitute_power,
    lp_to_json,
    rf_eq,
)
from backend.src.services.identity import (
    KRAT_EVAL_MAX,
    KRAT_SYMBOLIC_MAX,
    build_prop_matrix,
    closed_route,
    dodgson_check,
    induction_base_check,
    induction_step_check,
    krat_check,
    krat_specialize_check,
    prop1_check,
    prop_det,
    recursion_check,
    submatrix_identities_check,
    vanishing_expected,
)
from backend.src.services.lgv import PolyMatrix, det, det_bareiss, det_cofactor, reduce, tiling_gf
from backend.src.services.mvpoly import embed
from backend.src.services.oracle import admissible_regions, enumerate_single, family_gf
from backend.src.services.paths import PathSpec, gf_closed, gf_dp, gf_entry, gf_entry_closed, recursion_holds
from backend.src.services.qseries import MonomialArg, qpoch, qpoch_neg, splitting_check

logger = logging.getLogger("qhex.sweeps")

PASS, FAIL, SKIP = "pass", "fail", "skip"

Outcome = Tuple[str, str]
Case = Tuple[str, Callable[..., Outcome], tuple]

PROP1_SAMPLES = 200
PROP1_RANGE = range(-6, 7)
CONDENSATION_RANGE = range(-5, 5)
SPLITTING_RANGE = range(-6, 7)
RING_SAMPLES = 50
RANDOM_MATRICES = 10


def _verdict(ok: bool, detail: str = "") -> Outcome:
    return (PASS, "") if ok else (FAIL, detail)


def random_poly(rng: random.Random, terms: int = 3, span: int = 4) -> LaurentPoly:
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        coeffs[rng.randint(-span, span)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return LaurentPoly.from_dict(coeffs)


# ---- checkers --------------------------------------------------------------

def check_ring(case_seed: int) -> Outcome:
    rng = random.Random(case_seed)
    p, r, s = (random_poly(rng) for _ in range(3))
    failures = []
    if p * r != r * p:
        failures.append("commutativity")
    if (p * r) * s != p * (r * s):
        failures.append("associativity")
    if (p + r) * s != p * s + r * s:
        failures.append("distributivity")
    if r and lp_exact_div(p * r, r) != p:
        failures.append("exact division")
    x = Fraction(3, 2)
    if lp_eval(p * r + s, x) != lp_eval(p, x) * lp_eval(r, x) + lp_eval(s, x):
        failures.append("evaluation")
    if embed(p * r) != embed(p) * embed(r):
        failures.append("embedding")
    text = lp_to_json(p)
    if lp_from_json(text) != p or lp_to_json(lp_from_json(text)) != text:
        failures.append("json round trip")
    return _verdict(not failures, ", ".join(failures))


def check_qpoch_recurrence(sign: int, exponent: int, base: int, n_max: int) -> Outcome:
    a = MonomialArg(sign, exponent)
    for n in range(n_max):
        step = LaurentPoly.one() - LaurentPoly.monomial(exponent + base * n, sign)
        if qpoch(a, base, n + 1) != qpoch(a, base, n) * step:
            return FAIL, f"(a;q^{base})_{n + 1} != (a;q^{base})_{n} * (1 - a q^{base * n})"
    return PASS, ""


def check_qpoch_negative(sign: int, exponent: int, n: int) -> Outcome:
    # (a;q)_{-n} (a q^{-n};q)_n = 1
    inverse = qpoch_neg(MonomialArg(sign, exponent), n)
    forward = qpoch(MonomialArg(sign, exponent - n), 1, n)
    return _verdict(inverse * forward == LaurentPoly.one(), "reciprocal identity")


def check_qpoch_pole(sign: int, exponent: int, n: int) -> Outcome:
    # a = q^e with 1 <= e <= n puts a zero factor in the denominator
    try:
        qpoch_neg(MonomialArg(sign, exponent), n)
    except ZeroDenominatorError:
        return PASS, ""
    return FAIL, "pole of the negative-index symbol was not reported"


def check_splitting(m: int, k: int) -> Outcome:
    for i in range(1, m + 1):
        for a in SPLITTING_RANGE:
            if not splitting_check(a, m, i, k):
                return FAIL, f"a={a} i={i}"
    return PASS, ""


def check_gf_base(a: int, b: int, span: int, enumerate_up_to: int) -> Outcome:
    for width in range(span + 1):
        for depth in range(span + 1):
            spec = PathSpec.of(a, b, a + width, b - depth)
            dp = gf_dp(spec)
            if not rf_eq(gf_closed(spec), RationalFn.from_poly(dp)):
                return FAIL, f"closed form differs from recursion at {spec}"
            if not recursion_holds(spec):
                return FAIL, f"recursion fails at {spec}"
            if width + depth <= enumerate_up_to:
                brute = LaurentPoly.zero()
                for _, w in enumerate_single(spec):
                    brute = brute + w
                if brute != dp:
                    return FAIL, f"enumeration differs from recursion at {spec}"
    return PASS, ""


def check_gf_entries(m: int, k: int) -> Outcome:
    for i in range(1, m + 1):
        for a_j in range(-(m + k - 1), i):
            if gf_entry_closed(i, m, k, a_j) != gf_entry(i, m, k, a_j):
                return FAIL, f"specialized closed form differs at i={i} a_j={a_j}"
    return PASS, ""


def check_lgv_region(m: int, k: int, dents: tuple) -> Outcome:
    region = RegionSpec.of(m, k, dents)
    gf = tiling_gf(region)
    if gf != family_gf(region):
        return FAIL, "determinant differs from family enumeration"
    if region.in_window:
        prefactor, reduced = reduce(region)
        reduced_det = det(reduced)
        if RationalFn.from_poly(gf) != prefactor.value * reduced_det:
            return FAIL, "prefactor * det(reduced) differs from the determinant"
        if reduced_det != lp_substitute_power(prop_det(PropMatrixSpec(k=k, a=region.dents)), 4):
            return FAIL, "det(reduced) is not the product-formula determinant at q^4"
    return PASS, ""


def check_vanishing_region(m: int, k: int, dents: tuple) -> Outcome:
    region = RegionSpec.of(m, k, dents)
    values = {"family": family_gf(region), "lgv": tiling_gf(region), "closed": closed_route(region)}
    nonzero = sorted(route for route, p in values.items() if p)
    return _verdict(not nonzero, f"nonzero routes: {nonzero}")


def check_det_engines(case_seed: int, size: int) -> Outcome:
    rng = random.Random(case_seed)
    M = PolyMatrix.of([[random_poly(rng, terms=2, span=3) for _ in range(size)] for _ in range(size)])
    return _verdict(det_cofactor(M) == det_bareiss(M), "cofactor and Bareiss determinants differ")


def check_prop1(k: int, a: tuple) -> Outcome:
    return _verdict(prop1_check(PropMatrixSpec.of(k, a)), "determinant differs from the product")


def check_prop_vanishing(k: int, a: tuple) -> Outcome:
    return _verdict(prop_det(PropMatrixSpec.of(k, a)).is_zero(), "determinant does not vanish")


def check_dodgson_prop(k: int, a: tuple) -> Outcome:
    return _verdict(dodgson_check(build_prop_matrix(PropMatrixSpec.of(k, a))), "condensation fails")


def check_dodgson_random(case_seed: int, size: int) -> Outcome:
    rng = random.Random(case_seed)
    M = PolyMatrix.of([[random_poly(rng, terms=2, span=3) for _ in range(size)] for _ in range(size)])
    return _verdict(dodgson_check(M), "condensation fails")


def check_submatrices(k: int, a: tuple) -> Outcome:
    return _verdict(submatrix_identities_check(PropMatrixSpec.of(k, a)), "a submatrix identity fails")


def check_recursion(k: int, a: tuple) -> Outcome:
    try:
        return _verdict(recursion_check(PropMatrixSpec.of(k, a)), "condensation recursion fails")
    except ZeroDenominatorError as e:
        return SKIP, str(e)


def check_induction_step(k: int, a: tuple) -> Outcome:
    return _verdict(induction_step_check(PropMatrixSpec.of(k, a)), "product formula breaks the recursion")


def check_induction_base(k: int, a_1: int) -> Outcome:
    return _verdict(induction_base_check(k, a_1), "base case m <= 1 fails")


def check_krat(m: int, mode: str, seed: int) -> Outcome:
    return _verdict(krat_check(m, mode=mode, seed=seed), f"lemma fails in {mode} mode")


def check_krat_vs_prop1(k: int, a: tuple) -> Outcome:
    spec = PropMatrixSpec.of(k, a)
    chained, direct = krat_specialize_check(spec), prop1_check(spec)
    return _verdict(chained and direct, f"specialization={chained} product formula={direct}")


def check_end_to_end(m: int, k: int, dents: tuple, cap: Optional[int]) -> Outcome:
    region = RegionSpec.of(m, k, dents)
    family = family_gf(region, cap)
    lgv = tiling_gf(region)
    closed = closed_route(region)
    if family != lgv:
        return FAIL, "family enumeration differs from the determinant"
    return _verdict(lgv == closed, "determinant differs from the product formula")


# ---- case builders ---------------------------------------------------------

def _label(*parts) -> str:
    return " ".join(str(p) for p in parts)


def _vanishing_regions(max_m: int, max_k: int):
    # dents in the window shifted up so that the last path cannot finish
    for m in range(1, min(max_m, 3) + 1):
        for k in range(max_k + 1):
            for dents in combinations(range(-(m + k - 1), m + 2), m):
                if dents[-1] >= m:
                    yield m, k, dents


def _condensation_specs(max_m: int, max_k: int):
    for m in range(2, max_m + 1):
        for k in range(max_k + 1):
            for a in combinations(CONDENSATION_RANGE, m):
                if a[-1] < m:
                    yield k, a


def ring_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    return [(_label("ring", i), check_ring, (seed + i,)) for i in range(RING_SAMPLES)]


def qpoch_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    cases: List[Case] = []
    for sign in (1, -1):
        for exponent in range(-4, 5):
            for base in (1, 2, 4):
                cases.append((_label("recurrence", sign, exponent, base), check_qpoch_recurrence, (sign, exponent, base, 6)))
            for n in range(1, 5):
                if sign == 1 and 1 <= exponent <= n:
                    cases.append((_label("pole", sign, exponent, n), check_qpoch_pole, (sign, exponent, n)))
                else:
                    cases.append((_label("negative", sign, exponent, n), check_qpoch_negative, (sign, exponent, n)))
    for m in range(1, max_m + 1):
        for k in range(max_k + 1):
            cases.append((_label("splitting m", m, "k", k), check_splitting, (m, k)))
    return cases


def gf_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    # max_m = 3 gives spans 0..6 over base points [-5,5]^2
    span, reach = 2 * max_m, max_m + 2
    cases: List[Case] = [
        (_label("base", a, b), check_gf_base, (a, b, span, 6))
        for a in range(-reach, reach + 1)
        for b in range(-reach, reach + 1)
    ]
    for m in range(1, max_m + 1):
        for k in range(max_k + 1):
            cases.append((_label("entries m", m, "k", k), check_gf_entries, (m, k)))
    return cases


def lgv_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    cases: List[Case] = [
        (_label("region", r.m, r.k, r.dents.values), check_lgv_region, (r.m, r.k, r.dents.values))
        for r in admissible_regions(max_m, max_k)
    ]
    cases += [
        (_label("vanishing", m, k, dents), check_vanishing_region, (m, k, dents))
        for m, k, dents in _vanishing_regions(max_m, max_k)
    ]
    for size in range(1, 6):
        for i in range(RANDOM_MATRICES):
            cases.append((_label("engines size", size, i), check_det_engines, (seed + 100 * size + i, size)))
    return cases


def _prop1_samples(max_m: int, max_k: int, seed: int) -> List[Tuple[int, tuple]]:
    rng = random.Random(seed)
    samples = [(0, (0, 1))]
    while len(samples) < PROP1_SAMPLES:
        m = rng.randint(1, max_m)
        k = rng.randint(0, max_k)
        samples.append((k, tuple(sorted(rng.sample(PROP1_RANGE, m)))))
    return samples


def prop1_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    cases: List[Case] = [
        (_label("sample k", k, "a", a), check_prop1, (k, a))
        for k, a in _prop1_samples(max_m, max_k, seed)
    ]
    for m in range(1, min(max_m, 3) + 1):
        for k in range(1, min(max_k, 3) + 1):
            for a in combinations(range(-(m + k - 1), m + k), m):
                if vanishing_expected(PropMatrixSpec.of(k, a)):
                    cases.append((_label("vanishing k", k, "a", a), check_prop_vanishing, (k, a)))
    return cases


def dodgson_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    rng = random.Random(seed)
    cases: List[Case] = []
    for m in range(2, max(max_m, 2) + 1):
        for k in range(max_k + 1):
            for _ in range(3):
                a = tuple(sorted(rng.sample(CONDENSATION_RANGE, m)))
                cases.append((_label("prop k", k, "a", a), check_dodgson_prop, (k, a)))
    for size in range(2, 6):
        for i in range(RANDOM_MATRICES):
            cases.append((_label("random size", size, i), check_dodgson_random, (seed + 100 * size + i, size)))
    return cases


def submatrix_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    return [(_label("k", k, "a", a), check_submatrices, (k, a)) for k, a in _condensation_specs(max_m, max_k)]


def recursion_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    specs = list(_condensation_specs(max_m, max_k))
    cases: List[Case] = [(_label("k", k, "a", a), check_recursion, (k, a)) for k, a in specs]
    cases += [(_label("base k", k, "a_1", a_1), check_induction_base, (k, a_1))
              for k in range(max_k + 1) for a_1 in CONDENSATION_RANGE]
    cases += [(_label("step k", k, "a", a), check_induction_step, (k, a)) for k, a in specs]
    return cases


def krat_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    cases: List[Case] = []
    for m in range(1, min(max_m, KRAT_EVAL_MAX) + 1):
        if m <= KRAT_SYMBOLIC_MAX:
            cases.append((_label("symbolic m", m), check_krat, (m, "symbolic", seed)))
        cases.append((_label("eval m", m), check_krat, (m, "eval", seed)))
    rng = random.Random(seed)
    for m in range(1, min(max_m, 4) + 1):
        for k in range(max_k + 1):
            a = tuple(sorted(rng.sample(PROP1_RANGE, m)))
            cases.append((_label("specialize k", k, "a", a), check_krat_vs_prop1, (k, a)))
    return cases


def endtoend_cases(max_m: int, max_k: int, seed: int) -> List[Case]:
    cap = get_settings().enumeration_cap
    cases: List[Case] = [
        (_label("region", r.m, r.k, r.dents.values), check_end_to_end, (r.m, r.k, r.dents.values, cap))
        for r in admissible_regions(max_m, max_k)
    ]
    cases += [
        (_label("vanishing", m, k, dents), check_vanishing_region, (m, k, dents))
        for m, k, dents in _vanishing_regions(max_m, max_k)
    ]
    return cases


SUITES: Dict[str, Callable[[int, int, int], List[Case]]] = {
    "ring": ring_cases,
    "qpoch": qpoch_cases,
    "gf": gf_cases,
    "lgv": lgv_cases,
    "prop1": prop1_cases,
    "dodgson": dodgson_cases,
    "submatrix": submatrix_cases,
    "recursion": recursion_cases,
    "krat": krat_cases,
    "endtoend": endtoend_cases,
}


# ---- runner ----------------------------------------------------------------

def run_case(case: Case) -> Tuple[str, str, str]:
    label, checker, args = case
    try:
        status, detail = checker(*args)
    except Exception as e:
        status, detail = FAIL, f"{type(e).__name__}: {e}"
    return label, status, detail


def run_suite(
    name: str,
    max_m: int = 3,
    max_k: int = 2,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> SuiteReport:
    if name not in SUITES:
        raise InvalidInputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if max_m < 1 or max_k < 0:
        raise InvalidInputError(f"bounds need max_m >= 1 and max_k >= 0, got {max_m}, {max_k}")
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    workers = settings.workers if workers is None else workers

    cases = SUITES[name](max_m, max_k, seed)
    logger.info(f"Suite {name}: {len(cases)} cases (max_m={max_m}, max_k={max_k}, seed={seed}, workers={workers})")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_case, cases, chunksize=max(1, len(cases) // (4 * workers))))
    else:
        outcomes = [run_case(case) for case in cases]

    report = SuiteReport(suite=name, cases=len(outcomes))
    for label, status, detail in outcomes:
        if status == PASS:
            report.passed += 1
        elif status == SKIP:
            report.skipped += 1
        else:
            report.failed += 1
            if report.first_failure is None:
                report.first_failure = CaseFailure(case=label, detail=detail)
                logger.error(f"Suite {name} case '{label}' failed: {detail}")
    logger.info(f"Suite {name}: {report.passed} passed, {report.skipped} skipped, {report.failed} failed")
    return report
