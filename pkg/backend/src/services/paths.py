'''
Generating functions of single weighted lattice paths with unit steps to the
right and downwards. A right step (a,b) -> (a+1,b) carries label a-2b and
weight (q^{a-2b} + q^{2b-a})/2; down steps have weight 1.
'''
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from backend.src.errors import InvalidInputError
from backend.src.services.exact import (
    LaurentPoly,
    RationalFn,
    lp_add,
    lp_mul,
    lp_product,
)
from backend.src.services.qseries import MonomialArg, qpoch, weight

logger = logging.getLogger("qhex.paths")


@dataclass(frozen=True)
class LatticePoint:
    a: int
    b: int


@dataclass(frozen=True)
class PathSpec:
    start: LatticePoint
    end: LatticePoint

    @classmethod
    def of(cls, a: int, b: int, c: int, d: int) -> "PathSpec":
        return cls(LatticePoint(a, b), LatticePoint(c, d))

    @property
    def width(self) -> int:
        return self.end.a - self.start.a

    @property
    def depth(self) -> int:
        return self.start.b - self.end.b

    def feasible(self) -> bool:
        return self.width >= 0 and self.depth >= 0


def step_label(p: LatticePoint) -> int:
    return p.a - 2 * p.b


def step_weight(p: LatticePoint) -> LaurentPoly:
    return weight(step_label(p))


def gf_dp(spec: PathSpec) -> LaurentPoly:
    '''
    Exact generating function via the recursion
        gf(a,b,c,d) = w(a,b) gf(a+1,b,c,d) + gf(a,b-1,c,d),
    with gf = 1 on the column a = c and 0 outside a <= c, b >= d.
    '''
    if not spec.feasible():
        return LaurentPoly.zero()
    c, d = spec.end.a, spec.end.b
    memo: Dict[Tuple[int, int], LaurentPoly] = {}
    # fill from the terminal corner outward, column by column
    for a in range(c, spec.start.a - 1, -1):
        for b in range(d, spec.start.b + 1):
            if a == c:
                memo[(a, b)] = LaurentPoly.one()
                continue
            value = lp_mul(step_weight(LatticePoint(a, b)), memo[(a + 1, b)])
            if b > d:
                value = lp_add(value, memo[(a, b - 1)])
            memo[(a, b)] = value
    return memo[(spec.start.a, spec.start.b)]


def _power_of_two(e: int) -> Fraction:
    return Fraction(2) ** e


def gf_closed(spec: PathSpec) -> RationalFn:
    '''
    Closed form
        2^{a-c} q^{(a-c)(a+c-4d-1)/2} (q^{2(b-d+1)};q^2)_{c-a} (-q^{2(a-b-d)};q^2)_{c-a}
        / (q^2;q^2)_{c-a}
    for a <= c and b >= d.
    '''
    a, b, c, d = spec.start.a, spec.start.b, spec.end.a, spec.end.b
    if a > c or b < d:
        raise InvalidInputError(f"closed form needs a <= c and b >= d, got {spec}")
    n = c - a
    twice = (a - c) * (a + c - 4 * d - 1)
    num = LaurentPoly.monomial(twice // 2, _power_of_two(a - c))
    num = num * qpoch(MonomialArg.q(2 * (b - d + 1)), 2, n)
    num = num * qpoch(MonomialArg.minus_q(2 * (a - b - d)), 2, n)
    den = qpoch(MonomialArg.q(2), 2, n)
    return RationalFn(num, den)


def gf_row(spec: PathSpec) -> LaurentPoly:
    '''
    Horizontal path (b = d): product of the step weights along the row,
    in closed form 2^{a-c} q^{(a-c)(a-4b+c-1)/2} (-q^{2a-4b};q^2)_{c-a}.
    '''
    a, b, c, d = spec.start.a, spec.start.b, spec.end.a, spec.end.b
    if b != d or a > c:
        raise InvalidInputError(f"row form needs b = d and a <= c, got {spec}")
    twice = (a - c) * (a - 4 * b + c - 1)
    prefix = LaurentPoly.monomial(twice // 2, _power_of_two(a - c))
    return prefix * qpoch(MonomialArg.minus_q(2 * a - 4 * b), 2, c - a)


def recursion_holds(spec: PathSpec) -> bool:
    '''Recompute both sides of the three-line recursion independently.'''
    a, b, c, d = spec.start.a, spec.start.b, spec.end.a, spec.end.b
    if not spec.feasible():
        return gf_dp(spec).is_zero()
    if a == c:
        return gf_dp(spec) == LaurentPoly.one()
    if b == d:
        by_steps = lp_product(step_weight(LatticePoint(x, b)) for x in range(a, c))
        return gf_dp(spec) == by_steps == gf_row(spec)
    rhs = step_weight(spec.start) * gf_dp(PathSpec.of(a + 1, b, c, d)) + gf_dp(PathSpec.of(a, b - 1, c, d))
    return gf_dp(spec) == rhs


def entry_spec(i: int, m: int, k: int, a_j: int) -> PathSpec:
    # path i of a region: (2i-1, i-1) -> (2m-1+k, a_j)
    return PathSpec.of(2 * i - 1, i - 1, 2 * m - 1 + k, a_j)


def gf_entry(i: int, m: int, k: int, a_j: int) -> LaurentPoly:
    if not 1 <= i <= m:
        raise InvalidInputError(f"row index {i} outside 1..{m}")
    if k < 0:
        raise InvalidInputError(f"height parameter must be >= 0, got {k}")
    return gf_dp(entry_spec(i, m, k, a_j))


def gf_entry_closed(i: int, m: int, k: int, a_j: int) -> RationalFn:
    '''
    Specialized closed form
        2^{2i-k-2m} q^{(2i-k-2m)(2i+k+2m-4a_j-3)/2} (q^{4(i-a_j)};q^4)_{2m+k-2i}
        / (q^2;q^2)_{2m+k-2i}.
    Meaningful on the combinatorial domain a_j < i and inside the dent window.
    '''
    n = 2 * m + k - 2 * i
    e = 2 * i - k - 2 * m
    twice = e * (2 * i + k + 2 * m - 4 * a_j - 3)
    num = LaurentPoly.monomial(twice // 2, _power_of_two(e))
    num = num * qpoch(MonomialArg.q(4 * (i - a_j)), 4, n)
    return RationalFn(num, qpoch(MonomialArg.q(2), 2, n))
