'''
q-Pochhammer symbols with signed monomial arguments and lozenge weights.
'''
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from backend.src.errors import InvalidInputError, ZeroDenominatorError
from backend.src.services.exact import LaurentPoly, RationalFn, lp_mul

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class MonomialArg:
    '''a = sign * q^exponent'''
    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidInputError(f"sign must be +1 or -1, got {self.sign}")

    @classmethod
    def q(cls, exponent: int) -> "MonomialArg":
        return cls(1, exponent)

    @classmethod
    def minus_q(cls, exponent: int) -> "MonomialArg":
        return cls(-1, exponent)


def _factor(a: MonomialArg, shift: int) -> LaurentPoly:
    # 1 - a*q^shift
    return LaurentPoly.from_dict({0: 1}) + LaurentPoly.monomial(a.exponent + shift, -a.sign)


def qpoch(a: MonomialArg, base_exponent: int, n: int) -> LaurentPoly:
    '''
    (a; q^b)_n = prod_{j=0}^{n-1} (1 - a q^{b j}), expanded.
    '''
    if n < 0:
        raise InvalidInputError(f"qpoch needs n >= 0, got {n}; use qpoch_neg")
    if base_exponent < 1:
        raise InvalidInputError(f"base exponent must be positive, got {base_exponent}")
    result = LaurentPoly.one()
    for j in range(n):
        result = lp_mul(result, _factor(a, base_exponent * j))
        if not result:
            break
    return result


def qpoch_neg(a: MonomialArg, n: int) -> RationalFn:
    '''
    (a; q)_{-n} = 1 / (a q^{-1}; q^{-1})_n for n >= 1.
    '''
    if n < 1:
        raise InvalidInputError(f"qpoch_neg needs n >= 1, got {n}")
    den = LaurentPoly.one()
    for j in range(n):
        # factor 1 - a q^{-1} q^{-j}
        factor = _factor(a, -1 - j)
        if not factor:
            raise ZeroDenominatorError(f"factor {j} of (a q^-1; q^-1)_{n} vanishes for a = {a}")
        den = lp_mul(den, factor)
    return RationalFn(LaurentPoly.one(), den)


def qpoch_general(a: MonomialArg, base_exponent: int, n: int) -> RationalFn:
    if n >= 0:
        return RationalFn.from_poly(qpoch(a, base_exponent, n))
    if base_exponent != 1:
        raise InvalidInputError("negative index is only defined for base q")
    return qpoch_neg(a, -n)


def weight(label: int) -> LaurentPoly:
    '''w_l = (q^l + q^-l) / 2'''
    return LaurentPoly.from_dict({label: HALF}) + LaurentPoly.from_dict({-label: HALF})


def weight_product(labels: Iterable[int]) -> LaurentPoly:
    counts = Counter(abs(l) for l in labels)
    result = LaurentPoly.one()
    for label in sorted(counts):
        result = lp_mul(result, weight(label) ** counts[label])
    return result


def splitting_check(a: int, m: int, i: int, k: int) -> bool:
    '''
    (q^{i-a};q)_{2m+k-2i} = (q^{i-a};q)_{m-i} (q^{m-a};q)_k (q^{m+k-a};q)_{m-i}
    '''
    lhs = qpoch(MonomialArg.q(i - a), 1, 2 * m + k - 2 * i)
    rhs = (
        qpoch(MonomialArg.q(i - a), 1, m - i)
        * qpoch(MonomialArg.q(m - a), 1, k)
        * qpoch(MonomialArg.q(m + k - a), 1, m - i)
    )
    return lhs == rhs
