'''
Exact arithmetic: rational coefficients, sparse Laurent polynomials in q and
rational functions with cross-multiplication equality.
All values are immutable; every operation returns a new canonical object.
'''
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from backend.src.api.models import VARIABLE, LaurentPolyModel, RationalFnModel, TermModel
from backend.src.errors import ExactDivisionError, ExponentOverflowError, ZeroDenominatorError

logger = logging.getLogger("qhex.exact")

Scalar = Union[int, Fraction]

_EXP_MIN = -(2 ** 63)
_EXP_MAX = 2 ** 63 - 1


def _check_exponent(e: int) -> int:
    if e < _EXP_MIN or e > _EXP_MAX:
        raise ExponentOverflowError(f"exponent {e} outside the signed 64-bit range")
    return e


@dataclass(frozen=True)
class LaurentPoly:
    '''
    Sparse Laurent polynomial in q.
    `terms` is a tuple of (exponent, coefficient) pairs, ascending by exponent,
    with no zero coefficients. Equality and hashing rely on this canonical form.
    '''
    terms: Tuple[Tuple[int, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, Scalar]) -> "LaurentPoly":
        return cls(tuple(
            (_check_exponent(e), Fraction(c))
            for e, c in sorted(coeffs.items()) if c != 0
        ))

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(())

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(((0, Fraction(1)),))

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        return cls.from_dict({0: c})

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls.from_dict({exponent: coeff})

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def valuation(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no valuation")
        return self.terms[0][0]

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[-1][0]

    def coefficient(self, exponent: int) -> Fraction:
        return self.as_dict().get(exponent, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return lp_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return lp_add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return lp_add(other, -self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return lp_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms
            return LaurentPoly.monomial(_check_exponent(e * n), Fraction(c) ** n)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        return pretty(self)


def _coerce(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.constant(value)
    return NotImplemented


def lp_add(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    acc = dict(p.terms)
    for e, c in r.terms:
        acc[e] = acc.get(e, 0) + c
    return LaurentPoly.from_dict(acc)


def lp_mul(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    if not p.terms or not r.terms:
        return LaurentPoly.zero()
    acc: Dict[int, Fraction] = {}
    for e1, c1 in p.terms:
        for e2, c2 in r.terms:
            e = e1 + e2
            acc[e] = acc.get(e, 0) + c1 * c2
    return LaurentPoly.from_dict(acc)


def lp_product(factors: Iterable[LaurentPoly]) -> LaurentPoly:
    result = LaurentPoly.one()
    for f in factors:
        result = lp_mul(result, f)
        if not result:
            break
    return result


def lp_scale(p: LaurentPoly, c: Scalar) -> LaurentPoly:
    return LaurentPoly.from_dict({e: v * c for e, v in p.terms})


def lp_shift(p: LaurentPoly, s: int) -> LaurentPoly:
    # multiply by q^s
    return LaurentPoly(tuple((_check_exponent(e + s), c) for e, c in p.terms))


def lp_substitute_power(p: LaurentPoly, t: int) -> LaurentPoly:
    '''
    Substitute q -> q^t.
    '''
    if t < 1:
        raise ValueError(f"substitution power must be positive, got {t}")
    return LaurentPoly(tuple((_check_exponent(e * t), c) for e, c in p.terms))


def lp_eval(p: LaurentPoly, x: Scalar) -> Fraction:
    x = Fraction(x)
    if x == 0 and p.terms and p.terms[0][0] < 0:
        raise ZeroDenominatorError("cannot evaluate a negative power at q=0")
    return sum((c * x ** e for e, c in p.terms), Fraction(0))


def lp_exact_div(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    '''
    Exact quotient p / r in the Laurent ring.
    Raises ExactDivisionError when r does not divide p.
    '''
    if not r:
        raise ZeroDenominatorError("division by the zero polynomial")
    if not p:
        return LaurentPoly.zero()
    r_lead_exp, r_lead = r.terms[-1]
    r_low = r.valuation()
    # the quotient valuation is fixed by the valuations of p and r
    q_low = p.valuation() - r_low
    remainder = p.as_dict()
    quotient: Dict[int, Fraction] = {}
    while remainder:
        top = max(remainder)
        e = top - r_lead_exp
        if e < q_low:
            raise ExactDivisionError(f"{pretty(r)} does not divide {pretty(p)}")
        c = remainder[top] / r_lead
        quotient[e] = c
        for re_, rc in r.terms:
            key = re_ + e
            value = remainder.get(key, 0) - c * rc
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return LaurentPoly.from_dict(quotient)


def lp_content_split(p: LaurentPoly) -> Tuple[Fraction, int, LaurentPoly]:
    '''
    Write p = c * q^v * r where r has valuation 0 and leading coefficient 1.
    '''
    if not p:
        return Fraction(0), 0, LaurentPoly.zero()
    v = p.valuation()
    c = p.terms[-1][1]
    return c, v, lp_scale(lp_shift(p, -v), 1 / c)


def _term_text(e: int, c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if e == 0:
        body = str(mag)
    else:
        power = "q" if e == 1 else f"q^{e}"
        body = power if mag == 1 else f"{mag}*{power}"
    if first:
        return f"{sign}{body}"
    return f" {sign} {body}"


def pretty(p: LaurentPoly) -> str:
    if not p:
        return "0"
    return "".join(_term_text(e, c, i == 0) for i, (e, c) in enumerate(p.terms))


def pretty_factored(p: LaurentPoly) -> str:
    # "c * q^v * (primitive part)"
    if not p:
        return "0"
    c, v, rest = lp_content_split(p)
    parts = []
    if c != 1:
        parts.append(str(c))
    if v:
        parts.append(f"q^{v}")
    if rest != LaurentPoly.one():
        parts.append(f"({pretty(rest)})")
    return " * ".join(parts) if parts else "1"


def lp_to_model(p: LaurentPoly) -> LaurentPolyModel:
    return LaurentPolyModel(var=VARIABLE, terms=[
        TermModel(exp=e, num=str(c.numerator), den=str(c.denominator)) for e, c in p.terms
    ])


def lp_from_model(model: LaurentPolyModel) -> LaurentPoly:
    return LaurentPoly(tuple(
        (_check_exponent(t.exp), Fraction(int(t.num), int(t.den))) for t in model.terms
    ))


def lp_to_json(p: LaurentPoly) -> str:
    return lp_to_model(p).model_dump_json()


def lp_from_json(text: str) -> LaurentPoly:
    return lp_from_model(LaurentPolyModel.model_validate_json(text))


@dataclass(frozen=True, eq=False)
class RationalFn:
    '''
    Quotient num/den of Laurent polynomials. No reduced form is kept:
    equality is decided by cross-multiplication.
    '''
    num: LaurentPoly
    den: LaurentPoly = LaurentPoly.one()

    def __post_init__(self):
        if not self.den:
            raise ZeroDenominatorError("rational function with zero denominator")

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFn":
        return cls(p, LaurentPoly.one())

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            other = RationalFn.from_poly(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return rf_eq(self, other)

    __hash__ = None

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return RationalFn(self.num * other, self.den)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (LaurentPoly, int, Fraction)):
            other = RationalFn.from_poly(_coerce(other))
        if not isinstance(other, RationalFn):
            return NotImplemented
        return RationalFn(self.num * other.den, self.den * other.num)

    def __add__(self, other):
        if isinstance(other, (LaurentPoly, int, Fraction)):
            other = RationalFn.from_poly(_coerce(other))
        if not isinstance(other, RationalFn):
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def to_poly(self) -> LaurentPoly:
        '''Exact quotient; raises ExactDivisionError if den does not divide num.'''
        return lp_exact_div(self.num, self.den)

    def evaluate(self, x: Scalar) -> Fraction:
        d = lp_eval(self.den, x)
        if d == 0:
            raise ZeroDenominatorError(f"denominator vanishes at q={x}")
        return lp_eval(self.num, x) / d

    def __str__(self) -> str:
        return f"({pretty(self.num)}) / ({pretty(self.den)})"


def rf_eq(f: RationalFn, g: RationalFn) -> bool:
    return lp_mul(f.num, g.den) == lp_mul(g.num, f.den)


def rf_to_json(f: RationalFn) -> str:
    return RationalFnModel(num=lp_to_model(f.num), den=lp_to_model(f.den)).model_dump_json()


def rf_from_json(text: str) -> RationalFn:
    model = RationalFnModel.model_validate_json(text)
    return RationalFn(lp_from_model(model.num), lp_from_model(model.den))


# frequently used constants
ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
Q = LaurentPoly.monomial(1)
