'''
Sparse multivariate Laurent polynomials over the rationals.
Only the ring operations, a cofactor determinant, evaluation at rational
points and monomial specialization into the univariate ring are provided.
'''
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from backend.src.config import get_settings
from backend.src.errors import (
    SizeBoundExceededError,
    VariableSetMismatchError,
    ZeroDenominatorError,
)
from backend.src.services.exact import LaurentPoly, lp_product

logger = logging.getLogger("qhex.mvpoly")

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class VarSet:
    names: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names must be distinct: {self.names}")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class MultiLaurent:
    vars: VarSet
    terms: Tuple[Tuple[Exponents, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, vars: VarSet, coeffs: Mapping[Exponents, Fraction]) -> "MultiLaurent":
        for exps in coeffs:
            if len(exps) != len(vars):
                raise ValueError(f"exponent vector {exps} does not match {vars.names}")
        return cls(vars, tuple(sorted((e, Fraction(c)) for e, c in coeffs.items() if c != 0)))

    @classmethod
    def constant(cls, vars: VarSet, c) -> "MultiLaurent":
        return cls.from_dict(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars: VarSet, name: str, power: int = 1, coeff=1) -> "MultiLaurent":
        exps = [0] * len(vars)
        exps[vars.index(name)] = power
        return cls.from_dict(vars, {tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def _same_ring(self, other: "MultiLaurent") -> None:
        if self.vars != other.vars:
            raise VariableSetMismatchError(f"{self.vars.names} != {other.vars.names}")

    def _lift(self, other):
        if isinstance(other, MultiLaurent):
            self._same_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiLaurent.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return MultiLaurent.from_dict(self.vars, acc)

    __radd__ = __add__

    def __neg__(self) -> "MultiLaurent":
        return MultiLaurent(self.vars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(x + y for x, y in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return MultiLaurent.from_dict(self.vars, acc)

    __rmul__ = __mul__


def mv_add(p: MultiLaurent, r: MultiLaurent) -> MultiLaurent:
    p._same_ring(r)
    return p + r


def mv_mul(p: MultiLaurent, r: MultiLaurent) -> MultiLaurent:
    p._same_ring(r)
    return p * r


def mv_neg(p: MultiLaurent) -> MultiLaurent:
    return -p


def mv_product(vars: VarSet, factors) -> MultiLaurent:
    result = MultiLaurent.constant(vars, 1)
    for f in factors:
        result = result * f
    return result


def embed(p: LaurentPoly, name: str = "q") -> MultiLaurent:
    vars = VarSet((name,))
    return MultiLaurent.from_dict(vars, {(e,): c for e, c in p.terms})


def mv_det(M: Sequence[Sequence[MultiLaurent]], limit: int = None) -> MultiLaurent:
    '''
    Determinant by cofactor expansion along the first row.
    Sizes above `limit` (QHEX_MV_DET_LIMIT, default 4) are refused.
    '''
    if limit is None:
        limit = get_settings().mv_det_limit
    n = len(M)
    if n > limit:
        raise SizeBoundExceededError(f"symbolic determinant of size {n} exceeds bound {limit}")
    if n == 0:
        raise ValueError("mv_det needs at least one entry to know its variables")
    vars = M[0][0].vars
    for row in M:
        if len(row) != n:
            raise ValueError("matrix is not square")
        for entry in row:
            if entry.vars != vars:
                raise VariableSetMismatchError("matrix entries live in different rings")
    return _cofactor(M, tuple(range(n)), 0, vars)


def _cofactor(M, cols: Tuple[int, ...], row: int, vars: VarSet) -> MultiLaurent:
    if not cols:
        return MultiLaurent.constant(vars, 1)
    total = MultiLaurent(vars)
    for pos, col in enumerate(cols):
        entry = M[row][col]
        if entry.is_zero():
            continue
        minor = _cofactor(M, cols[:pos] + cols[pos + 1:], row + 1, vars)
        term = entry * minor
        total = total - term if pos % 2 else total + term
    return total


def mv_eval(p: MultiLaurent, point: Mapping[str, Fraction]) -> Fraction:
    values = []
    for name in p.vars.names:
        if name not in point:
            raise ValueError(f"no value assigned to {name}")
        values.append(Fraction(point[name]))
    total = Fraction(0)
    for exps, c in p.terms:
        term = c
        for x, e in zip(values, exps):
            if e < 0 and x == 0:
                raise ZeroDenominatorError("zero assigned to a variable with negative exponent")
            term *= x ** e
        total += term
    return total


def mv_specialize(p: MultiLaurent, assignment: Mapping[str, Tuple[Fraction, int]]) -> LaurentPoly:
    '''
    Map each variable to a monomial c*q^e and return the image in the
    univariate Laurent ring.
    '''
    images = [assignment[name] for name in p.vars.names]
    acc: Dict[int, Fraction] = {}
    for exps, c in p.terms:
        coeff = Fraction(c)
        exponent = 0
        for (vc, ve), e in zip(images, exps):
            coeff *= Fraction(vc) ** e
            exponent += ve * e
        acc[exponent] = acc.get(exponent, 0) + coeff
    return LaurentPoly.from_dict(acc)


def specialize_product(factors: Sequence[MultiLaurent], assignment) -> LaurentPoly:
    # specialization is multiplicative
    return lp_product(mv_specialize(f, assignment) for f in factors)


def fraction_det(M: Sequence[Sequence[Fraction]]) -> Fraction:
    '''Exact determinant of a rational matrix by Gaussian elimination.'''
    a = [[Fraction(x) for x in row] for row in M]
    n = len(a)
    sign = 1
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        det *= a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k] / a[k][k]
            if factor:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    return sign * det


def mv_det_at(M: Sequence[Sequence[MultiLaurent]], point: Mapping[str, Fraction]) -> Fraction:
    return fraction_det([[mv_eval(entry, point) for entry in row] for row in M])


def random_points(vars: VarSet, count: int, seed: int, low: int = 2, high: int = 97) -> List[Dict[str, Fraction]]:
    '''
    Fixed-seed evaluation points for randomized identity testing.
    '''
    rng = random.Random(seed)
    return [
        {name: Fraction(rng.randint(low, high)) for name in vars.names}
        for _ in range(count)
    ]

