'''
Lindström-Gessel-Viennot route: the matrix of single-path generating
functions, exact determinant engines, and the multilinearity reduction that
splits the determinant into a rational prefactor and a reduced matrix.
'''
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from backend.src.api.models import RegionSpec
from backend.src.config import get_settings
from backend.src.errors import ExactDivisionError, InvalidInputError
from backend.src.services.exact import (
    LaurentPoly,
    RationalFn,
    lp_exact_div,
    lp_mul,
    lp_product,
)
from backend.src.services.paths import gf_entry
from backend.src.services.qseries import MonomialArg, qpoch

logger = logging.getLogger("qhex.lgv")


@dataclass(frozen=True)
class PolyMatrix:
    rows: Tuple[Tuple[LaurentPoly, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise InvalidInputError(f"matrix is not square: row of length {len(row)} in size {n}")

    @classmethod
    def of(cls, rows: Sequence[Sequence[LaurentPoly]]) -> "PolyMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: Tuple[int, int]) -> LaurentPoly:
        i, j = index
        return self.rows[i][j]

    def delete(self, rows: Sequence[int] = (), cols: Sequence[int] = ()) -> "PolyMatrix":
        '''Submatrix without the given 0-based rows and columns.'''
        drop_r, drop_c = set(rows), set(cols)
        return PolyMatrix(tuple(
            tuple(x for j, x in enumerate(row) if j not in drop_c)
            for i, row in enumerate(self.rows) if i not in drop_r
        ))

    def scale(self, left: Sequence[LaurentPoly], right: Sequence[LaurentPoly]) -> "PolyMatrix":
        # dg(left) * self * dg(right)
        return PolyMatrix(tuple(
            tuple(left[i] * x * right[j] for j, x in enumerate(row))
            for i, row in enumerate(self.rows)
        ))


@dataclass(frozen=True, eq=False)
class Prefactor:
    value: RationalFn


def det_cofactor(M: PolyMatrix) -> LaurentPoly:
    '''
    Laplace expansion along rows with the minors memoized by their column set,
    O(n 2^n) polynomial products.
    '''
    n = M.size
    memo: Dict[Tuple[int, ...], LaurentPoly] = {(): LaurentPoly.one()}

    def minor(cols: Tuple[int, ...]) -> LaurentPoly:
        # determinant of rows n-len(cols).. n-1 restricted to cols
        if cols in memo:
            return memo[cols]
        row = n - len(cols)
        total = LaurentPoly.zero()
        for pos, col in enumerate(cols):
            entry = M[row, col]
            if not entry:
                continue
            term = lp_mul(entry, minor(cols[:pos] + cols[pos + 1:]))
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return minor(tuple(range(n)))


def det_bareiss(M: PolyMatrix) -> LaurentPoly:
    '''
    Fraction-free elimination. Every division is exact in the Laurent ring;
    a remainder means a bug and surfaces as ExactDivisionError.
    '''
    n = M.size
    if n == 0:
        return LaurentPoly.one()
    a: List[List[LaurentPoly]] = [list(row) for row in M.rows]
    sign = 1
    previous = LaurentPoly.one()
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return LaurentPoly.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                try:
                    a[i][j] = lp_exact_div(numerator, previous)
                except ExactDivisionError:
                    logger.error(f"Bareiss division failed at step {k}, entry ({i},{j})")
                    raise
            a[i][k] = LaurentPoly.zero()
        previous = a[k][k]
    result = a[n - 1][n - 1]
    return result if sign > 0 else -result


def det(M: PolyMatrix, cofactor_limit: Optional[int] = None) -> LaurentPoly:
    if cofactor_limit is None:
        cofactor_limit = get_settings().cofactor_limit
    if M.size <= cofactor_limit:
        return det_cofactor(M)
    return det_bareiss(M)


def build_gf_matrix(region: RegionSpec) -> PolyMatrix:
    m, k = region.m, region.k
    return PolyMatrix(tuple(
        tuple(gf_entry(i, m, k, a_j) for a_j in region.dents.values)
        for i in range(1, m + 1)
    ))


def tiling_gf(region: RegionSpec) -> LaurentPoly:
    return det(build_gf_matrix(region))


def row_factor(i: int, m: int, k: int) -> RationalFn:
    '''2^{2i-k-2m} q^{(2i-k-2m)(2i+k+2m-3)/2} / (q^2;q^2)_{2m+k-2i}'''
    e = 2 * i - k - 2 * m
    num = LaurentPoly.monomial(e * (2 * i + k + 2 * m - 3) // 2, Fraction(2) ** e)
    return RationalFn(num, qpoch(MonomialArg.q(2), 2, 2 * m + k - 2 * i))


def column_factor(a_j: int, m: int, k: int) -> LaurentPoly:
    return LaurentPoly.monomial((4 * m + 2 * k) * a_j)


def reduced_entry(i: int, a_j: int, m: int, k: int) -> LaurentPoly:
    # q^{-4 i a_j} (q^{4(i-a_j)}; q^4)_{2m+k-2i}
    return LaurentPoly.monomial(-4 * i * a_j) * qpoch(MonomialArg.q(4 * (i - a_j)), 4, 2 * m + k - 2 * i)


def reduce(region: RegionSpec) -> Tuple[Prefactor, PolyMatrix]:
    '''
    Pull the row denominators and the row/column powers of q out of the
    gf-matrix. det(gf-matrix) = prefactor * det(reduced) when the last path
    is feasible.
    '''
    m, k = region.m, region.k
    # row factors carry the 2-powers and the (q^2;q^2) denominators
    value = RationalFn.from_poly(LaurentPoly.one())
    for i in range(1, m + 1):
        value = value * row_factor(i, m, k)
    # columns only contribute q^{(4m+2k)a_j}
    value = value * lp_product(column_factor(a_j, m, k) for a_j in region.dents.values)
    # what stays inside the determinant is m(k;a) at q^4
    reduced = PolyMatrix(tuple(
        tuple(reduced_entry(i, a_j, m, k) for a_j in region.dents.values)
        for i in range(1, m + 1)
    ))
    return Prefactor(value), reduced
