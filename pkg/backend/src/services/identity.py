'''
The product formula for det m(k;a) and the machinery of both of its proofs,
as exact, instance-wise checks:
  - condensation route: submatrix decompositions, Dodgson's identity and the
    resulting recursion in m, and the induction that recursion drives for the product;
  - lemma route: Krattenthaler's determinant lemma in the multivariate ring
    and its specialization X_j = q^{-a_j}, A_i = q^{1-i}, C = q^{1-2m-k}.
'''
import logging
from dataclasses import dataclass
from math import comb
from typing import List, Tuple

from backend.src.api.models import DentSequence, PropMatrixSpec, RegionSpec
from backend.src.config import get_settings
from backend.src.errors import InvalidInputError, SizeBoundExceededError, ZeroDenominatorError
from backend.src.services.exact import LaurentPoly, lp_product, lp_substitute_power
from backend.src.services.lgv import PolyMatrix, det, reduce
from backend.src.services.mvpoly import (
    MultiLaurent,
    VarSet,
    mv_det,
    mv_det_at,
    mv_eval,
    mv_product,
    random_points,
    specialize_product,
)
from backend.src.services.qseries import MonomialArg, qpoch

logger = logging.getLogger("qhex.identity")

KRAT_SYMBOLIC_MAX = 3
KRAT_EVAL_MAX = 6
KRAT_POINTS = 8


def q_power(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e)


def prop_entry(i: int, a_j: int, m: int, k: int) -> LaurentPoly:
    return q_power(-i * a_j) * qpoch(MonomialArg.q(i - a_j), 1, 2 * m + k - 2 * i)


def build_prop_matrix(spec: PropMatrixSpec) -> PolyMatrix:
    m, k, a = spec.m, spec.k, spec.a.values
    return PolyMatrix(tuple(
        tuple(prop_entry(i, a_j, m, k) for a_j in a)
        for i in range(1, m + 1)
    ))


def prop_det(spec: PropMatrixSpec) -> LaurentPoly:
    return det(build_prop_matrix(spec))


def product_rhs(spec: PropMatrixSpec) -> LaurentPoly:
    '''
    q^{m(m-1)(2m+k-1)/2 - sum_l a_l (2m-l)} prod_j (q^{m-a_j};q)_k
        * prod_{i<j} (1 - q^{a_i-a_j}) (1 - q^{1-2m-k+a_i+a_j})
    '''
    m, k, a = spec.m, spec.k, spec.a.values
    exponent = m * (m - 1) * (2 * m + k - 1) // 2 - sum(a_l * (2 * m - l) for l, a_l in enumerate(a, start=1))
    factors = [q_power(exponent)]
    factors += [qpoch(MonomialArg.q(m - a_j), 1, k) for a_j in a]
    for i in range(m):
        for j in range(i + 1, m):
            factors.append(1 - q_power(a[i] - a[j]))
            factors.append(1 - q_power(1 - 2 * m - k + a[i] + a[j]))
    return lp_product(factors)


def prop1_check(spec: PropMatrixSpec) -> bool:
    return prop_det(spec) == product_rhs(spec)


@dataclass(frozen=True)
class DentOps:
    head_dropped: DentSequence    # 'a  = (a_2, ..., a_m)
    tail_dropped: DentSequence    # a'  = (a_1, ..., a_{m-1})
    both_dropped: DentSequence    # 'a' = (a_2, ..., a_{m-1})
    shifted: DentSequence         # a-1


def shift(a: DentSequence, by: int = -1) -> DentSequence:
    return DentSequence(values=tuple(x + by for x in a.values))


def dent_ops(a: DentSequence) -> DentOps:
    v = a.values
    if len(v) < 2:
        raise InvalidInputError(f"dent operations need length >= 2, got {list(v)}")
    return DentOps(
        head_dropped=DentSequence(values=v[1:]),
        tail_dropped=DentSequence(values=v[:-1]),
        both_dropped=DentSequence(values=v[1:-1]),
        shifted=shift(a),
    )


@dataclass(frozen=True)
class DiagTransform:
    left: Tuple[LaurentPoly, ...]
    right: Tuple[LaurentPoly, ...]

    def apply(self, M: PolyMatrix) -> PolyMatrix:
        if len(self.left) != M.size or len(self.right) != M.size:
            raise InvalidInputError("diagonal lengths do not match the matrix size")
        return M.scale(self.left, self.right)


def _powers(exponents) -> Tuple[LaurentPoly, ...]:
    return tuple(q_power(-e) for e in exponents)


def submatrix_decompositions(spec: PropMatrixSpec) -> List[Tuple[str, PolyMatrix, PolyMatrix]]:
    '''
    The five submatrices of m(k;a) used by the condensation formula, each
    paired with its description as a (scaled) matrix of the same family.
    Returned as (name, deleted submatrix, rebuilt matrix).
    '''
    m, k, a = spec.m, spec.k, spec.a
    if m < 2:
        raise InvalidInputError("submatrix decompositions need m >= 2")
    ops = dent_ops(a)
    M = build_prop_matrix(spec)
    last = m - 1
    v = a.values

    def rebuilt(kk, seq):
        return build_prop_matrix(PropMatrixSpec(k=kk, a=seq))

    return [
        ("minus_first_row_col",
         M.delete(rows=[0], cols=[0]),
         DiagTransform(_powers(range(1, m)), _powers(v[1:])).apply(rebuilt(k, shift(ops.head_dropped)))),
        ("minus_last_row_col",
         M.delete(rows=[last], cols=[last]),
         rebuilt(k + 2, ops.tail_dropped)),
        ("minus_first_row_last_col",
         M.delete(rows=[0], cols=[last]),
         DiagTransform(_powers(range(1, m)), _powers(v[:-1])).apply(rebuilt(k, shift(ops.tail_dropped)))),
        ("minus_last_row_first_col",
         M.delete(rows=[last], cols=[0]),
         rebuilt(k + 2, ops.head_dropped)),
        # left scaling q^-1 .. q^-(m-2): rows 2..m-1 of m(k;a) become rows 1..m-2
        ("minus_outer_rows_cols",
         M.delete(rows=[0, last], cols=[0, last]),
         DiagTransform(_powers(range(1, m - 1)), _powers(v[1:-1])).apply(rebuilt(k + 2, shift(ops.both_dropped)))),
    ]


def submatrix_identities_check(spec: PropMatrixSpec) -> bool:
    ok = True
    for name, deleted, rebuilt in submatrix_decompositions(spec):
        if deleted != rebuilt:
            logger.warning(f"submatrix identity {name} fails for k={spec.k} a={spec.a.values}")
            ok = False
    return ok


def dodgson_check(M: PolyMatrix) -> bool:
    '''
    det(M) det(M without rows/cols 1,m)
        = det(M_11) det(M_mm) - det(M_1m) det(M_m1)
    '''
    n = M.size
    if n < 2:
        raise InvalidInputError("condensation needs a matrix of size >= 2")
    last = n - 1
    lhs = det(M) * det(M.delete(rows=[0, last], cols=[0, last]))
    rhs = (
        det(M.delete(rows=[0], cols=[0])) * det(M.delete(rows=[last], cols=[last]))
        - det(M.delete(rows=[0], cols=[last])) * det(M.delete(rows=[last], cols=[0]))
    )
    return lhs == rhs


def _recursion_sides(spec: PropMatrixSpec, d) -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    # (left side, right side, divisor) of the recursion multiplied through by the divisor
    m, k, a = spec.m, spec.k, spec.a
    ops = dent_ops(a)
    v = a.values
    denominator = d(k + 2, shift(ops.both_dropped))
    bracket = (
        q_power(-v[-1]) * d(k + 2, ops.tail_dropped) * d(k, shift(ops.head_dropped))
        - q_power(-v[0]) * d(k + 2, ops.head_dropped) * d(k, shift(ops.tail_dropped))
    )
    return d(k, a) * denominator, q_power(1 - m) * bracket, denominator


def recursion_check(spec: PropMatrixSpec) -> bool:
    '''
    d(k;a) d(k+2;'a'-1) = q^{1-m} [ q^{-a_m} d(k+2;a') d(k;'a-1) - q^{-a_1} d(k+2;'a) d(k;a'-1) ]
    checked by cross-multiplication; raises ZeroDenominatorError when
    d(k+2;'a'-1) vanishes.
    '''
    if spec.m < 2:
        raise InvalidInputError("the condensation recursion needs m >= 2")
    lhs, rhs, denominator = _recursion_sides(spec, lambda kk, seq: prop_det(PropMatrixSpec(k=kk, a=seq)))
    if not denominator:
        raise ZeroDenominatorError(f"d(k+2;'a'-1) vanishes for k={spec.k} a={spec.a.values}")
    return lhs == rhs


def induction_step_check(spec: PropMatrixSpec) -> bool:
    '''
    The product formula obeys the same recursion as the determinant.
    With the base cases m = 0 and m = 1 this carries the formula from
    size m-1 and m-2 to size m. Cross-multiplied, so a vanishing divisor
    needs no special case.
    '''
    if spec.m < 2:
        raise InvalidInputError("the induction step needs m >= 2")
    lhs, rhs, _ = _recursion_sides(spec, lambda kk, seq: product_rhs(PropMatrixSpec(k=kk, a=seq)))
    return lhs == rhs


def induction_base_check(k: int, a_1: int) -> bool:
    # m = 0: empty determinant and empty product are both 1
    empty = PropMatrixSpec(k=k, a=DentSequence(values=()))
    if not (prop_det(empty) == product_rhs(empty) == LaurentPoly.one()):
        return False
    # m = 1: q^{-a_1} (q^{1-a_1};q)_k on both sides
    return prop1_check(PropMatrixSpec.of(k, (a_1,)))


def vanishing_expected(spec: PropMatrixSpec) -> bool:
    # the factor (q^{m-a_j};q)_k of the product vanishes
    m, k = spec.m, spec.k
    return k >= 1 and any(m <= a_j <= m + k - 1 for a_j in spec.a.values)


# --- lemma route -----------------------------------------------------------

def lemma_vars(m: int) -> VarSet:
    names = [f"X{i}" for i in range(1, m + 1)] + [f"A{i}" for i in range(2, m + 1)] + ["C"]
    return VarSet(tuple(names))


def lemma_matrix(m: int) -> List[List[MultiLaurent]]:
    '''
    Entry (i,j) = prod_{l=j+1}^{m} (C/X_i + A_l)(X_i + A_l).
    '''
    vars = lemma_vars(m)
    C = MultiLaurent.var(vars, "C")
    rows = []
    for i in range(1, m + 1):
        X = MultiLaurent.var(vars, f"X{i}")
        X_inv = MultiLaurent.var(vars, f"X{i}", power=-1)
        row = []
        for j in range(1, m + 1):
            factors = []
            for l in range(j + 1, m + 1):
                A = MultiLaurent.var(vars, f"A{l}")
                factors += [C * X_inv + A, X + A]
            row.append(mv_product(vars, factors))
        rows.append(row)
    return rows


def lemma_rhs_factors(m: int) -> List[MultiLaurent]:
    '''prod_{i>=2} A_i^{i-1} prod_{i<j} (X_i - X_j)(1 - C/(X_i X_j)), as a factor list.'''
    vars = lemma_vars(m)
    C = MultiLaurent.var(vars, "C")
    factors = [MultiLaurent.var(vars, f"A{i}", power=i - 1) for i in range(2, m + 1)]
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            Xi = MultiLaurent.var(vars, f"X{i}")
            Xj = MultiLaurent.var(vars, f"X{j}")
            factors.append(Xi - Xj)
            factors.append(1 - C * MultiLaurent.var(vars, f"X{i}", power=-1) * MultiLaurent.var(vars, f"X{j}", power=-1))
    return factors


def krat_check(m: int, mode: str = "auto", points: int = KRAT_POINTS, seed: int = None) -> bool:
    '''
    Krattenthaler's lemma for a given size. "symbolic" expands both sides
    (m <= 3), "eval" compares them at fixed-seed rational points (m <= 6).
    '''
    if m < 1:
        raise InvalidInputError("lemma needs m >= 1")
    if mode == "auto":
        mode = "symbolic" if m <= KRAT_SYMBOLIC_MAX else "eval"
    if mode == "symbolic":
        if m > KRAT_SYMBOLIC_MAX:
            raise SizeBoundExceededError(f"symbolic lemma check is limited to m <= {KRAT_SYMBOLIC_MAX}")
        # expand both sides in the multivariate ring
        matrix = lemma_matrix(m)
        rhs = mv_product(lemma_vars(m), lemma_rhs_factors(m))
        return mv_det(matrix, limit=max(KRAT_SYMBOLIC_MAX, get_settings().mv_det_limit)) == rhs
    if mode != "eval":
        raise InvalidInputError(f"unknown lemma check mode {mode!r}")
    if m > KRAT_EVAL_MAX:
        raise SizeBoundExceededError(f"lemma evaluation check is limited to m <= {KRAT_EVAL_MAX}")
    if seed is None:
        seed = get_settings().seed
    # evaluate entries first, then take a rational determinant at each point
    matrix = lemma_matrix(m)
    factors = lemma_rhs_factors(m)
    for point in random_points(lemma_vars(m), points, seed):
        rhs = 1
        for f in factors:
            rhs *= mv_eval(f, point)
        if mv_det_at(matrix, point) != rhs:
            logger.warning(f"lemma fails for m={m} at {point}")
            return False
    return True


@dataclass(frozen=True)
class SpecializationChain:
    column_pullout: bool
    monomial_pullout: bool
    specialized_lemma: bool
    end_to_end: bool

    @property
    def ok(self) -> bool:
        return self.column_pullout and self.monomial_pullout and self.specialized_lemma and self.end_to_end


def specialization_chain(spec: PropMatrixSpec) -> SpecializationChain:
    m, k, a = spec.m, spec.k, spec.a.values
    X = [q_power(-a_j) for a_j in a]

    lhs = prop_det(spec)
    column_pochs = lp_product(qpoch(MonomialArg.q(m - a_j), 1, k) for a_j in a)

    # matrix left after pulling (q^{m-a_j};q)_k out of every column
    N = PolyMatrix(tuple(
        tuple(
            q_power(-i * a_j)
            * qpoch(MonomialArg.q(i - a_j), 1, m - i)
            * qpoch(MonomialArg.q(m + k - a_j), 1, m - i)
            for a_j in a
        )
        for i in range(1, m + 1)
    ))
    det_N = det(N)

    # q-powers pulled from rows and columns turn N into the lemma matrix K
    monomial = q_power(sum(
        -m * a_l + comb(m, 2) - comb(l, 2) + (2 * m + k - 1) * (m - l)
        for l, a_l in enumerate(a, start=1)
    ))
    C_q = q_power(1 - 2 * m - k)
    K = PolyMatrix(tuple(
        tuple(
            lp_product(q_power(-i - l) - X[j] for l in range(m - i))
            * lp_product(C_q * q_power(a[j]) - q_power(1 - m + l) for l in range(m - i))
            for j in range(m)
        )
        for i in range(1, m + 1)
    ))
    det_K = det(K)

    # X_j = q^{-a_j}, A_i = q^{1-i}, C = q^{1-2m-k}
    assignment = {f"X{j}": (1, -a_j) for j, a_j in enumerate(a, start=1)}
    assignment.update({f"A{i}": (1, 1 - i) for i in range(2, m + 1)})
    assignment["C"] = (1, 1 - 2 * m - k)
    specialized = specialize_product(lemma_rhs_factors(m), assignment)

    return SpecializationChain(
        column_pullout=lhs == column_pochs * det_N,
        monomial_pullout=det_N == monomial * det_K,
        specialized_lemma=det_K == specialized,
        end_to_end=lhs == column_pochs * monomial * specialized,
    )


def krat_specialize_check(spec: PropMatrixSpec) -> bool:
    chain = specialization_chain(spec)
    if not chain.ok:
        logger.warning(f"specialization chain broken for k={spec.k} a={spec.a.values}: {chain}")
    return chain.ok


# --- end-to-end ------------------------------------------------------------

def closed_route(region: RegionSpec) -> LaurentPoly:
    '''
    Tiling generating function from the product formula:
    prefactor * (product side with q -> q^4). Zero when the last path
    cannot reach its end point.
    '''
    if not region.last_path_feasible:
        return LaurentPoly.zero()
    prefactor, _ = reduce(region)
    rhs = lp_substitute_power(product_rhs(PropMatrixSpec(k=region.k, a=region.dents)), 4)
    return (prefactor.value * rhs).to_poly()
