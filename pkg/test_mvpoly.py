from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from backend.src.errors import SizeBoundExceededError, VariableSetMismatchError, ZeroDenominatorError
from backend.src.services.exact import LaurentPoly
from backend.src.services.lgv import PolyMatrix, det_bareiss
from backend.src.services.mvpoly import (
    MultiLaurent,
    VarSet,
    embed,
    fraction_det,
    mv_det,
    mv_add,
    mv_det_at,
    mv_eval,
    mv_mul,
    mv_neg,
    mv_product,
    mv_specialize,
    random_points,
    specialize_product,
)

XY = VarSet(("x", "y"))
x = MultiLaurent.var(XY, "x")
y = MultiLaurent.var(XY, "y")

coefficients = st.fractions(min_value=-4, max_value=4, max_denominator=3)
polys = st.dictionaries(st.integers(-4, 4), coefficients, max_size=4).map(LaurentPoly.from_dict)


def test_varset_names_must_be_distinct():
    with pytest.raises(ValueError):
        VarSet(("x", "x"))


def test_mixing_rings_raises():
    z = MultiLaurent.var(VarSet(("z",)), "z")
    with pytest.raises(VariableSetMismatchError):
        x + z


def test_arithmetic_and_cancellation():
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert (p - p).is_zero()
    assert MultiLaurent.var(XY, "x", power=-1) * x == MultiLaurent.constant(XY, 1)


def test_two_by_two_determinant():
    one = MultiLaurent.constant(XY, 1)
    assert mv_det([[x, y], [one, x]]) == x * x - y


def test_determinant_size_bound():
    one = MultiLaurent.constant(XY, 1)
    M = [[one] * 5 for _ in range(5)]
    with pytest.raises(SizeBoundExceededError):
        mv_det(M, limit=4)


def test_evaluation():
    p = x * x * MultiLaurent.var(XY, "y", power=-1) + 3
    assert mv_eval(p, {"x": 2, "y": 4}) == 4
    with pytest.raises(ZeroDenominatorError):
        mv_eval(p, {"x": 2, "y": 0})
    with pytest.raises(ValueError):
        mv_eval(p, {"x": 2})


def test_specialization_to_monomials():
    # x -> q^2, y -> -q^-1
    assignment = {"x": (1, 2), "y": (-1, -1)}
    assert mv_specialize(x * y, assignment) == LaurentPoly.monomial(1, -1)
    assert mv_specialize(x + y, assignment) == LaurentPoly.from_dict({2: 1, -1: -1})
    factors = [x + y, x - y]
    assert specialize_product(factors, assignment) == mv_specialize(mv_product(XY, factors), assignment)


@given(polys, polys)
def test_embedding_is_a_ring_homomorphism(p, r):
    assert embed(p * r) == embed(p) * embed(r)
    assert embed(p + r) == embed(p) + embed(r)
    assert mv_specialize(embed(p), {"q": (1, 1)}) == p


def test_fraction_determinant():
    assert fraction_det([[2, 1], [1, Fraction(1, 2)]]) == 0
    assert fraction_det([[0, 1], [1, 0]]) == -1
    assert fraction_det([[Fraction(1, 2), 0, 0], [0, 3, 0], [5, 7, 2]]) == 3


def test_evaluated_determinant_matches_symbolic():
    one = MultiLaurent.constant(XY, 1)
    M = [[x, y, one], [y * y, x, y], [one, x * y, x]]
    symbolic = mv_det(M)
    for point in random_points(XY, 5, seed=7):
        assert mv_det_at(M, point) == mv_eval(symbolic, point)


def test_random_points_are_reproducible():
    first = random_points(XY, 8, seed=20200914)
    assert first == random_points(XY, 8, seed=20200914)
    assert all(2 <= v <= 97 for point in first for v in point.values())
    assert len(first) == 8


def test_named_operations_match_operators():
    assert mv_add(x, y) == x + y
    assert mv_mul(x, y) == x * y
    assert mv_neg(x) == -x
    assert mv_add(x, mv_neg(x)).is_zero()
    z = MultiLaurent.var(VarSet(("z",)), "z")
    with pytest.raises(VariableSetMismatchError):
        mv_mul(x, z)


@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(polys, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_single_variable_determinant_matches_univariate_engine(rows):
    embedded = [[embed(p) for p in row] for row in rows]
    assert mv_det(embedded) == embed(det_bareiss(PolyMatrix.of(rows)))


terms = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)), coefficients, max_size=3
).map(lambda coeffs: MultiLaurent.from_dict(XY, coeffs))
points = st.fixed_dictionaries({
    "x": st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool),
    "y": st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool),
})


@given(terms, terms, points)
def test_evaluation_is_a_ring_homomorphism(p, r, point):
    assert mv_eval(mv_add(p, r), point) == mv_eval(p, point) + mv_eval(r, point)
    assert mv_eval(mv_mul(p, r), point) == mv_eval(p, point) * mv_eval(r, point)
    assert mv_eval(mv_neg(p), point) == -mv_eval(p, point)
    assert mv_eval(MultiLaurent.constant(XY, 1), point) == 1
