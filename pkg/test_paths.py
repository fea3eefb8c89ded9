from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from backend.src.errors import InvalidInputError
from backend.src.services.exact import ONE, LaurentPoly, RationalFn, rf_eq
from backend.src.services.paths import (
    LatticePoint,
    PathSpec,
    entry_spec,
    gf_closed,
    gf_dp,
    gf_entry,
    gf_entry_closed,
    gf_row,
    recursion_holds,
    step_label,
    step_weight,
)
from backend.src.services.qseries import weight

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

specs = st.builds(
    lambda a, b, w, h: PathSpec.of(a, b, a + w, b - h),
    st.integers(-5, 5), st.integers(-5, 5), st.integers(0, 5), st.integers(0, 5),
)


@pytest.mark.parametrize(
    "spec, expected",
    [
        (PathSpec.of(0, 1, 1, 0), {-2: HALF, 0: 1, 2: HALF}),
        (PathSpec.of(1, 0, 3, 0), {-3: QUARTER, -1: QUARTER, 1: QUARTER, 3: QUARTER}),
        (PathSpec.of(2, 3, 2, -1), {0: 1}),
        (PathSpec.of(0, 0, 0, 5), {}),
        (PathSpec.of(0, -1, 2, 0), {}),
        (PathSpec.of(3, 0, 1, 0), {}),
    ],
)
def test_worked_examples(spec, expected):
    assert gf_dp(spec) == LaurentPoly.from_dict(expected)


def test_step_labels():
    assert step_label(LatticePoint(5, 1)) == 3
    assert step_weight(LatticePoint(0, 1)) == weight(2)


def test_closed_form_example():
    assert rf_eq(gf_closed(PathSpec.of(0, 1, 1, 0)), RationalFn.from_poly(gf_dp(PathSpec.of(0, 1, 1, 0))))


@given(specs)
def test_closed_form_matches_recursion(spec):
    assert rf_eq(gf_closed(spec), RationalFn.from_poly(gf_dp(spec)))


@given(specs)
def test_recursion_holds(spec):
    assert recursion_holds(spec)


def test_recursion_holds_outside_the_domain():
    assert recursion_holds(PathSpec.of(0, -1, 2, 0))


def test_closed_form_domain():
    with pytest.raises(InvalidInputError):
        gf_closed(PathSpec.of(3, 0, 1, 0))
    with pytest.raises(InvalidInputError):
        gf_closed(PathSpec.of(0, 0, 2, 1))


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(0, 6))
def test_row_case(a, b, width):
    spec = PathSpec.of(a, b, a + width, b)
    assert gf_row(spec) == gf_dp(spec)


def test_row_case_needs_a_row():
    with pytest.raises(InvalidInputError):
        gf_row(PathSpec.of(0, 1, 2, 0))


def test_column_paths_have_weight_one():
    assert gf_dp(PathSpec.of(4, 3, 4, -2)) == ONE


def test_entry_spec():
    # path 2 of a region with m = 3, k = 1 ends on the line x = 2m - 1 + k
    assert entry_spec(2, 3, 1, -1) == PathSpec.of(3, 1, 6, -1)


@pytest.mark.parametrize("m, k", [(1, 0), (1, 2), (2, 1), (3, 0), (3, 2)])
def test_specialized_closed_form(m, k):
    for i in range(1, m + 1):
        for a_j in range(-(m + k - 1), i):
            assert gf_entry_closed(i, m, k, a_j) == gf_entry(i, m, k, a_j)


def test_entry_validation():
    with pytest.raises(InvalidInputError):
        gf_entry(0, 2, 0, 0)
    with pytest.raises(InvalidInputError):
        gf_entry(3, 2, 0, 0)
    with pytest.raises(InvalidInputError):
        gf_entry(1, 2, -1, 0)
