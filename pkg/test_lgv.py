from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from backend.src.api.models import PropMatrixSpec, RegionSpec
from backend.src.errors import InvalidInputError
from backend.src.services.exact import ONE, Q, ZERO, LaurentPoly, RationalFn, lp_substitute_power
from backend.src.services.identity import build_prop_matrix, prop_det
from backend.src.services.lgv import (
    PolyMatrix,
    build_gf_matrix,
    column_factor,
    det,
    det_bareiss,
    det_cofactor,
    reduce,
    reduced_entry,
    row_factor,
    tiling_gf,
)
from backend.src.services.oracle import admissible_regions, family_gf
from backend.src.services.paths import gf_entry
from backend.src.services.qseries import weight

entries = st.dictionaries(
    st.integers(-3, 3), st.fractions(min_value=-3, max_value=3, max_denominator=2), max_size=2
).map(LaurentPoly.from_dict)


def matrices(max_size=4):
    return st.integers(1, max_size).flatmap(
        lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(PolyMatrix.of)


@given(matrices())
def test_determinant_engines_agree(M):
    assert det_cofactor(M) == det_bareiss(M)


def test_empty_matrix_has_determinant_one():
    empty = PolyMatrix(())
    assert det_cofactor(empty) == ONE
    assert det_bareiss(empty) == ONE


def test_bareiss_swaps_on_zero_pivot():
    M = PolyMatrix.of([[ZERO, ONE], [ONE, ZERO]])
    assert det_bareiss(M) == -ONE
    singular = PolyMatrix.of([[ZERO, ONE], [ZERO, Q]])
    assert det_bareiss(singular).is_zero()


def test_det_dispatch_threshold():
    M = PolyMatrix.of([[ONE + Q, Q], [ONE, ONE - Q]])
    assert det(M, cofactor_limit=0) == det(M, cofactor_limit=6) == ONE - Q * Q - Q


def test_matrix_must_be_square():
    with pytest.raises(InvalidInputError):
        PolyMatrix.of([[ONE, ONE]])


def test_delete_and_scale():
    M = PolyMatrix.of([[ONE, Q], [Q * Q, Q ** 3]])
    assert M.delete(rows=[0], cols=[1]) == PolyMatrix.of([[Q * Q]])
    assert M.scale([Q, ONE], [ONE, Q ** -1]) == PolyMatrix.of([[Q, Q], [Q * Q, Q * Q]])


def test_gf_matrix_entries():
    region = RegionSpec.of(2, 1, (-1, 0))
    M = build_gf_matrix(region)
    assert M[1, 0] == gf_entry(2, 2, 1, -1)
    assert M.size == 2


@pytest.mark.parametrize(
    "region, expected",
    [
        (RegionSpec.of(1, 1, (0,)), LaurentPoly.from_dict({-1: Fraction(1, 2), 1: Fraction(1, 2)})),
        (RegionSpec.of(1, 0, (0,)), ONE),
        (RegionSpec.of(2, 0, (0, 1)), weight(1) * weight(2)),
        (RegionSpec.of(2, 0, (1, 2)), ZERO),
    ],
)
def test_tiling_gf_examples(region, expected):
    assert tiling_gf(region) == expected


@pytest.mark.parametrize(
    "region",
    list(admissible_regions(3, 1)),
    ids=lambda r: f"m{r.m}-k{r.k}-{r.dents.values}",
)
def test_determinant_counts_path_families(region):
    assert tiling_gf(region) == family_gf(region)


def test_row_factor():
    # i = 1, m = 2, k = 0: 2^-2 q^-3 / ((1 - q^2)(1 - q^4))
    expected = RationalFn(LaurentPoly.monomial(-3, Fraction(1, 4)), (ONE - Q * Q) * (ONE - Q ** 4))
    assert row_factor(1, 2, 0) == expected
    assert row_factor(2, 2, 0) == ONE


def test_column_factor_and_reduced_entry():
    assert column_factor(1, 2, 0) == Q ** 8
    assert reduced_entry(1, 0, 2, 0) == (ONE - Q ** 4) * (ONE - Q ** 8)


@pytest.mark.parametrize("region", list(admissible_regions(3, 2)), ids=lambda r: f"m{r.m}-k{r.k}-{r.dents.values}")
def test_reduction_preserves_the_determinant(region):
    prefactor, reduced = reduce(region)
    assert prefactor.value * det(reduced) == tiling_gf(region)


@pytest.mark.parametrize("region", list(admissible_regions(3, 2)), ids=lambda r: f"m{r.m}-k{r.k}-{r.dents.values}")
def test_reduced_matrix_is_the_product_matrix_at_q4(region):
    _, reduced = reduce(region)
    spec = PropMatrixSpec(k=region.k, a=region.dents)
    entries = build_prop_matrix(spec).rows
    assert reduced == PolyMatrix.of([[lp_substitute_power(p, 4) for p in row] for row in entries])
    assert det(reduced) == lp_substitute_power(prop_det(spec), 4)
