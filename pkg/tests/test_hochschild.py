from fractions import Fraction

import pytest

from multipath.algebra import dual_numbers, ground_field, rebase, truncated_poly, upper_triangular
from multipath.errors import ValidationError
from multipath.fields import GF, QQ
from multipath.hochschild import (MAX_ALGEBRA_DIM, bar_boundary, bar_complex, check_polygon_theorem, hh_dims,
                                  polygon_comparison)


def closed_form(n, char, top):
    """HH of K[x]/(x^n) with coefficients in itself."""
    higher = n if char and n % char == 0 else n - 1
    return {0: n, **{i: higher for i in range(1, top + 1)}}


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("fld", [QQ, GF(2), GF(3)], ids=str)
def test_truncated_polynomials(n, fld):
    top = 4 if n < 3 else 3
    assert hh_dims(truncated_poly(n), None, top, fld) == closed_form(n, fld.characteristic, top)


def test_ground_field():
    assert hh_dims(ground_field()[0], max_degree=5) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0}


def test_path_algebra_of_a2():
    assert hh_dims(upper_triangular(), max_degree=3) == {0: 2, 1: 0, 2: 0, 3: 0}


def test_b_squared_zero_noncommutative():
    bc = bar_complex(upper_triangular(), None, 3)
    for n in range(1, 3):
        assert (bc.boundaries[n] @ bc.boundaries[n + 1]).is_zero()


def test_basis_change_invariance():
    a = truncated_poly(3)
    b = rebase(a, [0, 2, 1], [1, Fraction(2, 3), -5])
    assert hh_dims(a, max_degree=3) == hh_dims(b, max_degree=3)


def test_caps():
    with pytest.raises(ValidationError):
        hh_dims(dual_numbers(), max_degree=7)
    with pytest.raises(ValidationError):
        hh_dims(truncated_poly(MAX_ALGEBRA_DIM + 1), max_degree=1)
    with pytest.raises(ValidationError):
        bar_boundary(dual_numbers(), None, 0, QQ)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("a", [dual_numbers(), upper_triangular()], ids=lambda a: a.name)
def test_polygon_matches_hochschild(n, a):
    cmp = polygon_comparison(n, a)
    assert all(cmp["multipath"][i] == cmp["hochschild"][i] for i in range(1, n + 1))
    assert check_polygon_theorem(n, a)


def test_polygon_in_characteristic_two():
    assert check_polygon_theorem(3, dual_numbers(), None, GF(2))


def test_three_cycle_with_ground_field():
    cmp = polygon_comparison(3, ground_field()[0])
    assert cmp["multipath"] == {0: 0, 1: 0, 2: 0, 3: 1}
    assert cmp["hochschild"] == {1: 0, 2: 0, 3: 1}


def test_four_cycle_in_characteristic_two():
    assert check_polygon_theorem(4, ground_field()[0], None, GF(2))
