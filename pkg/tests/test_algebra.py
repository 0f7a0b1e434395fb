import json
from fractions import Fraction

import pytest

from multipath.algebra import (FiniteAlgebra, algebra_from_json, bimodule_from_json, dual_numbers,
                               ground_field, rebase, regular_bimodule, require_valid, truncated_poly,
                               upper_triangular, verify_algebra, verify_bimodule)
from multipath.errors import ValidationError
from multipath.fields import GF, QQ, parse_field


@pytest.mark.parametrize("a", [ground_field()[0], dual_numbers(), truncated_poly(3), upper_triangular()],
                         ids=lambda a: a.name)
def test_standard_algebras_are_valid(a):
    assert verify_algebra(a)[0]
    assert verify_bimodule(regular_bimodule(a))[0]


def test_commutativity():
    assert dual_numbers().is_commutative()
    assert not upper_triangular().is_commutative()


def test_dual_numbers_multiplication():
    a = dual_numbers()
    eps = a.basis(1)
    assert a.multiply(eps, eps) == [0, 0]
    assert a.multiply([1, 2], [3, 4]) == [3, 10]


def test_non_associative_rejected():
    # e1 e1 = e1 but e1 (e1 e1) and (e1 e1) e1 disagree after a bad twist
    a = FiniteAlgebra.from_constants(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
                                     [1, 0])
    assert verify_algebra(a)[0]  # K[x]/(x^2 - x - 1) is fine
    bad = FiniteAlgebra.from_constants(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1)], [0, 1])
    ok, why = verify_algebra(bad)
    assert not ok and why
    with pytest.raises(ValidationError):
        require_valid(bad)


def test_bimodule_actions():
    a = upper_triangular()
    m = regular_bimodule(a)
    assert m.act_left(a.basis(0), a.basis(1)) == a.basis(1)
    assert m.act_right(a.basis(1), a.basis(0)) == [0, 0, 0]
    assert not m.is_symmetric()
    assert regular_bimodule(dual_numbers()).is_symmetric()


def test_bimodule_over_dual_numbers_from_json(tmp_path):
    a = dual_numbers()
    # K with eps acting by zero on both sides
    m = bimodule_from_json({"dim": 1, "left": [[0, 0, 0, 1]], "right": [[0, 0, 0, 1]]}, a)
    assert verify_bimodule(m)[0]
    assert m.dim == 1


def test_json_roundtrip_with_fractions():
    a = rebase(dual_numbers(), [0, 1], [1, Fraction(1, 3)])
    b = algebra_from_json(json.loads(json.dumps(a.to_json())))
    assert b.mult == a.mult and b.unit == a.unit


def test_json_errors():
    with pytest.raises(ValidationError):
        algebra_from_json({"dim": 2})
    with pytest.raises(ValidationError):
        algebra_from_json({"dim": 1, "mult": [[0, 0, 0, 1, 0]], "unit": [1]})


def test_rebase_keeps_validity():
    a = rebase(truncated_poly(3), [0, 2, 1], [1, 2, Fraction(-1, 5)])
    assert verify_algebra(a)[0]


def test_field_coercion_rejects_denominator():
    a = FiniteAlgebra.from_constants(1, [(0, 0, 0, Fraction(1, 3))], [3])
    assert verify_algebra(a)[0]
    with pytest.raises(ValidationError):
        require_valid(a, None, GF(3))
    require_valid(a, None, GF(5))


@pytest.mark.parametrize("text,char", [("q", 0), ("Q", 0), ("gf:5", 5), ("gf(3)", 3), ("gf7", 7), ("11", 11)])
def test_parse_field(text, char):
    assert parse_field(text).characteristic == char


@pytest.mark.parametrize("text", ["gf:4", "gf:1", "z", "gf:"])
def test_parse_field_errors(text):
    with pytest.raises(ValidationError):
        parse_field(text)


def test_fields():
    f = GF(7)
    assert f.reduce(-1) == 6
    assert f.inv(3) * 3 % 7 == 1
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert GF(7) == GF(7) and GF(7) != GF(5) and QQ != GF(7)
