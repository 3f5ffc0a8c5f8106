import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclicvariety import gf
from cyclicvariety.errors import BudgetExceeded, DivisionByZero, FieldMismatch, NoSuchRoot, NotCoprime, NotPrime

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 3), (2, 4), (3, 2), (5, 2), (2, 8), (13, 1)]


@pytest.mark.parametrize(
    "p, m, modulus",
    [
        (2, 2, (1, 1, 1)),  # x^2 + x + 1 is the only irreducible quadratic
        (3, 2, (1, 0, 1)),  # x^2 + 1: -1 is a non-residue mod 3
        (2, 3, (1, 0, 1, 1)),  # 1 + x^2 + x^3 precedes 1 + x + x^3 constant-first
        (2, 4, (1, 0, 0, 1, 1)),
    ],
)
def test_modulus_is_lexicographically_smallest(p, m, modulus):
    assert gf.make_field(p, m).modulus == modulus


def test_prime_field_is_integers_mod_p():
    F = gf.make_field(7)
    assert F.descriptor == "7^1"
    assert int(F(3) * F(5)) == 1
    assert int(F(3) ** -1) == 5
    assert str(F(-1)) == "6"


def test_non_prime_rejected():
    with pytest.raises(NotPrime):
        gf.make_field(6)


def test_budget():
    with pytest.raises(BudgetExceeded):
        gf.make_field(7, 12)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        gf.make_field(5)(1) + gf.make_field(7)(1)


def test_division_by_zero():
    F = gf.make_field(2, 3)
    with pytest.raises(DivisionByZero):
        F.one / F.zero


def test_parse_field_descriptor():
    assert gf.parse_field("3^2") == gf.make_field(3, 2)
    assert gf.parse_field("9") == gf.make_field(3, 2)


def test_extension_degree():
    assert gf.extension_degree(2, 23) == 11
    assert gf.extension_degree(2, 7) == 3
    with pytest.raises(NotCoprime):
        gf.extension_degree(2, 6)


def test_primitive_root_of_unity_has_exact_order():
    F = gf.make_field(2, 11)
    a = gf.primitive_root_of_unity(F, 23)
    assert gf.element_order(a) == 23
    with pytest.raises(NoSuchRoot):
        gf.primitive_root_of_unity(gf.make_field(7), 5)


def test_subfield_codes_are_fixed_by_frobenius():
    F = gf.make_field(3, 4)
    sub = gf.subfield_codes(F, 9)
    assert len(sub) == 9
    assert all(F.pow_code(c, 9) == c for c in sub)


@st.composite
def field_and_elements(draw, k=3):
    p, m = draw(st.sampled_from(FIELDS))
    F = gf.make_field(p, m)
    codes = [draw(st.integers(0, F.order - 1)) for _ in range(k)]
    return F, [F.from_code(c) for c in codes]


@settings(max_examples=150, deadline=None)
@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == F.zero
    if a:
        assert a * a.inverse() == F.one
    assert a ** F.order == a


@settings(max_examples=100, deadline=None)
@given(field_and_elements(k=2))
def test_vectorized_ops_match_scalar(data):
    F, (a, b) = data
    fa = F.vec
    x = np.array([a.code]), np.array([b.code])
    assert fa.add(*x)[0] == (a + b).code
    assert fa.sub(*x)[0] == (a - b).code
    assert fa.mul(*x)[0] == (a * b).code
    assert fa.pow(x[0], 5)[0] == (a**5).code
    if b:
        assert fa.inv(x[1])[0] == b.inverse().code
