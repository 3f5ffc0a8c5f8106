import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclicvariety import gf
from cyclicvariety.errors import NotDivisible
from cyclicvariety.mpoly import (
    MultiPoly,
    evaluate,
    evaluate_many,
    exact_divide,
    homogeneous_degree,
    parse,
    partial_evaluate,
    substitute,
)


def polys(nvars=3, max_terms=5, max_deg=3):
    term = st.tuples(st.tuples(*[st.integers(0, max_deg)] * nvars), st.integers(-5, 5))
    return st.lists(term, max_size=max_terms).map(lambda ts: MultiPoly(nvars, dict(ts)))


def test_text_is_graded_lex():
    x1, x2 = MultiPoly.gens(2)
    assert str(x2 + x1**2 - 3 * x1 * x2) == "x1^2 - 3*x1*x2 + x2"


def test_parse_round_trip():
    text = "x1^6 + 3*x1^5*x2 + 7*x1^4*x2^2 - x2 + 4"
    assert str(parse(text, 2)) == text


def test_substitute_eliminates_variable():
    x1, x2, x3 = MultiPoly.gens(3)
    p = x1 * x1 + x2 * x2 + x3 * x3 + x1 * x2 + x1 * x3 + x2 * x3
    r = substitute(p, 2, -x1 - x2)
    assert r.nvars == 2
    assert str(r) == "x1^2 + x1*x2 + x2^2"


def test_exact_divide_and_failure():
    x1, x2 = MultiPoly.gens(2)
    a, b = x1 + x2, x1 * x1 - x2
    assert exact_divide(a * b, b) == a
    with pytest.raises(NotDivisible):
        exact_divide(a * b + 1, b)


def test_homogeneous_degree():
    x1, x2 = MultiPoly.gens(2)
    assert homogeneous_degree(x1**3 + x1 * x2 * x2) == 3


def test_partial_evaluate_keeps_free_variables():
    F = gf.make_field(7)
    x1, x2, x3 = MultiPoly.gens(3)
    p = x1 * x2 + x3 * x3 - x1
    rest = partial_evaluate(p, {2: F(3)}, F)
    assert {k: int(v) for k, v in rest.items()} == {(1, 1): 1, (1, 0): 6, (0, 0): 2}


@settings(max_examples=100, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == MultiPoly.zero(3)


@settings(max_examples=100, deadline=None)
@given(polys(), st.lists(st.integers(0, 10), min_size=3, max_size=3))
def test_parse_inverts_print_and_evaluation_agrees(p, point):
    assert parse(str(p), 3) == p
    F = gf.make_field(11)
    pt = [F(v) for v in point]
    single = evaluate(p, pt)
    many = evaluate_many(p, np.array([[x.code for x in pt]]), F)
    assert many[0] == single.code


@settings(max_examples=100, deadline=None)
@given(polys(max_terms=4), polys(max_terms=3))
def test_product_divides_back(a, b):
    if b.is_zero():
        return
    assert exact_divide(a * b, b) == a
