import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclicvariety import gf
from cyclicvariety.mpoly import MultiPoly, evaluate, parse
from cyclicvariety.vandermonde import (
    ExponentSet,
    compute_fr,
    delta,
    delta_eval,
    f_degree,
    f_eval_many,
    f_poly,
    fr_poly,
    fr_remark_check,
    vandermonde,
)

# reference quotients, expanded by hand
F013 = "x1 + x2 + x3"
F014 = "x1^2 + x2^2 + x3^2 + x1*x2 + x1*x3 + x2*x3"
F015 = (
    "x1^3 + x2^3 + x3^3 + x1^2*x2 + x1*x2^2 + x1^2*x3 + x1*x3^2"
    " + x2^2*x3 + x2*x3^2 + x1*x2*x3"
)


@pytest.mark.parametrize("U, text", [((0, 1, 3), F013), ((0, 1, 4), F014), ((0, 1, 5), F015)])
def test_reference_quotients(U, text):
    assert f_poly(U) == parse(text, 3)


def test_delta_small():
    assert str(delta((0, 1))) == "-x1 + x2"
    assert f_poly((0, 1, 2)) == MultiPoly.one(3)


def test_exponent_set_validation():
    with pytest.raises(ValueError):
        ExponentSet([1, 1])
    with pytest.raises(ValueError):
        ExponentSet([-1, 2])
    assert ExponentSet.parse("4,0,1") == (0, 1, 4)


def test_fr_reference_coefficients():
    assert fr_poly(8).binary_coefficients() == [1, 3, 7, 9, 7, 3, 1]
    assert fr_poly(14).binary_coefficients() == [1, 6, 31, 100, 221, 350, 407, 350, 221, 100, 31, 6, 1]


@pytest.mark.parametrize("r", range(4, 21))
def test_fr_predicted_factors_and_residual_degree(r):
    rep = compute_fr(r)
    assert rep.failed_factors == []
    assert rep.k == rep.expected_k


def test_f11_factorization():
    check = fr_remark_check()
    assert check.holds
    assert check.scalar == 1


exponent_sets = st.sets(st.integers(0, 8), min_size=2, max_size=4).map(ExponentSet)


@settings(max_examples=100, deadline=None)
@given(exponent_sets)
def test_quotient_times_vandermonde_is_alternant(U):
    assert f_poly(U) * vandermonde(len(U)) == delta(U)


@settings(max_examples=100, deadline=None)
@given(exponent_sets, st.permutations(range(4)))
def test_symmetry_and_degree(U, perm):
    f = f_poly(U)
    perm = [i for i in perm if i < len(U)]
    assert f.permute(perm) == f
    degrees = {sum(e) for e in f.terms}
    assert degrees == {f_degree(U)}


@settings(max_examples=100, deadline=None)
@given(exponent_sets, st.data())
def test_delta_eval_antisymmetric(U, data):
    F = gf.make_field(13)
    coords = [F(data.draw(st.integers(0, 12))) for _ in U]
    i, j = 0, len(U) - 1
    swapped = list(coords)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert delta_eval(U, swapped) == -delta_eval(U, coords)


@settings(max_examples=100, deadline=None)
@given(exponent_sets, st.sampled_from([(7, 1), (2, 3), (3, 2)]), st.data())
def test_jacobi_trudi_matches_symbolic(U, pm, data):
    F = gf.make_field(*pm)
    coords = [F.from_code(data.draw(st.integers(0, F.order - 1))) for _ in U]
    fast = f_eval_many(U, np.array([[c.code for c in coords]]), F)[0]
    assert fast == evaluate(f_poly(U), coords).code
