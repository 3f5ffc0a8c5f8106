import itertools
import math

import pytest

from cyclicvariety.codes import (
    bch_bound,
    bound_report,
    brute_force_distance,
    code_from_cosets,
    code_from_defining_set,
    coset_union,
    cyclotomic_cosets,
    exact_distance_by_certificates,
    ht_bound,
    variety_bound,
)
from cyclicvariety.errors import BudgetExceeded, NoNonzeroCodewords, NotClosed, NotCoprime, NotSubset
from cyclicvariety.variety import verify_witness

GOLAY_S = (1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18)  # nonzero squares mod 23


def closed_supersets(n, q, base):
    """All coset-closed S containing ``base``, excluding S = Z/n."""
    cosets = cyclotomic_cosets(n, q)
    need = set(coset_union(n, q, base))
    rest = [c for c in cosets if not set(c) <= need]
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            S = need.union(*map(set, extra))
            if len(S) < n:
                yield sorted(S)


def test_cosets():
    assert cyclotomic_cosets(7, 2) == [(0,), (1, 2, 4), (3, 5, 6)]
    assert cyclotomic_cosets(23, 2)[1] == GOLAY_S
    assert cyclotomic_cosets(4, 5) == [(0,), (1,), (2,), (3,)]
    with pytest.raises(NotCoprime):
        cyclotomic_cosets(6, 2)


def test_hamming_generator():
    code = code_from_defining_set(7, 2, [1, 2, 4])
    assert code.k == 4
    assert code.generator_coefficients() in ([1, 1, 0, 1], [1, 0, 1, 1])


def test_not_closed():
    with pytest.raises(NotClosed):
        code_from_defining_set(7, 2, [1, 2, 3])


def test_generator_divides_x_n_minus_1():
    code = code_from_cosets(15, 2, [1, 3])
    F = code.field
    for i in range(15):
        root = code.alpha ** i
        value = F.zero
        for c in reversed(code.g):
            value = value * root + c
        assert (value == F.zero) == (i in code.S)


@pytest.mark.parametrize(
    "S, n, expected",
    [(GOLAY_S, 23, 5), (range(7), 8, 8), ((0, 2, 4), 8, 2), ((5, 6, 0, 1), 7, 5)],
)
def test_bch(S, n, expected):
    assert bch_bound(S, n) == expected


def test_ht():
    assert ht_bound((0, 2, 4), 7) == 4  # r=0, step 2, runs of length 1
    assert ht_bound((0, 1, 3, 4), 7) >= 4
    assert ht_bound(GOLAY_S, 23) >= 5


def test_variety_bound():
    golay = code_from_defining_set(23, 2, GOLAY_S)
    assert variety_bound(golay, (1, 2, 3, 4), 4).passed
    with pytest.raises(NotSubset):
        variety_bound(golay, (0, 1), 2)
    nine = code_from_cosets(9, 2, [0, 1, 3])
    cert = variety_bound(nine, (0, 1, 3, 4), 3)
    assert cert.outcome == "witness" and verify_witness(cert)


def test_small_exact_distances():
    hamming = code_from_defining_set(7, 2, [1, 2, 4])
    assert brute_force_distance(hamming) == 3
    assert str(exact_distance_by_certificates(hamming)) == "Exact(3)"
    rep = code_from_defining_set(7, 2, range(1, 7))
    assert exact_distance_by_certificates(rep).value == 7 == brute_force_distance(rep)
    whole = code_from_defining_set(7, 2, [])
    assert exact_distance_by_certificates(whole).value == 1 == brute_force_distance(whole)


def test_zero_code():
    zero = code_from_defining_set(7, 2, range(7))
    with pytest.raises(NoNonzeroCodewords):
        brute_force_distance(zero)
    with pytest.raises(NoNonzeroCodewords):
        exact_distance_by_certificates(zero)


def test_message_budget():
    with pytest.raises(BudgetExceeded):
        brute_force_distance(code_from_defining_set(23, 2, GOLAY_S), budget=100)


def test_lower_bound_when_t_budget_runs_out():
    golay = code_from_defining_set(23, 2, GOLAY_S)
    d = exact_distance_by_certificates(golay, budget_t=3)
    assert str(d) == "LowerBound(4)"


def test_extension_alphabet():
    code = code_from_defining_set(8, 9, [1])
    assert brute_force_distance(code) == 2 == exact_distance_by_certificates(code).value


def test_bound_report_hamming():
    rep = bound_report(code_from_defining_set(7, 2, [1, 2, 4]), brute=True).to_dict()
    assert rep["bch"] == 3 and rep["brute_force"] == 3
    assert rep["variety"] == {"kind": "exact", "value": 3}
    assert rep["code"]["alpha"]


def test_bound_report_user_T():
    golay = code_from_defining_set(23, 2, GOLAY_S)
    rep = bound_report(golay, T=(1, 2, 3, 4))
    assert rep.variety.value == 5 and not rep.variety.exact


def test_example_one_corollary():
    # 3 does not divide n => d >= 4 whenever {0,1,3,4} is in S
    for n in range(5, 26, 2):
        if n % 3 == 0:
            continue
        for S in closed_supersets(n, 2, (0, 1, 3, 4)):
            code = code_from_defining_set(n, 2, S)
            assert variety_bound(code, (0, 1, 3, 4), 3).passed
            if code.q ** code.k <= 2**20:
                assert brute_force_distance(code) >= 4


@pytest.mark.parametrize("T, t, bad", [((0, 1, 2, 4, 5, 6, 8), 5, 4), ((0, 1, 3, 4, 6, 7), 5, 3)])
def test_example_six_and_seven_corollaries(T, t, bad):
    for q in (2, 3):
        for n in range(t + 1, 16):
            if math.gcd(n, q) == 1 and n % bad:
                for S in closed_supersets(n, q, T):
                    code = code_from_defining_set(n, q, S)
                    assert variety_bound(code, T, t).passed
                    assert brute_force_distance(code) > t


def test_example_eight_corollary_counterexample():
    # n = 15, q = 2: closure of {0,1,4,5,8} has a weight-4 codeword
    code = code_from_cosets(15, 2, [0, 1, 4, 5, 8])
    assert code.S == (0, 1, 2, 4, 5, 8, 10)
    assert brute_force_distance(code) == 4
    cert = variety_bound(code, (0, 1, 4, 5, 8), 4)
    assert cert.outcome == "witness" and verify_witness(cert)


@pytest.mark.xfail(strict=True, reason="fails at n=15, q=2: brute force gives d=4")
def test_example_eight_corollary_as_stated():
    for q in (2, 3):
        for n in range(5, 16):
            if math.gcd(n, q) == 1 and n % 4:
                for S in closed_supersets(n, q, (0, 1, 4, 5, 8)):
                    code = code_from_defining_set(n, q, S)
                    assert variety_bound(code, (0, 1, 4, 5, 8), 4).passed
