"""Cyclic codes and minimum-distance bounds: BCH, Hartmann-Tzeng, the variety
certificate, and two exact oracles (certificates on the full defining set,
and brute force over messages)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable

import numpy as np

from .config import get_budgets
from .errors import BudgetExceeded, NoNonzeroCodewords, NotClosed, NotCoprime, NotSubset
from .gf import Field, FieldElement, prime_power, primitive_root_of_unity, subfield_codes
from .variety import Certificate, certify_roots_of_unity, root_of_unity_field
from .vandermonde import ExponentSet


def cyclotomic_cosets(n: int, q: int) -> list[tuple[int, ...]]:
    """Orbits of i -> q*i mod n, each sorted, ordered by smallest element."""
    if math.gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")
    seen: set[int] = set()
    cosets = []
    for start in range(n):
        if start in seen:
            continue
        orbit, i = [], start
        while i not in orbit:
            orbit.append(i)
            i = i * q % n
        seen.update(orbit)
        cosets.append(tuple(sorted(orbit)))
    return cosets


def coset_union(n: int, q: int, reps: Iterable[int]) -> tuple[int, ...]:
    """Defining set generated by coset representatives."""
    wanted = {r % n for r in reps}
    return tuple(sorted(i for c in cyclotomic_cosets(n, q) if wanted & set(c) for i in c))


@dataclass
class CyclicCode:
    n: int
    q: int
    S: tuple[int, ...]
    field: Field
    alpha: FieldElement
    g: list[FieldElement]  # low degree first, coefficients in the copy of GF(q)

    @property
    def k(self) -> int:
        return self.n - len(self.S)

    @property
    def s(self) -> int:
        return self.field.m // prime_power(self.q)[1]

    def generator_coefficients(self) -> list:
        """Coefficients of g as ints (prime q) or field-element strings."""
        if prime_power(self.q)[1] == 1:
            w = self.field.p ** (self.field.m - 1)
            return [c.code // w for c in self.g]
        return [str(c) for c in self.g]

    def describe(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "k": self.k,
            "S": list(self.S),
            "field": self.field.descriptor,
            "alpha": str(self.alpha),
            "g": self.generator_coefficients(),
        }


def _poly_mul_field(a: list[int], b: list[int], F: Field) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add_code(out[i + j], F.mul_code(x, y))
    return out


def code_from_defining_set(n: int, q: int, S: Iterable[int]) -> CyclicCode:
    """The cyclic code with generator prod_{i in S} (x - alpha^i)."""
    if math.gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")
    S = tuple(sorted({int(i) % n for i in S}))
    Sset = set(S)
    if any(i * q % n not in Sset for i in S):
        raise NotClosed(f"{list(S)} is not a union of {q}-cyclotomic cosets mod {n}")
    F, _ = root_of_unity_field(q, n)
    alpha = primitive_root_of_unity(F, n)
    one = F.embed_int(1)
    g = [one]
    for i in S:
        root = F.pow_code(alpha.code, i)
        g = _poly_mul_field(g, [F.neg_code(root), one], F)
    for c in g:
        if F.pow_code(c, q) != c:
            raise AssertionError(f"generator coefficient {F.from_code(c)} is not in GF({q})")
    return CyclicCode(n, q, S, F, alpha, [F.from_code(c) for c in g])


def code_from_cosets(n: int, q: int, reps: Iterable[int]) -> CyclicCode:
    return code_from_defining_set(n, q, coset_union(n, q, reps))


# -- bounds -------------------------------------------------------------------


def _run_lengths(S: Iterable[int], n: int) -> np.ndarray:
    """runs[x] = number of consecutive residues x, x+1, ... in S (capped at n)."""
    member = np.zeros(n, dtype=bool)
    member[[i % n for i in S]] = True
    runs = np.zeros(n, dtype=np.int64)
    if member.all():
        runs[:] = n
        return runs
    # walk backwards twice around the circle
    length = 0
    for x in range(2 * n - 1, -1, -1):
        length = length + 1 if member[x % n] else 0
        runs[x % n] = length
    return np.minimum(runs, n)


def bch_bound(S: Iterable[int], n: int) -> int:
    """1 + the longest circular run of consecutive residues in S."""
    runs = _run_lengths(S, n)
    return 1 + int(runs.max()) if runs.size else 1


def ht_bound(S: Iterable[int], n: int) -> int:
    """Best Hartmann-Tzeng bound: max t+k+1 over translates r + j*m + i with
    0 <= i < t, 0 <= j <= k, gcd(m, n) = 1, all contained in S."""
    S = list(S)
    runs = _run_lengths(S, n)
    best = 1 + int(runs.max()) if runs.size else 1
    r = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    for m in range(1, n):
        if math.gcd(m, n) != 1:
            continue
        lengths = runs[(r + j * m) % n]
        prefix_min = np.minimum.accumulate(lengths, axis=1)
        value = np.where(prefix_min > 0, prefix_min + j + 1, 0)
        best = max(best, int(value.max()))
    return best


@dataclass
class DistanceResult:
    value: int
    exact: bool

    def __str__(self):
        return f"{'Exact' if self.exact else 'LowerBound'}({self.value})"

    def to_dict(self) -> dict:
        return {"kind": "exact" if self.exact else "lower_bound", "value": self.value}


def variety_bound(code: CyclicCode, T, t: int, **kwargs) -> Certificate:
    """Certificate for d > t from T contained in the defining set."""
    T = T if isinstance(T, ExponentSet) else ExponentSet(T)
    if not {u % code.n for u in T} <= set(code.S):
        raise NotSubset(f"{list(T)} is not contained in the defining set")
    return certify_roots_of_unity(T, t, code.q, code.n, **kwargs)


def _certificate_distance(code: CyclicCode, budget_t: int | None, **kwargs):
    if code.k == 0:
        raise NoNonzeroCodewords("the code is zero")
    certs: list[Certificate] = []
    if not code.S:
        return DistanceResult(1, True), certs
    T = ExponentSet(code.S)
    t_max = len(code.S) if budget_t is None else min(budget_t, len(code.S))
    for t in range(1, t_max + 1):
        cert = certify_roots_of_unity(T, t, code.q, code.n, **kwargs)
        certs.append(cert)
        if not cert.passed:
            return DistanceResult(t, True), certs
    if t_max == len(code.S):
        # every t <= |S| passes, and d <= n - k + 1 = |S| + 1
        return DistanceResult(len(code.S) + 1, True), certs
    return DistanceResult(t_max + 1, False), certs


def exact_distance_by_certificates(code: CyclicCode, budget_t: int | None = None, **kwargs) -> DistanceResult:
    """Smallest t whose certificate on T = S finds a witness; that t is d."""
    return _certificate_distance(code, budget_t, **kwargs)[0]


def generator_matrix(code: CyclicCode) -> np.ndarray:
    """k x n matrix of element codes with rows x^i g(x)."""
    G = np.zeros((code.k, code.n), dtype=np.int64)
    gc = [c.code for c in code.g]
    for i in range(code.k):
        G[i, i : i + len(gc)] = gc
    return G


def _span_table(rows: np.ndarray, symbols: np.ndarray, fa) -> np.ndarray:
    """All combinations sum_i c_i * rows[i], c_i in symbols; index is base-q with row 0 least significant."""
    table = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for row in rows:
        multiples = fa.mul(symbols[:, None], row[None, :])  # (q, n)
        table = fa.add(multiples[None, :, :], table[:, None, :]).reshape(-1, rows.shape[1])
    return table


def brute_force_distance(code: CyclicCode, budget: int | None = None, chunk: int = 1 << 16) -> int:
    """Minimum Hamming weight over all nonzero codewords."""
    if code.k == 0:
        raise NoNonzeroCodewords("the code is zero")
    limit = get_budgets().messages if budget is None else budget
    total = code.q**code.k
    if total > limit:
        raise BudgetExceeded(f"{total} messages exceed message budget {limit}")
    fa = code.field.vec
    G = generator_matrix(code)
    symbols = np.array(subfield_codes(code.field, code.q), dtype=np.int64)
    # meet in the middle: codeword = low[a] + high[b]
    k_lo = code.k // 2
    low = _span_table(G[:k_lo], symbols, fa)
    high = _span_table(G[k_lo:], symbols, fa)
    step = max(1, chunk // low.shape[0])
    best = code.n
    for b in range(0, high.shape[0], step):
        words = fa.add(high[b : b + step, None, :], low[None, :, :])
        weights = (words != 0).sum(axis=2)
        if b == 0:
            weights[0, 0] = code.n + 1  # the zero message
        best = min(best, int(weights.min()))
        if best == 1:
            break
    return best


@dataclass
class BoundReport:
    code: CyclicCode
    bch: int
    ht: int
    variety: DistanceResult | None
    certificates: list[Certificate] = dc_field(default_factory=list)
    brute_force: int | None = None
    T: ExponentSet | None = None

    def to_dict(self) -> dict:
        return {
            "code": self.code.describe(),
            "bch": self.bch,
            "ht": self.ht,
            "variety": None if self.variety is None else self.variety.to_dict(),
            "variety_T": None if self.T is None else list(self.T),
            "certificates": [c.to_dict() for c in self.certificates],
            "brute_force": self.brute_force,
        }


def bound_report(code: CyclicCode, *, T=None, t_max: int | None = None, brute: bool = False,
                 budget_messages: int | None = None, **kwargs) -> BoundReport:
    """BCH, HT, variety certificates and optionally the brute-force distance.

    Without ``T`` the certificates run on the whole defining set and give the
    exact distance.  With ``T`` they run for t = 1, 2, ... up to ``t_max`` (or
    |T|) and the largest passing t gives the lower bound t + 1.
    """
    bch = bch_bound(code.S, code.n)
    ht = ht_bound(code.S, code.n)
    if T is None:
        variety, certs = _certificate_distance(code, t_max, **kwargs)
        Tset = ExponentSet(code.S) if code.S else None
    else:
        Tset = T if isinstance(T, ExponentSet) else ExponentSet(T)
        certs = []
        best = 1
        for t in range(1, min(t_max or len(Tset), len(Tset), code.n) + 1):
            cert = variety_bound(code, Tset, t, **kwargs)
            certs.append(cert)
            if not cert.passed:
                break
            best = t + 1
        variety = DistanceResult(best, False)
    bf = brute_force_distance(code, budget_messages) if brute else None
    return BoundReport(code, bch, ht, variety, certs, bf, Tset)
