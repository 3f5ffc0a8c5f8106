"""The varieties V(T, t): defining equations, points over finite fields, and
the root-of-unity certificate for minimum-distance bounds.

Two evaluation paths are used on purpose.  Point enumeration evaluates the
quotients f[U] (Jacobi-Trudi, or the expanded polynomial on request), because
points with repeated or zero coordinates make every alternant vanish.  The
certificate only looks at tuples of distinct powers of a root of unity, where
the Vandermonde is nonzero, so it can test the rank of the alternant matrix
directly.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg
from .config import get_budgets
from .errors import BudgetExceeded, CardinalityError, NotCoprime
from .gf import (
    Field,
    FieldElement,
    extension_degree,
    make_field,
    prime_power,
    primitive_root_of_unity,
)
from .mpoly import MultiPoly, evaluate, evaluate_many, parse, partial_evaluate
from .vandermonde import (
    ExponentSet,
    complete_homogeneous_many,
    delta_eval,
    f_eval_many,
    f_poly,
)

CHUNK = 1 << 15


def _as_set(T) -> ExponentSet:
    return T if isinstance(T, ExponentSet) else ExponentSet(T)


def _run_chunks(fn: Callable, jobs: Sequence, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*jobs)))


# -- projective points ---------------------------------------------------------


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[FieldElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not any(self.coords):
            raise ValueError("projective point cannot have all coordinates zero")
        lead = next(c for c in self.coords if c)
        if lead != 1:
            inv = lead.inverse()
            object.__setattr__(self, "coords", tuple(c * inv for c in self.coords))

    @classmethod
    def from_codes(cls, field: Field, codes: Iterable[int]) -> "ProjectivePoint":
        return cls(tuple(FieldElement(field, int(c)) for c in codes))

    @property
    def codes(self) -> tuple[int, ...]:
        return tuple(c.code for c in self.coords)

    def __eq__(self, other):
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.codes)

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjectivePoint{self}"


def projective_size(order: int, dim_plus_one: int) -> int:
    return (order**dim_plus_one - 1) // (order - 1)


def projective_chunk(field: Field, t: int, start: int, stop: int) -> np.ndarray:
    """Canonical points of P^{t-1}(field) with indices in [start, stop), as codes.

    Points are grouped by the position of their leading 1; inside a group the
    free trailing coordinates run through all codes, last coordinate fastest.
    """
    Q = field.order
    one = field.embed_int(1)
    out = []
    offset = 0
    for lead in range(t):
        free = t - 1 - lead
        size = Q**free
        lo, hi = max(start, offset), min(stop, offset + size)
        if lo < hi:
            idx = np.arange(lo - offset, hi - offset, dtype=np.int64)
            block = np.zeros((hi - lo, t), dtype=np.int64)
            block[:, lead] = one
            for j in range(t - 1, lead, -1):
                idx, block[:, j] = np.divmod(idx, Q)
            out.append(block)
        offset += size
    if not out:
        return np.zeros((0, t), dtype=np.int64)
    return np.concatenate(out)


def all_projective_points(field: Field, t: int) -> np.ndarray:
    return projective_chunk(field, t, 0, projective_size(field.order, t))


# -- defining equations --------------------------------------------------------


def defining_sets(T, t: int) -> list[ExponentSet]:
    T = _as_set(T)
    if t > len(T):
        raise CardinalityError(f"t = {t} exceeds |T| = {len(T)}")
    if t < 1:
        raise CardinalityError("t must be positive")
    return T.subsets(t)


def defining_polys(T, t: int) -> list[MultiPoly]:
    """f[U] for every t-subset U of T, in lexicographic order of U."""
    seen, out = set(), []
    for U in defining_sets(T, t):
        f = f_poly(U)
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def vanishing_mask(T, t: int, points: np.ndarray, field: Field, method: str = "jacobi-trudi") -> np.ndarray:
    """Boolean mask of the rows of ``points`` lying on V(T, t)."""
    sets = defining_sets(T, t)
    fa = field.vec
    points = np.asarray(points, dtype=np.int64)
    alive = np.ones(points.shape[0], dtype=bool)
    if method == "expanded":
        for f in defining_polys(T, t):
            idx = np.nonzero(alive)[0]
            if idx.size == 0:
                break
            alive[idx] = evaluate_many(f, points[idx], fa) == 0
        return alive
    if method != "jacobi-trudi":
        raise ValueError(f"unknown evaluation method {method!r}")
    top = max(U.partition()[0] + len(U.partition()) - 1 if U.partition() else 0 for U in sets)
    h = complete_homogeneous_many(points, top, fa)
    for U in sets:
        idx = np.nonzero(alive)[0]
        if idx.size == 0:
            break
        alive[idx] = f_eval_many(U, points[idx], fa, h[idx]) == 0
    return alive


def _points_job(T, t, descriptor, start, stop, method, collect):
    p, m = descriptor
    field = make_field(p, m)
    pts = projective_chunk(field, t, start, stop)
    mask = vanishing_mask(T, t, pts, field, method)
    return pts[mask] if collect else int(mask.sum())


def _point_jobs(T, t, field, method, collect, budget):
    T = _as_set(T)
    defining_sets(T, t)
    total = projective_size(field.order, t)
    limit = get_budgets().points if budget is None else budget
    if total > limit:
        raise BudgetExceeded(f"|P^{t - 1}(GF({field.order}))| = {total} exceeds point budget {limit}")
    return [
        (tuple(T), t, (field.p, field.m), lo, min(lo + CHUNK, total), method, collect)
        for lo in range(0, total, CHUNK)
    ]


def enumerate_points(T, t: int, field: Field, *, budget: int | None = None, workers: int = 1,
                     method: str = "jacobi-trudi") -> list[ProjectivePoint]:
    """All F-rational points of V(T, t), in canonical enumeration order."""
    jobs = _point_jobs(T, t, field, method, True, budget)
    chunks = _run_chunks(_points_job, jobs, workers)
    return [ProjectivePoint.from_codes(field, row) for chunk in chunks for row in chunk]


def count_points(T, t: int, field: Field, *, budget: int | None = None, workers: int = 1,
                 method: str = "jacobi-trudi") -> int:
    jobs = _point_jobs(T, t, field, method, False, budget)
    return sum(_run_chunks(_points_job, jobs, workers))


def point_codes(T, t: int, field: Field, **kwargs) -> set[tuple[int, ...]]:
    return {p.codes for p in enumerate_points(T, t, field, **kwargs)}


def varieties_equal(T1, T2, t: int, field: Field, **kwargs) -> bool:
    """Equality of the F-rational point sets; evidence at one field, not a proof."""
    return compare_varieties(T1, T2, t, field, **kwargs).equal


@dataclass
class EqualityReport:
    T1: ExponentSet
    T2: ExponentSet
    t: int
    field: str
    count1: int
    count2: int
    only_in_first: int
    only_in_second: int

    @property
    def equal(self) -> bool:
        return self.only_in_first == 0 and self.only_in_second == 0

    def to_dict(self) -> dict:
        return {
            "T1": list(self.T1),
            "T2": list(self.T2),
            "t": self.t,
            "field": self.field,
            "count1": self.count1,
            "count2": self.count2,
            "only_in_first": self.only_in_first,
            "only_in_second": self.only_in_second,
            "equal": self.equal,
            "evidence": f"point sets compared over GF({self.field}) only",
        }


def compare_varieties(T1, T2, t: int, field: Field, **kwargs) -> EqualityReport:
    a = point_codes(T1, t, field, **kwargs)
    b = point_codes(T2, t, field, **kwargs)
    return EqualityReport(_as_set(T1), _as_set(T2), t, field.descriptor, len(a), len(b), len(a - b), len(b - a))


# -- the root-of-unity certificate -----------------------------------------------


@dataclass
class Certificate:
    T: ExponentSet
    t: int
    n: int
    q: int
    s: int
    outcome: str
    witness: tuple[int, ...] | None
    tuples_checked: int
    alpha: str = ""

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def to_dict(self) -> dict:
        return {
            "T": list(self.T),
            "t": self.t,
            "n": self.n,
            "q": self.q,
            "s": self.s,
            "outcome": self.outcome,
            "witness": list(self.witness) if self.witness is not None else [],
            "tuples_checked": self.tuples_checked,
        }


def root_of_unity_field(q: int, n: int) -> tuple[Field, int]:
    """GF(q^s) containing a primitive n-th root of unity, and s."""
    p, a = prime_power(q)
    s = extension_degree(q, n)
    return make_field(p, a * s), s


def _rank_deficient(T: Sequence[int], n: int, tuples: np.ndarray, apow: np.ndarray, field: Field) -> np.ndarray:
    exps = (np.asarray(T, dtype=np.int64)[None, :, None] * tuples[:, None, :]) % n
    return linalg.batched_rank(apow[exps], field) < tuples.shape[1]


def _certify_job(T, n, descriptor, apow, tuples):
    field = make_field(*descriptor)
    bad = np.nonzero(_rank_deficient(T, n, tuples, apow, field))[0]
    return int(bad[0]) if bad.size else -1


def _tuple_chunks(n: int, t: int, fix_first: bool):
    if fix_first:
        source = ((0,) + c for c in itertools.combinations(range(1, n), t - 1))
    else:
        source = itertools.combinations(range(n), t)
    while True:
        block = list(itertools.islice(source, CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), t)


def certify_roots_of_unity(T, t: int, q: int, n: int, *, budget: int | None = None, workers: int = 1,
                           translation_quotient: bool = False) -> Certificate:
    """Search for t distinct powers of alpha (order n) at which every f[U] vanishes.

    ``pass`` means no such tuple exists, so every cyclic code of length n over
    GF(q) whose defining set contains T has minimum distance greater than t.
    Otherwise the first witness in lexicographic order is returned.
    """
    T = _as_set(T)
    if math.gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")
    if t < 1 or t > n:
        raise CardinalityError(f"need 1 <= t <= n, got t={t}, n={n}")
    if t > len(T):
        raise CardinalityError(f"t = {t} exceeds |T| = {len(T)}")
    field, s = root_of_unity_field(q, n)
    total = math.comb(n - 1, t - 1) if translation_quotient else math.comb(n, t)
    limit = get_budgets().tuples if budget is None else budget
    if total > limit:
        raise BudgetExceeded(f"{total} tuples exceed tuple budget {limit}")
    alpha = primitive_root_of_unity(field, n)
    apow = field.vec.power_table(np.array([alpha.code]), n - 1)[0]
    checked = 0
    witness = None
    descriptor = (field.p, field.m)
    chunks = _tuple_chunks(n, t, translation_quotient)
    while witness is None:
        batch = list(itertools.islice(chunks, max(workers, 1)))
        if not batch:
            break
        results = _run_chunks(_certify_job, [(tuple(T), n, descriptor, apow, b) for b in batch], workers)
        for tuples, hit in zip(batch, results):
            if hit >= 0:
                witness = tuple(int(x) for x in tuples[hit])
                checked += hit + 1
                break
            checked += tuples.shape[0]
    return Certificate(
        T, t, n, q, s, "pass" if witness is None else "witness", witness, checked, str(alpha)
    )


def verify_witness(cert: Certificate) -> bool:
    """Re-check a witness through the symbolic quotients f[U] (not the rank path)."""
    if cert.witness is None:
        return False
    field, _ = root_of_unity_field(cert.q, cert.n)
    alpha = primitive_root_of_unity(field, cert.n)
    point = [alpha**i for i in cert.witness]
    for U in cert.T.subsets(cert.t):
        if evaluate(f_poly(U), point) != 0:
            return False
    return True


def all_minors_vanish(T, coords: Sequence[FieldElement]) -> bool:
    """Exhaustive-minor form of the certificate test at one tuple."""
    T = _as_set(T)
    return all(delta_eval(U, coords) == 0 for U in T.subsets(len(coords)))


def rank_test(T, coords: Sequence[FieldElement]) -> bool:
    """Fast-path form: rank of (x_j^u) over u in T is below len(coords)."""
    rows = [[c**u for c in coords] for u in _as_set(T)]
    return linalg.rank(rows) < len(coords)


# -- predicted linear subspaces --------------------------------------------------


def block_exponent_set(t: int, k: int, m: int) -> ExponentSet:
    """{j*m + i : 0 <= j <= k, 0 <= i < t}."""
    return ExponentSet(sorted({j * m + i for j in range(k + 1) for i in range(t)}))


@dataclass(frozen=True)
class LinearSubspace:
    """Free coordinates anywhere; the others proportional to (1, z^i1, ..., z^it)."""

    nvars: int
    free: tuple[int, ...]
    fixed: tuple[int, ...]
    exponents: tuple[int, ...]
    values: tuple[FieldElement, ...]

    def describe(self) -> dict:
        return {
            "free": [i + 1 for i in self.free],
            "fixed": [i + 1 for i in self.fixed],
            "root_exponents": list(self.exponents),
            "values": [str(v) for v in self.values],
        }


@dataclass
class SubspaceFamily:
    t: int
    k: int
    m: int
    field: str
    T: ExponentSet
    subspaces: list[LinearSubspace]
    expected: int
    duplicates: int
    failures: list[LinearSubspace] = dc_field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.subspaces)

    @property
    def contained(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "k": self.k,
            "m": self.m,
            "field": self.field,
            "T": list(self.T),
            "ambient_dim": self.t + self.k - 1,
            "subspace_dim": self.k - 1,
            "count": self.count,
            "expected": self.expected,
            "duplicates": self.duplicates,
            "contained": self.contained,
            "failures": [s.describe() for s in self.failures],
            "subspaces": [s.describe() for s in self.subspaces],
        }


def expected_subspace_count(t: int, k: int, m: int) -> int:
    return math.comb(t + k, k - 1) * math.perm(m - 1, t)


def _vanishes_on(poly: MultiPoly, sub: LinearSubspace, field: Field) -> bool:
    return not partial_evaluate(poly, dict(zip(sub.fixed, sub.values)), field)


def predicted_subspaces(t: int, k: int, m: int, field: Field) -> SubspaceFamily:
    """The (k-1)-dimensional linear spaces predicted inside V(T, t+k), with
    containment checked symbolically (free coordinates left as variables)."""
    if k < 1 or t < 1:
        raise ValueError("need t >= 1 and k >= 1")
    if m <= t:
        raise ValueError(f"need m > t (got m={m}, t={t})")
    zeta = primitive_root_of_unity(field, m)
    nvars = t + k
    T = block_exponent_set(t, k, m)
    zpow = [zeta**i for i in range(m)]
    seen = {}
    duplicates = 0
    for free in itertools.combinations(range(nvars), k - 1):
        fixed = tuple(i for i in range(nvars) if i not in free)
        for exps in itertools.permutations(range(1, m), t):
            full = (0,) + exps
            sub = LinearSubspace(nvars, free, fixed, full, tuple(zpow[e] for e in full))
            key = (free, tuple(v.code for v in sub.values))
            if key in seen:
                duplicates += 1
            else:
                seen[key] = sub
    subspaces = list(seen.values())
    polys = defining_polys(T, nvars)
    failures = [s for s in subspaces if not all(_vanishes_on(f, s, field) for f in polys)]
    return SubspaceFamily(t, k, m, field.descriptor, T, subspaces, expected_subspace_count(t, k, m),
                          duplicates, failures)


def on_predicted_subspace(points: np.ndarray, t: int, k: int, m: int, field: Field) -> np.ndarray:
    """Mask of points lying on some predicted subspace for (t, k, m), over the
    algebraic closure: the t+1 non-free coordinates are all zero, or all
    nonzero, pairwise distinct, with equal m-th powers."""
    fa = field.vec
    points = np.asarray(points, dtype=np.int64)
    nvars = t + k
    hit = np.zeros(points.shape[0], dtype=bool)
    for free in itertools.combinations(range(nvars), k - 1):
        fixed = [i for i in range(nvars) if i not in free]
        y = points[:, fixed]
        zero = (y == 0).all(axis=1)
        nonzero = (y != 0).all(axis=1)
        ym = fa.pow(y, m)
        same_power = (ym == ym[:, :1]).all(axis=1)
        ys = np.sort(y, axis=1)
        distinct = (ys[:, 1:] != ys[:, :-1]).all(axis=1)
        hit |= zero | (nonzero & same_power & distinct)
    return hit


# -- the {0,1,m,m+1,2m} family -----------------------------------------------------


@dataclass
class ComponentReport:
    m: int
    field: str
    points_small: int
    points_large: int
    sets_equal: bool
    component_points: int
    component_contained: bool
    on_lines: int
    unexplained: int

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "field": self.field,
            "V_0_1_m_m1_2m": self.points_small,
            "V_with_2m1": self.points_large,
            "a_sets_equal": self.sets_equal,
            "b_component_points": self.component_points,
            "b_component_contained": self.component_contained,
            "c_points_on_predicted_lines": self.on_lines,
            "c_unexplained_points": self.unexplained,
            "c_conjecture": "supported" if self.unexplained == 0 else "contradicted",
            "evidence": f"point sets over GF({self.field}) only",
        }


def component_mask(m: int, points: np.ndarray, field: Field) -> np.ndarray:
    """Points with f[{0,1,2,m}] = 0 whose last three coordinates satisfy f[{0,1,m}] = 0."""
    fa = field.vec
    if m <= 2:
        first = np.ones(points.shape[0], dtype=bool)  # {0,1,2,m} has a repeated exponent
    else:
        first = f_eval_many((0, 1, 2, m), points, fa) == 0
    second = f_eval_many((0, 1, m), points[:, 1:], fa) == 0
    return first & second


def verify_2m_component(m: int, field: Field, *, budget: int | None = None, workers: int = 1) -> ComponentReport:
    if m < 2:
        raise ValueError("need m >= 2")
    small = ExponentSet((0, 1, m, m + 1, 2 * m))
    large = ExponentSet((0, 1, m, m + 1, 2 * m, 2 * m + 1))
    a = point_codes(small, 4, field, budget=budget, workers=workers)
    b = point_codes(large, 4, field, budget=budget, workers=workers)
    pts = all_projective_points(field, 4)
    comp = pts[component_mask(m, pts, field)]
    comp_set = {tuple(int(x) for x in row) for row in comp}
    V = np.array(sorted(a), dtype=np.int64).reshape(-1, 4)
    lines = on_predicted_subspace(V, 2, 2, m, field) if V.size else np.zeros(0, dtype=bool)
    in_comp = np.array([tuple(int(x) for x in row) in comp_set for row in V], dtype=bool)
    return ComponentReport(
        m, field.descriptor, len(a), len(b), a == b, len(comp_set), comp_set <= a,
        int(lines.sum()), int((~(lines | in_comp)).sum()) if V.size else 0,
    )


# -- example 9: the genus-4 curve ---------------------------------------------------

EX9_QUADRIC = parse(
    "x1^2 + x2^2 + x3^2 + x4^2 + x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4", 4
)
EX9_CUBIC = parse(
    "x2^3 + x3^3 + x4^3 + x2^2*x3 + x2*x3^2 + x2^2*x4 + x2*x4^2 + x3*x4^2 + x3^2*x4 + x2*x3*x4", 4
)


def curve_count_ex9(field: Field, *, budget: int | None = None) -> int:
    """Number of GF(q)-points of P^3 on the quadric and the cubic of example 9."""
    total = projective_size(field.order, 4)
    limit = get_budgets().points if budget is None else budget
    if total > limit:
        raise BudgetExceeded(f"{total} points exceed point budget {limit}")
    count = 0
    fa = field.vec
    for lo in range(0, total, CHUNK):
        pts = projective_chunk(field, 4, lo, min(lo + CHUNK, total))
        mask = evaluate_many(EX9_QUADRIC, pts, fa) == 0
        pts = pts[mask]
        count += int((evaluate_many(EX9_CUBIC, pts, fa) == 0).sum())
    return count


def curve_count_report(field: Field, a_q: int | None = None, **kwargs) -> dict:
    count = curve_count_ex9(field, **kwargs)
    out = {"field": field.descriptor, "q": field.order, "count": count}
    if a_q is not None:
        predicted = field.order + 1 - 4 * a_q
        out.update({"a_q": a_q, "predicted": predicted, "matches": predicted == count})
    return out


# -- the family {0,1,3,4,6,7,9,...} -------------------------------------------------


def question_family(r: int) -> ExponentSet:
    """{0,1,3,4,6,7,...} truncated at r: all residues 0 or 1 mod 3 up to r."""
    return ExponentSet(i for i in range(r + 1) if i % 3 != 2)


def sweep_question(rmax: int, q: int, *, nmax: int = 20, count_field: Field | None = None,
                   budget_points: int | None = None, budget_tuples: int | None = None,
                   workers: int = 1) -> list[dict]:
    """Certificates (and optionally point counts) for T = {0,1,3,4,...,r}, t = |T| - 1.

    Nothing is concluded about rationality; the report just lists outcomes and
    flags witnesses found at lengths n with 3 not dividing n.
    """
    rows = []
    for r in range(4, rmax + 1):
        if r % 3 == 2:
            continue
        T = question_family(r)
        t = len(T) - 1
        row = {"r": r, "T": list(T), "t": t, "certificates": []}
        if count_field is not None:
            try:
                row["points"] = count_points(T, t, count_field, budget=budget_points, workers=workers)
            except BudgetExceeded as exc:
                row["points"] = None
                row["points_error"] = str(exc)
        flagged = []
        for n in range(max(t, max(T) + 1), nmax + 1):
            if math.gcd(n, q) != 1:
                continue
            try:
                cert = certify_roots_of_unity(T, t, q, n, budget=budget_tuples, workers=workers)
            except BudgetExceeded:
                row["certificates"].append({"n": n, "outcome": "budget"})
                continue
            row["certificates"].append({"n": n, "outcome": cert.outcome, "witness": list(cert.witness or ())})
            if cert.outcome == "witness" and n % 3:
                flagged.append(n)
        row["witness_with_3_not_dividing_n"] = flagged
        rows.append(row)
    return rows
