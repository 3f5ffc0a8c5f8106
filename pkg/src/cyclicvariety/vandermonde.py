"""Generalized Vandermonde determinants and their Schur quotients.

For an exponent set ``U = {u_1 < ... < u_m}`` the alternant ``delta(U)`` is the
determinant with rows ``(x_1^u, ..., x_m^u)``.  Dividing by the ordinary
Vandermonde gives the Schur polynomial ``s_lambda`` with
``lambda_i = u_{m+1-i} - (m - i)``.  The quotient is built by the branching
rule symbolically and by Jacobi-Trudi numerically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import NotDivisible
from .gf import Field, FieldArrays, FieldElement
from .mpoly import MultiPoly, exact_divide, product, rational_ratio, substitute


class ExponentSet(tuple):
    """Strictly increasing tuple of distinct non-negative integers."""

    def __new__(cls, elems: Iterable[int]):
        vals = sorted(int(e) for e in elems)
        if not vals:
            raise ValueError("exponent set must be nonempty")
        if vals[0] < 0:
            raise ValueError("exponents must be non-negative")
        if len(set(vals)) != len(vals):
            raise ValueError(f"repeated exponent in {vals}")
        return super().__new__(cls, vals)

    @classmethod
    def parse(cls, text: str) -> "ExponentSet":
        return cls(int(s) for s in text.replace(" ", "").split(",") if s)

    def shift(self, c: int) -> "ExponentSet":
        return ExponentSet(e + c for e in self)

    def subsets(self, t: int) -> list["ExponentSet"]:
        return [ExponentSet(c) for c in itertools.combinations(self, t)]

    def partition(self) -> tuple[int, ...]:
        m = len(self)
        lam = tuple(self[m - 1 - i] - (m - 1 - i) for i in range(m))
        return tuple(x for x in lam if x)

    def __str__(self):
        return "{" + ",".join(map(str, self)) + "}"

    def __repr__(self):
        return f"ExponentSet({list(self)})"


def _as_set(U) -> ExponentSet:
    return U if isinstance(U, ExponentSet) else ExponentSet(U)


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def delta(U) -> MultiPoly:
    """The alternant det(x_j^{u_i}) as an exact polynomial in |U| variables."""
    U = _as_set(U)
    m = len(U)
    terms = {}
    for perm in itertools.permutations(range(m)):
        exps = [0] * m
        for row, col in enumerate(perm):
            exps[col] = U[row]
        terms[tuple(exps)] = _perm_sign(perm)
    return MultiPoly(m, terms)


def vandermonde(m: int) -> MultiPoly:
    return delta(range(m))


@lru_cache(maxsize=8192)
def _schur_terms(lam: tuple[int, ...], nvars: int) -> tuple:
    if len(lam) > nvars:
        return ()
    if nvars == 0:
        return (((), 1),) if not lam else ()
    if not lam:
        return (((0,) * nvars, 1),)
    padded = lam + (0,) * (nvars - len(lam))
    size = sum(lam)
    out: dict = {}
    ranges = [range(padded[i + 1], padded[i] + 1) for i in range(nvars - 1)]
    for mu in itertools.product(*ranges):
        mu_key = tuple(x for x in mu if x)
        k = size - sum(mu)
        for exps, c in _schur_terms(mu_key, nvars - 1):
            key = exps + (k,)
            out[key] = out.get(key, 0) + c
    return tuple(out.items())


def schur(lam: Sequence[int], nvars: int) -> MultiPoly:
    """Schur polynomial s_lambda(x_1..x_nvars) by the branching rule."""
    key = tuple(x for x in lam if x)
    if any(a < b for a, b in zip(key, key[1:])):
        raise ValueError(f"{lam} is not a partition")
    return MultiPoly(nvars, dict(_schur_terms(key, nvars)))


def f_poly(U) -> MultiPoly:
    """delta(U) / vandermonde(|U|), built combinatorially."""
    U = _as_set(U)
    return schur(U.partition(), len(U))


def f_degree(U) -> int:
    U = _as_set(U)
    m = len(U)
    return sum(U) - m * (m - 1) // 2


def delta_eval(U, coords: Sequence[FieldElement]) -> FieldElement:
    """Numeric value of delta(U) at a point, by elimination over the field."""
    U = _as_set(U)
    if len(coords) != len(U):
        raise ValueError("need one coordinate per exponent")
    fld = coords[0].field
    coords = [fld(c) for c in coords]
    rows = [[c**u for c in coords] for u in U]
    return linalg.det(rows)


def complete_homogeneous_many(points: np.ndarray, max_degree: int, fa: FieldArrays) -> np.ndarray:
    """h_0..h_max_degree of each row of ``points`` (codes), shape (N, max_degree+1)."""
    points = np.asarray(points, dtype=np.int64)
    n = points.shape[0]
    h = np.zeros((n, max_degree + 1), dtype=np.int64)
    h[:, 0] = fa.field.embed_int(1)
    for j in range(points.shape[1]):
        x = points[:, j]
        for k in range(1, max_degree + 1):
            h[:, k] = fa.add(h[:, k], fa.mul(x, h[:, k - 1]))
    return h


def schur_eval_many(lam: Sequence[int], points: np.ndarray, field: Field | FieldArrays,
                    h: np.ndarray | None = None) -> np.ndarray:
    """s_lambda at each row of ``points`` via the Jacobi-Trudi determinant."""
    fa = field if isinstance(field, FieldArrays) else field.vec
    points = np.asarray(points, dtype=np.int64)
    lam = tuple(x for x in lam if x)
    n, nvars = points.shape
    if len(lam) > nvars:
        return np.zeros(n, dtype=np.int64)
    if not lam:
        return np.full(n, fa.field.embed_int(1), dtype=np.int64)
    ell = len(lam)
    top = lam[0] + ell - 1
    if h is None or h.shape[1] <= top:
        h = complete_homogeneous_many(points, top, fa)
    idx = np.array([[lam[i] - i + j for j in range(ell)] for i in range(ell)])
    mats = h[:, np.clip(idx, 0, None)]
    mats = np.where(idx[None] >= 0, mats, 0)
    if ell == 1:
        return mats[:, 0, 0]
    return linalg.batched_det(mats, fa)


def f_eval_many(U, points: np.ndarray, field: Field | FieldArrays, h: np.ndarray | None = None) -> np.ndarray:
    U = _as_set(U)
    return schur_eval_many(U.partition(), points, field, h)


# -- the bivariate forms F_r ------------------------------------------------


def _x(nvars: int, i: int) -> MultiPoly:
    return MultiPoly.var(nvars, i)


def eliminate_x3(p: MultiPoly) -> MultiPoly:
    """Substitute x3 := -x1 - x2 in a 3-variable polynomial."""
    return substitute(p, 2, -_x(3, 0) - _x(3, 1))


def cyclotomic_form() -> MultiPoly:
    x1, x2 = _x(2, 0), _x(2, 1)
    return x1 * x1 + x1 * x2 + x2 * x2


def predicted_fr_factors(r: int) -> list[MultiPoly]:
    x1, x2 = _x(2, 0), _x(2, 1)
    out = []
    if r % 2:
        out += [x1, x2, x1 + x2]
    if r % 3 == 0:
        out.append(cyclotomic_form() ** 2)
    elif r % 3 == 1:
        out.append(cyclotomic_form())
    return out


def predicted_residual_k(r: int) -> int:
    return (r - 9) // 6 if r % 6 == 3 else (r - 2) // 6


@dataclass
class FrReport:
    r: int
    F_r: MultiPoly
    predicted_factors: list[MultiPoly]
    residual: MultiPoly
    k: int | None
    expected_k: int
    failed_factors: list[MultiPoly] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed_factors and self.k == self.expected_k

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "F_r": self.F_r.binary_coefficients(),
            "F_r_text": str(self.F_r),
            "degree": self.F_r.total_degree(),
            "predicted_factors": [str(f) for f in self.predicted_factors],
            "failed_factors": [str(f) for f in self.failed_factors],
            "residual": self.residual.binary_coefficients(),
            "residual_text": str(self.residual),
            "k": self.k,
            "expected_k": self.expected_k,
            "ok": self.ok,
        }


def fr_poly(r: int) -> MultiPoly:
    if r < 4:
        raise ValueError("F_r is defined for r >= 4")
    return eliminate_x3(f_poly((0, 1, r))).normalized()


def compute_fr(r: int) -> FrReport:
    """F_r with the predicted factors divided out.

    A predicted factor that does not divide is recorded in ``failed_factors``
    rather than raised.
    """
    F = fr_poly(r)
    predicted = predicted_fr_factors(r)
    residual = F
    failed = []
    for fac in predicted:
        try:
            residual = exact_divide(residual, fac)
        except NotDivisible:
            failed.append(fac)
    deg = residual.total_degree()
    k = deg // 6 if deg % 6 == 0 else None
    return FrReport(r, F, predicted, residual, k, predicted_residual_k(r), failed)


def _remark_factors() -> list[MultiPoly]:
    x1, x2 = _x(2, 0), _x(2, 1)
    return [
        x1,
        x2,
        x1 + x2,
        x1 * x1 + x1 * x2 + 2 * x2 * x2,
        2 * x1 * x1 + x1 * x2 + x2 * x2,
        2 * x1 * x1 + 3 * x1 * x2 + 2 * x2 * x2,
    ]


@dataclass
class RemarkCheck:
    holds: bool
    divides: dict[str, bool]
    scalar: Fraction | None
    F_11: MultiPoly

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "divides": self.divides,
            "scalar": None if self.scalar is None else str(self.scalar),
            "F_11": str(self.F_11),
        }


def fr_remark_check() -> RemarkCheck:
    F11 = fr_poly(11)
    factors = _remark_factors()
    divides = {}
    for fac in factors:
        try:
            exact_divide(F11, fac)
            divides[str(fac)] = True
        except NotDivisible:
            divides[str(fac)] = False
    scalar = rational_ratio(F11, product(factors, 2))
    return RemarkCheck(all(divides.values()) and scalar is not None, divides, scalar, F11)


def verify_fr_remark() -> bool:
    return fr_remark_check().holds
