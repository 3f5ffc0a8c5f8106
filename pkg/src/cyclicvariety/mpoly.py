"""Sparse multivariate polynomials with exact integer coefficients.

Variables are named ``x1 .. xN``; API indices are 0-based, so index 2 is ``x3``.
Terms are kept in a dict from exponent tuples to nonzero ints.  Canonical order
is graded lexicographic (total degree first, then ``x1 > x2 > ...``), highest
first.
"""

from __future__ import annotations

import heapq
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    IndexOutOfRange,
    NotDivisible,
    NotHomogeneous,
    ZeroPolynomial,
)
from .gf import Field, FieldArrays, FieldElement


def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class MultiPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ArityMismatch(f"exponent {exps} does not have {nvars} entries")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, nvars: int, c: int) -> "MultiPoly":
        return cls._raw(nvars, {(0,) * nvars: int(c)} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "MultiPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise IndexOutOfRange(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): 1})

    @classmethod
    def gens(cls, nvars: int) -> list["MultiPoly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "MultiPoly":
        return parse(text, nvars)

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        exps = max(self._terms, key=_grlex_key)
        return exps, self._terms[exps]

    def total_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(sum(e) for e in self._terms)

    def content(self) -> int:
        return math.gcd(*self._terms.values()) if self._terms else 0

    def normalized(self) -> "MultiPoly":
        """Divide out the content and make the leading coefficient positive."""
        if not self._terms:
            return self
        g = self.content()
        if self.leading_term()[1] < 0:
            g = -g
        return MultiPoly._raw(self.nvars, {e: c // g for e, c in self._terms.items()})

    def variables_used(self) -> set[int]:
        return {i for exps in self._terms for i, e in enumerate(exps) if e}

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer)):
            return MultiPoly.constant(self.nvars, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scalar_mul(self, c: int) -> "MultiPoly":
        c = int(c)
        if c == 0:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scalar_mul(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = MultiPoly.one(self.nvars), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, np.integer)):
            return self == MultiPoly.constant(self.nvars, int(other))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Rename variable i to perm[i]."""
        out = {}
        for exps, c in self._terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exps):
                new[perm[i]] = e
            out[tuple(new)] = c
        return MultiPoly._raw(self.nvars, out)

    # -- printing ------------------------------------------------------------
    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {to_text(self)!r})"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [[list(e), c] for e, c in self.sorted_terms()],
            "text": to_text(self),
        }

    def binary_coefficients(self) -> list[int]:
        """Coefficients of a homogeneous bivariate form, x1^d first."""
        if self.nvars != 2:
            raise ArityMismatch("binary_coefficients needs 2 variables")
        d = homogeneous_degree(self)
        return [self._terms.get((d - i, i), 0) for i in range(d + 1)]


# -- text form ----------------------------------------------------------------


def _monomial_text(exps: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def to_text(poly: MultiPoly) -> str:
    if poly.is_zero():
        return "0"
    out = []
    for k, (exps, c) in enumerate(poly.sorted_terms()):
        mono = _monomial_text(exps)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TERM = re.compile(r"([+-]?)([^+-]+)")
_FACTOR = re.compile(r"^(?:(\d+)|x(\d+)(?:\^(\d+))?)$")


def parse(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse the canonical text form (also tolerates reordered terms)."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial text")
    raw_terms = []
    pos = 0
    for match in _TERM.finditer(s):
        if match.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff = sign
        exps: dict[int, int] = {}
        for factor in match.group(2).split("*"):
            fm = _FACTOR.match(factor)
            if not fm:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            if fm.group(1) is not None:
                coeff *= int(fm.group(1))
            else:
                idx = int(fm.group(2))
                if idx < 1:
                    raise ValueError("variables are numbered from x1")
                exps[idx] = exps.get(idx, 0) + int(fm.group(3) or 1)
        raw_terms.append((coeff, exps))
    if pos != len(s):
        raise ValueError(f"cannot parse {text!r}")
    used = max((max(e) for _, e in raw_terms if e), default=0)
    if nvars is None:
        nvars = used
    elif used > nvars:
        raise ArityMismatch(f"{text!r} uses x{used} but nvars={nvars}")
    terms: dict = {}
    for coeff, exps in raw_terms:
        key = tuple(exps.get(i + 1, 0) for i in range(nvars))
        terms[key] = terms.get(key, 0) + coeff
    return MultiPoly(nvars, terms)


# -- operations ---------------------------------------------------------------


def poly_arith(a: MultiPoly, b, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        if not isinstance(b, MultiPoly):
            raise TypeError("mul takes a polynomial; use scalar_mul for integers")
        return a * b
    if op == "scalar_mul":
        return a.scalar_mul(b)
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: MultiPoly, var_index: int, replacement: MultiPoly) -> MultiPoly:
    """Replace variable ``var_index`` (0-based) by ``replacement``.

    When the replacement does not mention the substituted variable, that
    variable is eliminated and the result lives in ``nvars - 1`` variables.
    """
    if replacement.nvars != p.nvars:
        raise ArityMismatch("replacement must have the same number of variables")
    if not 0 <= var_index < p.nvars:
        raise IndexOutOfRange(f"variable index {var_index} out of range")
    powers = {0: MultiPoly.one(p.nvars)}
    acc: dict = {}
    for exps, c in p.items():
        e = exps[var_index]
        if e not in powers:
            powers[e] = replacement ** e
        rest = exps[:var_index] + (0,) + exps[var_index + 1 :]
        for re_, rc in powers[e].items():
            key = tuple(a + b for a, b in zip(rest, re_))
            acc[key] = acc.get(key, 0) + c * rc
    out = MultiPoly._raw(p.nvars, {k: v for k, v in acc.items() if v})
    if var_index in replacement.variables_used():
        return out
    return MultiPoly._raw(
        p.nvars - 1, {e[:var_index] + e[var_index + 1 :]: c for e, c in out.items()}
    )


def evaluate(p: MultiPoly, point: Sequence[FieldElement]) -> FieldElement:
    if len(point) != p.nvars:
        raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    if not point:
        raise ArityMismatch("cannot infer the field from an empty point")
    field = point[0].field
    pts = [field(x) for x in point]
    cache: list[dict[int, FieldElement]] = [{0: field.one, 1: x} for x in pts]
    total = field.zero
    for exps, c in p.items():
        term = field(c)
        for i, e in enumerate(exps):
            if e:
                if e not in cache[i]:
                    cache[i][e] = pts[i] ** e
                term = term * cache[i][e]
        total = total + term
    return total


def evaluate_many(p: MultiPoly, points: np.ndarray, field: Field | FieldArrays) -> np.ndarray:
    """Evaluate at many points at once; ``points`` is an (N, nvars) array of codes."""
    fa = field if isinstance(field, FieldArrays) else field.vec
    points = np.asarray(points, dtype=np.int64)
    if points.ndim != 2 or points.shape[1] != p.nvars:
        raise ArityMismatch("points must have shape (N, nvars)")
    n = points.shape[0]
    if p.is_zero():
        return np.zeros(n, dtype=np.int64)
    maxdeg = [max(e[i] for e in p._terms) for i in range(p.nvars)]
    tables = [fa.power_table(points[:, i], maxdeg[i]) for i in range(p.nvars)]
    total = np.zeros(n, dtype=np.int64)
    for exps, c in p.items():
        ce = fa.field.embed_int(c)
        if ce == 0:
            continue
        term = np.full(n, ce, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                term = fa.mul(term, tables[i][:, e])
        total = fa.add(total, term)
    return total


def _divides_mono(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _NegKey:
    """Heap wrapper giving max-first grlex order."""

    __slots__ = ("exps", "key")

    def __init__(self, exps):
        self.exps = exps
        self.key = _grlex_key(exps)

    def __lt__(self, other):
        return self.key > other.key


def exact_divide(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Quotient ``q`` with ``q * den == num`` over the integers, else NotDivisible."""
    num._check(den)
    if den.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    lt_e, lt_c = den.leading_term()
    rem = dict(num._terms)
    heap = [_NegKey(e) for e in rem]
    heapq.heapify(heap)
    quotient: dict = {}
    den_terms = list(den.items())
    while heap:
        top = heapq.heappop(heap).exps
        c = rem.get(top)
        if not c:
            continue
        if not _divides_mono(lt_e, top) or c % lt_c:
            raise NotDivisible(f"{num} is not divisible by {den}")
        qe = tuple(a - b for a, b in zip(top, lt_e))
        qc = c // lt_c
        quotient[qe] = qc
        for de, dc in den_terms:
            e = tuple(a + b for a, b in zip(qe, de))
            v = rem.get(e, 0) - qc * dc
            if v:
                if e not in rem:
                    heapq.heappush(heap, _NegKey(e))
                rem[e] = v
            else:
                rem.pop(e, None)
    return MultiPoly._raw(num.nvars, quotient)


def divides(den: MultiPoly, num: MultiPoly) -> bool:
    try:
        exact_divide(num, den)
    except NotDivisible:
        return False
    return True


def homogeneous_degree(p: MultiPoly) -> int:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    degs = {sum(e) for e in p._terms}
    if len(degs) != 1:
        raise NotHomogeneous(f"{p} is not homogeneous")
    return degs.pop()


def rational_ratio(a: MultiPoly, b: MultiPoly) -> Fraction | None:
    """The rational c with a == c*b, or None when they are not proportional."""
    a._check(b)
    if a.is_zero() or b.is_zero():
        return None
    if set(a._terms) != set(b._terms):
        return None
    e0 = next(iter(a._terms))
    ratio = Fraction(a._terms[e0], b._terms[e0])
    for e, c in a._terms.items():
        if Fraction(c, b._terms[e]) != ratio:
            return None
    return ratio


def product(polys: Iterable[MultiPoly], nvars: int) -> MultiPoly:
    out = MultiPoly.one(nvars)
    for f in polys:
        out = out * f
    return out


def partial_evaluate(
    p: MultiPoly, assignment: Mapping[int, FieldElement], field: Field
) -> dict[tuple[int, ...], FieldElement]:
    """Fix some variables to field values; return the remaining polynomial over the field.

    The result maps exponent tuples in the unassigned variables (in their
    original order) to nonzero field elements.
    """
    free = [i for i in range(p.nvars) if i not in assignment]
    cache: dict[tuple[int, int], int] = {}
    acc: dict[tuple[int, ...], int] = {}
    for exps, c in p.items():
        val = field.embed_int(c)
        if val == 0:
            continue
        for i, x in assignment.items():
            e = exps[i]
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = field.pow_code(field(x).code, e)
                val = field.mul_code(val, cache[key])
                if val == 0:
                    break
        if val == 0:
            continue
        rest = tuple(exps[i] for i in free)
        acc[rest] = field.add_code(acc.get(rest, 0), val)
    return {e: FieldElement(field, v) for e, v in acc.items() if v}
