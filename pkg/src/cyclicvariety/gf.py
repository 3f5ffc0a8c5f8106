"""Exact finite fields GF(p^m) with deterministic construction.

Elements are stored as integer codes.  For an element with polynomial-basis
coefficients ``(c0, c1, ..., c_{m-1})`` (``c0`` the constant term) the code is
``c0*p^(m-1) + c1*p^(m-2) + ... + c_{m-1}``, so comparing codes is the same as
comparing coefficient vectors lexicographically, constant term first.  That is
the canonical order used everywhere a "smallest" element is chosen.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .config import get_budgets
from .errors import (
    BudgetExceeded,
    DivisionByZero,
    FieldMismatch,
    NoSuchRoot,
    NotCoprime,
    NotPrime,
    ZeroElement,
)

TABLE_LIMIT = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; inputs are desk-scale."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for prime, exp in factorize(n).items():
        divs = [d * prime**e for d in divs for e in range(exp + 1)]
    return sorted(divs)


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p^a``; raises NotPrime if q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    f = factorize(q)
    if len(f) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((p, a),) = f.items()
    return p, a


def multiplicative_order_mod(q: int, n: int) -> int:
    if math.gcd(q, n) != 1:
        raise NotCoprime(f"gcd({q}, {n}) != 1")
    if n == 1:
        return 1
    s, acc = 1, q % n
    while acc != 1:
        acc = acc * q % n
        s += 1
    return s


def extension_degree(q: int, n: int) -> int:
    """Least s with n | q^s - 1: the degree of F_q(alpha) over F_q."""
    return multiplicative_order_mod(q, n)


# -- polynomials over GF(p) as coefficient lists, low degree first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    m = len(f) - 1
    if m == 1:
        return True
    if f[0] == 0:
        return False
    xp = [0, 1]
    for _ in range(m // 2):
        # xp <- xp^p mod f
        acc, base, e = [1], xp, p
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, f, p)
            base = _pmulmod(base, base, f, p)
            e >>= 1
        xp = acc
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (constant term first)."""
    if m == 1:
        return (0, 1)
    # a zero constant term means x divides the candidate
    for lower in itertools.product(range(1, p), *[range(p)] * (m - 1)):
        f = list(lower) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """GF(p^m) given by a monic irreducible modulus over GF(p)."""

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if m < 1 or len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not _is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.modulus = tuple(modulus)
        self.order = p**m
        self._weights = [p ** (m - 1 - i) for i in range(m)]
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._generator: int | None = None
        self._vec: FieldArrays | None = None

    # -- identity ----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.descriptor})"

    def __reduce__(self):
        return (make_field, (self.p, self.m))

    @property
    def descriptor(self) -> str:
        return f"{self.p}^{self.m}"

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    # -- element construction ---------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, self.embed_int(int(value)))
        return self.from_coeffs(value)

    def embed_int(self, value: int) -> int:
        """Code of the image of an integer in the prime subfield."""
        return (value % self.p) * self._weights[0]

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    def from_coeffs(self, coeffs) -> "FieldElement":
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"need {self.m} residues mod {self.p}, got {coeffs}")
        return FieldElement(self, self._code(coeffs))

    def parse(self, text: str) -> "FieldElement":
        parts = [s for s in text.replace(" ", "").split(",") if s]
        if len(parts) == 1 and self.m == 1:
            return self(int(parts[0]))
        return self.from_coeffs(int(s) % self.p for s in parts)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self.embed_int(1))

    @property
    def x(self) -> "FieldElement":
        """Class of the polynomial variable (a root of the modulus)."""
        if self.m == 1:
            return self(-self.modulus[0])
        return self.from_coeffs([0, 1] + [0] * (self.m - 2))

    def elements(self):
        for code in range(self.order):
            yield FieldElement(self, code)

    # -- code level arithmetic --------------------------------------------
    def _code(self, coeffs) -> int:
        return sum(c * w for c, w in zip(coeffs, self._weights))

    def _coeffs(self, code: int) -> list[int]:
        out = [0] * self.m
        for i in range(self.m - 1, -1, -1):
            code, out[i] = divmod(code, self.p)
        return out

    def add_code(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._code((x + y) % self.p for x, y in zip(self._coeffs(a), self._coeffs(b)))

    def neg_code(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._code(-x % self.p for x in self._coeffs(a))

    def sub_code(self, a: int, b: int) -> int:
        return self.add_code(a, self.neg_code(b))

    def _mul_poly(self, a: int, b: int) -> int:
        return self._code_from_poly(_pmulmod(self._coeffs(a), self._coeffs(b), list(self.modulus), self.p))

    def _code_from_poly(self, poly: list[int]) -> int:
        return self._code(list(poly) + [0] * (self.m - len(poly)))

    def mul_code(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.order <= TABLE_LIMIT:
            self._ensure_tables()
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_poly(a, b)

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return pow(a, -1, self.p)
        if self.order <= TABLE_LIMIT:
            self._ensure_tables()
            return self._exp[-self._log[a] % (self.order - 1)]
        return self.pow_code(a, self.order - 2)

    def pow_code(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv_code(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        if a == 0:
            return self.embed_int(1) if e == 0 else 0
        if self.order <= TABLE_LIMIT:
            self._ensure_tables()
            return self._exp[self._log[a] * e % (self.order - 1)]
        result, base = self.embed_int(1), a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def _order_code(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("zero has no multiplicative order")
        order = self.order - 1
        for prime in factorize(self.order - 1):
            while order % prime == 0 and self.pow_code(a, order // prime) == self.embed_int(1):
                order //= prime
        return order

    def generator_code(self) -> int:
        """Smallest (canonical order) generator of the multiplicative group."""
        if self._generator is None:
            target = self.order - 1
            for code in range(1, self.order):
                if self._order_code_slow(code) == target:
                    self._generator = code
                    break
        return self._generator

    def _order_code_slow(self, a: int) -> int:
        # same as _order_code but never touches the tables (used to build them)
        one = self.embed_int(1)
        order = self.order - 1
        for prime in factorize(self.order - 1):
            while order % prime == 0 and self._pow_plain(a, order // prime) == one:
                order //= prime
        return order

    def _pow_plain(self, a: int, e: int) -> int:
        if self.m == 1:
            return pow(a, e, self.p)
        result, base = self.embed_int(1), a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def _ensure_tables(self) -> None:
        if self._exp is not None:
            return
        g = self.generator_code()
        exp = [0] * (self.order - 1)
        log = [0] * self.order
        acc = self.embed_int(1)
        for k in range(self.order - 1):
            exp[k] = acc
            log[acc] = k
            acc = self._mul_poly(acc, g)
        self._exp, self._log = exp, log

    @property
    def vec(self) -> "FieldArrays":
        if self._vec is None:
            self._vec = FieldArrays(self)
        return self._vec


class FieldElement:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._coeffs(self.code))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.field.embed_int(int(other))
        return NotImplemented

    def _wrap(self, code: int) -> "FieldElement":
        return FieldElement(self.field, code)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add_code(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub_code(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub_code(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul_code(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul_code(self.code, self.field.inv_code(b)))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul_code(b, self.field.inv_code(self.code)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow_code(self.code, int(e)))

    def __neg__(self):
        return self._wrap(self.field.neg_code(self.code))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv_code(self.code))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == self.field.embed_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.code))

    def __lt__(self, other: "FieldElement"):
        return self.code < self._other(other)

    def __int__(self):
        if self.field.m != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.code

    def __str__(self):
        if self.field.m == 1:
            return str(self.code)
        return ",".join(map(str, self.coeffs))

    def __repr__(self):
        return f"{self.field!r}({self})"


def arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Dispatch on an operation name: add, sub, mul, div, pow, inv, neg."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


@lru_cache(maxsize=None)
def _make_field(p: int, m: int) -> Field:
    return Field(p, m, smallest_irreducible(p, m))


def make_field(p: int, m: int = 1, budget: int | None = None) -> Field:
    """GF(p^m) with the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    limit = get_budgets().field if budget is None else budget
    if p**m > limit:
        raise BudgetExceeded(f"field size {p}^{m} exceeds budget {limit}")
    return _make_field(p, m)


def field_of_order(q: int, budget: int | None = None) -> Field:
    p, a = prime_power(q)
    return make_field(p, a, budget)


def parse_field(descriptor: str) -> Field:
    """Accept ``"p^m"`` or a plain prime power ``"q"``."""
    if "^" in descriptor:
        p, m = descriptor.split("^")
        return make_field(int(p), int(m))
    return field_of_order(int(descriptor))


def element_order(a: FieldElement) -> int:
    return a.field._order_code(a.code)


def primitive_root_of_unity(field: Field, n: int) -> FieldElement:
    """Element of exact order n with the smallest coefficient vector."""
    if n < 1 or (field.order - 1) % n:
        raise NoSuchRoot(f"{n} does not divide {field.order} - 1")
    g = field.generator_code()
    step = (field.order - 1) // n
    base = field.pow_code(g, step)
    best = None
    for j in range(n):
        if math.gcd(j, n) == 1:
            cand = field.pow_code(base, j)
            if best is None or cand < best:
                best = cand
    return FieldElement(field, best)


def subfield_codes(field: Field, q: int) -> list[int]:
    """Codes of the copy of GF(q) inside ``field``, in canonical order."""
    if (field.order - 1) % (q - 1):
        raise ValueError(f"GF({q}) is not a subfield of {field!r}")
    if q == field.order:
        return list(range(field.order))
    if q == field.p:
        return sorted(field.embed_int(c) for c in range(q))
    base = field.pow_code(field.generator_code(), (field.order - 1) // (q - 1))
    codes = {0}
    acc = field.embed_int(1)
    for _ in range(q - 1):
        codes.add(acc)
        acc = field.mul_code(acc, base)
    return sorted(codes)


class FieldArrays:
    """Element-wise arithmetic on numpy arrays of element codes."""

    def __init__(self, field: Field):
        self.field = field
        self.p = field.p
        self.m = field.m
        self.order = field.order
        self._weights = np.array([field.p ** (field.m - 1 - i) for i in range(field.m)], dtype=np.int64)
        self._exp = self._log = None
        if self.m > 1 and self.order <= TABLE_LIMIT:
            field._ensure_tables()
            self._exp = np.array(field._exp + field._exp, dtype=np.int64)
            self._log = np.array(field._log, dtype=np.int64)
        self._mod = np.array(field.modulus[:-1], dtype=np.int64)

    def asarray(self, values) -> np.ndarray:
        return np.asarray(values, dtype=np.int64)

    def digits(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._weights) % self.p

    def undigits(self, d: np.ndarray) -> np.ndarray:
        return (d * self._weights).sum(axis=-1)

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.undigits((self.digits(a) + self.digits(b)) % self.p)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.undigits(-self.digits(a) % self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return a * b % self.p
        if self._exp is not None:
            a, b = np.broadcast_arrays(a, b)
            out = self._exp[self._log[a] + self._log[b]]
            return np.where((a == 0) | (b == 0), 0, out)
        if self.p == 2:
            return self._mul_binary(a, b)
        return self._mul_digits(a, b)

    def _mul_binary(self, a, b):
        # bit (m-1-i) of a code holds the coefficient of x^i; Horner in x
        a, b = np.broadcast_arrays(a, b)
        m = self.m
        low = int(self.field._code_from_poly(list(self.field.modulus[:-1])))
        acc = np.zeros(a.shape, dtype=np.int64)
        for i in range(m - 1, -1, -1):
            carry = acc & 1
            acc = (acc >> 1) ^ (carry * low)
            acc ^= np.where((b >> (m - 1 - i)) & 1, a, 0)
        return acc

    def _mul_digits(self, a, b):
        a, b = np.broadcast_arrays(a, b)
        da, db = self.digits(a), self.digits(b)
        m, p = self.m, self.p
        prod = np.zeros(a.shape + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            prod[..., i : i + m] += da[..., i : i + 1] * db
            prod[..., i : i + m] %= p
        for deg in range(2 * m - 2, m - 1, -1):
            c = prod[..., deg : deg + 1]
            prod[..., deg - m : deg] = (prod[..., deg - m : deg] - c * self._mod) % p
        return self.undigits(prod[..., :m])

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            result = np.ones_like(a)
            base = a.copy()
            while e:
                if e & 1:
                    result = result * base % self.p
                base = base * base % self.p
                e >>= 1
            return result
        if self._exp is not None:
            out = self._exp[(self._log[a] * e) % (self.order - 1)]
            return np.where(a == 0, self.field.embed_int(1) if e == 0 else 0, out)
        result = np.full_like(a, self.field.embed_int(1))
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return self.pow(a, self.p - 2)
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def inv_nonzero(self, a):
        """Inverse where a != 0, zero elsewhere."""
        a = np.asarray(a, dtype=np.int64)
        safe = np.where(a == 0, self.field.embed_int(1), a)
        return np.where(a == 0, 0, self.inv(safe))

    def embed_ints(self, values):
        values = np.asarray(values, dtype=np.int64) % self.p
        return values * int(self._weights[0])

    def power_table(self, a, max_exp: int) -> np.ndarray:
        """Array of shape a.shape + (max_exp+1,) with a**k, k = 0..max_exp."""
        a = np.asarray(a, dtype=np.int64)
        out = np.empty(a.shape + (max_exp + 1,), dtype=np.int64)
        out[..., 0] = self.field.embed_int(1)
        for k in range(1, max_exp + 1):
            out[..., k] = self.mul(out[..., k - 1], a)
        return out
