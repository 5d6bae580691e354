"""Exact arithmetic in GF(p^k).

Elements are polynomials over GF(p) reduced modulo a fixed monic
irreducible polynomial.  Each element also has an integer *code*, the
little-endian base-p reading of its coefficient vector, which is what the
matrix layer stores in numpy arrays.

>>> F = field_make(2, 2)
>>> x = F.gen()
>>> x * x
GF(2^2):1,1
>>> primitive_element(F) == x
True
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

DEFAULT_CAP = 2**20


class FieldError(ValueError):
    """Invalid field parameters or operands from different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient tuples low -> high, no trailing zeros

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    m = _trim(list(m))
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _trim(a)
    return a


def _monic_polys(degree: int, p: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of ``degree`` in increasing code order."""
    for code in range(p**degree):
        c = []
        for _ in range(degree):
            c.append(code % p)
            code //= p
        yield tuple(c) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = tuple(_trim(list(poly)))
    k = len(poly) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(poly, f, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) with a fixed modulus (coefficients low -> high, monic)."""

    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.k

    def __str__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def __call__(self, value) -> FieldElem:
        """Coerce an integer (reduced into the prime subfield), a coefficient
        sequence or an element.  Use :meth:`from_code` for codes."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return self.from_code(int(value) % self.p)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElem(self, tuple(coeffs))

    def from_code(self, code: int) -> FieldElem:
        c = []
        for _ in range(self.k):
            c.append(code % self.p)
            code //= self.p
        return FieldElem(self, tuple(c))

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.k)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, (1,) + (0,) * (self.k - 1))

    def gen(self) -> FieldElem:
        """The class of x (equal to 0 when k = 1, since the modulus is x)."""
        if self.k == 1:
            return self(-self.modulus[0])
        return self((0, 1))

    def elements(self) -> Iterator[FieldElem]:
        for code in range(self.q):
            yield self.from_code(code)


@dataclass(frozen=True)
class FieldElem:
    field: FieldSpec
    coeffs: tuple[int, ...]

    def _other(self, b) -> FieldElem:
        if isinstance(b, FieldElem):
            if b.field != self.field:
                raise FieldError(f"mixed fields: {self.field} and {b.field}")
            return b
        if isinstance(b, (int, np.integer)):
            return self.field(int(b) % self.field.p)
        return NotImplemented

    def __int__(self) -> int:
        code = 0
        for c in reversed(self.coeffs):
            code = code * self.field.p + c
        return code

    __index__ = __int__

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __add__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        p = self.field.p
        return FieldElem(self.field, tuple((x + y) % p for x, y in zip(self.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        p = self.field.p
        return FieldElem(self.field, tuple(-x % p for x in self.coeffs))

    def __sub__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        return self + (-b)

    def __rsub__(self, b):
        return (-self) + b

    def __mul__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        F = self.field
        prod = [0] * (2 * F.k - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return F([c % F.p for c in prod])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElem:
        if e < 0:
            return self.inv() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> FieldElem:
        if not self:
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        return self ** (self.field.q - 2)

    def __truediv__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        return self * b.inv()

    def __rtruediv__(self, b):
        return self.inv() * b

    def order(self) -> int:
        """Multiplicative order, by exhaustive powering."""
        if not self:
            raise ZeroDivisionError("zero has no multiplicative order")
        x, n = self, 1
        while x != self.field.one:
            x = x * self
            n += 1
        return n

    def frobenius(self) -> FieldElem:
        return self**self.field.p

    def __str__(self) -> str:
        return format_literal(self)

    __repr__ = __str__


@functools.lru_cache(maxsize=None)
def field_make(p: int, k: int = 1, cap: int = DEFAULT_CAP) -> FieldSpec:
    """GF(p^k) with the smallest-code monic irreducible modulus of degree k.

    For k = 1 the modulus is ``x`` itself.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    if p**k > cap:
        raise FieldError(f"field order {p}^{k} exceeds cap {cap}")
    for poly in _monic_polys(k, p):
        if is_irreducible(poly, p):
            return FieldSpec(p, k, poly)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def field_of_order(q: int, cap: int = DEFAULT_CAP) -> FieldSpec:
    """The field ``field_make(p, k)`` with p^k = q."""
    if isinstance(q, FieldSpec):
        return q
    ps = prime_factors(q)
    if len(ps) != 1:
        raise FieldError(f"{q} is not a prime power")
    p, k = ps[0], 0
    while q > 1:
        q //= p
        k += 1
    return field_make(p, k, cap)


@functools.lru_cache(maxsize=None)
def primitive_element(F: FieldSpec) -> FieldElem:
    """Smallest-code generator of the multiplicative group."""
    n = F.q - 1
    factors = prime_factors(n)
    for code in range(1, F.q):
        a = F.from_code(code)
        if all(a ** (n // r) != F.one for r in factors):
            return a
    raise AssertionError("unreachable: GF(q)* is cyclic")


_LITERAL = re.compile(r"^GF\((\d+)\^(\d+)\):(\d+(?:,\d+)*)$")


def format_literal(a: FieldElem) -> str:
    """``GF(p^k):c0,c1,...`` with little-endian coefficients."""
    F = a.field
    return f"GF({F.p}^{F.k}):" + ",".join(str(c) for c in a.coeffs)


def parse_literal(text: str) -> FieldElem:
    m = _LITERAL.match(text.strip())
    if not m:
        raise FieldError(f"malformed field literal {text!r}")
    p, k = int(m.group(1)), int(m.group(2))
    coeffs = [int(c) for c in m.group(3).split(",")]
    if len(coeffs) != k or any(c >= p for c in coeffs):
        raise FieldError(f"coefficients of {text!r} do not fit GF({p}^{k})")
    return FieldElem(field_make(p, k), tuple(coeffs))


def serialize(a: FieldElem) -> str:
    """Canonical base-p digit string, least significant digit first."""
    return "".join(str(c) if c < 10 else f"[{c}]" for c in a.coeffs)


@dataclass(frozen=True)
class Tables:
    """Lookup tables indexed by element code."""

    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is unused (set to 0)


TABLE_CAP = 256


@functools.lru_cache(maxsize=None)
def tables(F: FieldSpec) -> Tables:
    """Addition/multiplication tables for the vectorised matrix code."""
    q = F.q
    if q > TABLE_CAP:
        raise FieldError(f"{F} too large for lookup tables (cap {TABLE_CAP})")
    elems = list(F.elements())
    add = np.array([[int(a + b) for b in elems] for a in elems], dtype=np.int64)
    mul = np.array([[int(a * b) for b in elems] for a in elems], dtype=np.int64)
    neg = np.array([int(-a) for a in elems], dtype=np.int64)
    inv = np.array([0] + [int(a.inv()) for a in elems[1:]], dtype=np.int64)
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return Tables(add, mul, neg, inv)
