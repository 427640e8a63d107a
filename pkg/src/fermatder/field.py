"""Exact arithmetic in the cyclotomic field Q(zeta_k).

Elements are stored in the power basis 1, w, ..., w^(phi(k)-1) where ``w`` is a
primitive k-th root of unity, with :class:`fractions.Fraction` coordinates.
Products are reduced modulo the k-th cyclotomic polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational
from typing import Iterable, Sequence, Union


class FieldMismatchError(ValueError):
    """Operands live in cyclotomic fields of different conductor."""


class UnsupportedElementError(ValueError):
    """Requested constant is not representable in the configured field."""


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_k, lowest degree first.

    Phi_k = (X^k - 1) / prod(Phi_d for proper divisors d of k), computed by
    exact long division.
    """
    if k < 1:
        raise ValueError(f"conductor must be positive, got {k}")
    num = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            num = _int_poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _int_poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # den is monic, so integer long division is exact
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact cyclotomic division")
    return quot


def euler_phi(k: int) -> int:
    result, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


Scalar = Union["CycloNum", int, Fraction]


@dataclass(frozen=True)
class FieldSpec:
    """The field Q(zeta_k) for a fixed conductor k."""

    conductor: int

    def __post_init__(self):
        if not isinstance(self.conductor, int) or self.conductor < 1:
            raise ValueError(f"conductor must be a positive integer, got {self.conductor!r}")

    @cached_property
    def minimal_polynomial(self) -> tuple[int, ...]:
        return cyclotomic_polynomial(self.conductor)

    @cached_property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    @cached_property
    def zero(self) -> CycloNum:
        return CycloNum(self, (Fraction(0),) * self.degree)

    @cached_property
    def one(self) -> CycloNum:
        return self.rational(1)

    @cached_property
    def zeta(self) -> CycloNum:
        """The generator w, a primitive k-th root of unity."""
        if self.degree == 1:
            # Phi_1 = X - 1 and Phi_2 = X + 1
            return self.rational(-self.minimal_polynomial[0])
        return CycloNum(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def rational(self, q) -> CycloNum:
        return CycloNum(self, (Fraction(q),) + (Fraction(0),) * (self.degree - 1))

    def element(self, coords: Iterable) -> CycloNum:
        """Element with the given power-basis coordinates (padded with zeros)."""
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            # allow overlong input, reduce it
            return CycloNum(self, _reduce(coords, self.minimal_polynomial))
        return CycloNum(self, tuple(coords) + (Fraction(0),) * (self.degree - len(coords)))

    def __call__(self, value: Scalar) -> CycloNum:
        if isinstance(value, CycloNum):
            if value.field != self:
                raise FieldMismatchError(f"Q(zeta_{value.field.conductor}) vs Q(zeta_{self.conductor})")
            return value
        if isinstance(value, (int, Rational)):
            return self.rational(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a field element")

    def root_of_unity(self, order: int) -> CycloNum:
        """A primitive ``order``-th root of unity, zeta^(k/order)."""
        if order < 1 or self.conductor % order:
            raise UnsupportedElementError(
                f"no primitive {order}-th root of unity in Q(zeta_{self.conductor})"
            )
        return self.zeta ** (self.conductor // order)

    def __str__(self):
        return f"Q(zeta_{self.conductor})"


def imaginary_unit(spec: FieldSpec) -> CycloNum:
    """The element zeta^(k/4), a square root of -1; needs 4 | k."""
    if spec.conductor % 4:
        raise UnsupportedElementError(f"i is not available in Q(zeta_{spec.conductor}); need 4 | k")
    return spec.zeta ** (spec.conductor // 4)


def _reduce(coeffs: list[Fraction], phi: Sequence[int]) -> tuple[Fraction, ...]:
    d = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, d - 1, -1):
        t = c[i]
        if t:
            base = i - d
            for j in range(d):
                if phi[j]:
                    c[base + j] -= t * phi[j]
    if len(c) < d:
        c.extend([Fraction(0)] * (d - len(c)))
    return tuple(c[:d])


class CycloNum:
    """Immutable element of Q(zeta_k) in the power basis."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field: FieldSpec, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords
        self._hash = None

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> CycloNum | None:
        if isinstance(other, CycloNum):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"Q(zeta_{self.field.conductor}) vs Q(zeta_{other.field.conductor})"
                )
            return other
        if isinstance(other, (int, Rational)):
            return self.field.rational(other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNum(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNum(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycloNum):
            q = Fraction(other)
            return CycloNum(self.field, tuple(a * q for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return CycloNum(self.field, (self.coords[0] * o.coords[0],))
        a, b = self.coords, o.coords
        prod = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CycloNum(self.field, _reduce(prod, self.field.minimal_polynomial))

    __rmul__ = __mul__

    def inverse(self) -> CycloNum:
        """Multiplicative inverse via extended Euclid against Phi_k."""
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.field.degree == 1:
            return CycloNum(self.field, (1 / self.coords[0],))
        phi = [Fraction(c) for c in self.field.minimal_polynomial]
        # invariant: s * self == r  (mod phi)
        r0, r1 = phi, _trim(list(self.coords))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        # r1 is a nonzero constant since phi is irreducible
        c = r1[0]
        return self.field.element(x / c for x in s1)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Rational)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coords[1:]):
                self._hash = hash(self.coords[0])
            else:
                self._hash = hash((self.field.conductor, self.coords))
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def support(self) -> list[int]:
        return [j for j, c in enumerate(self.coords) if c]

    # -- printing ---------------------------------------------------------
    def __str__(self):
        parts: list[tuple[bool, str]] = []
        for j, c in enumerate(self.coords):
            if not c:
                continue
            neg = c < 0
            mag = -c if neg else c
            if j == 0:
                body = str(mag)
            else:
                atom = "w" if j == 1 else f"w^{j}"
                body = atom if mag == 1 else f"{mag}*{atom}"
            parts.append((neg, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"CycloNum({self}, k={self.field.conductor})"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db] if db else [Fraction(0)])
