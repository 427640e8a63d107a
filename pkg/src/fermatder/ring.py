"""Fermat rings B_n^m = K[X1..Xn]/(X1^m1 + ... + Xn^mn) in normal form.

Every element has a unique representative whose degree in the last variable is
below m_n; it is obtained by rewriting x_n^m_n -> -(x_1^m_1 + ... + x_{n-1}^m_{n-1})
until nothing is left to rewrite. Elements are sparse maps from exponent
tuples to nonzero :class:`CycloNum` coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

from .field import CycloNum, FieldSpec

Monomial = tuple[int, ...]


class RingMismatchError(ValueError):
    """Operands belong to different Fermat rings."""


@dataclass(frozen=True)
class RingSpec:
    """Parameters of B_n^m: the exponents (m_1, ..., m_n) and the coefficient field."""

    m: tuple[int, ...]
    field: FieldSpec = dc_field(default_factory=lambda: FieldSpec(4))

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if len(self.m) < 3:
            raise ValueError(f"need n >= 3 variables, got {len(self.m)}")
        if any(x < 2 for x in self.m):
            raise ValueError(f"every exponent must be >= 2, got {self.m}")

    @property
    def n(self) -> int:
        return len(self.m)

    def is_uniform(self) -> bool:
        return len(set(self.m)) == 1

    def all_quadratic(self) -> bool:
        return all(x == 2 for x in self.m)

    def all_at_least_three(self) -> bool:
        return all(x >= 3 for x in self.m)

    def is_normal(self, mono: Monomial) -> bool:
        return mono[-1] < self.m[-1]

    # -- element constructors -------------------------------------------
    @property
    def zero(self) -> RingElem:
        return RingElem(self, {})

    @property
    def one(self) -> RingElem:
        return self.constant(1)

    def constant(self, c) -> RingElem:
        c = self.field(c)
        return RingElem(self, {(0,) * self.n: c} if c else {})

    def variable(self, i: int) -> RingElem:
        """The class x_i of X_i (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"variable index {i} out of range 1..{self.n}")
        e = [0] * self.n
        e[i - 1] = 1
        return RingElem(self, {tuple(e): self.field.one})

    def variables(self) -> list[RingElem]:
        return [self.variable(i) for i in range(1, self.n + 1)]

    def monomial(self, exps: Iterable[int], coeff=1) -> RingElem:
        return normal_form([(tuple(exps), coeff)], self)

    def relation(self) -> RingElem:
        """x1^m1 + ... + xn^mn, which is zero in the ring."""
        return normal_form(
            [(tuple(mi if j == i else 0 for j in range(self.n)), 1) for i, mi in enumerate(self.m)], self
        )

    def __str__(self):
        return f"B_{self.n}^({','.join(map(str, self.m))}) over {self.field}"


TermInput = Union[Mapping[Monomial, object], Iterable[tuple[Monomial, object]]]


def normal_form(terms: TermInput, spec: RingSpec) -> RingElem:
    """Reduce a raw polynomial (exponent tuple -> coefficient) to its unique normal form.

    Coefficients may be ints, Fractions or CycloNums of the ring's field.
    """
    items = terms.items() if isinstance(terms, Mapping) else terms
    fld = spec.field
    n, m = spec.n, spec.m
    mn = m[-1]
    out: dict[Monomial, CycloNum] = {}
    pending: dict[Monomial, CycloNum] = {}
    for e, c in items:
        e = tuple(e)
        if len(e) != n or any(x < 0 for x in e):
            raise ValueError(f"bad exponent vector {e} for n={n}")
        c = c if isinstance(c, CycloNum) and c.field == fld else fld(c)
        if not c:
            continue
        target = out if e[-1] < mn else pending
        target[e] = target[e] + c if e in target else c
    while pending:
        nxt: dict[Monomial, CycloNum] = {}
        for e, c in pending.items():
            if not c:
                continue
            last = e[-1] - mn
            nc = -c
            for i in range(n - 1):
                ne = list(e)
                ne[i] += m[i]
                ne[-1] = last
                ne = tuple(ne)
                target = out if last < mn else nxt
                target[ne] = target[ne] + nc if ne in target else nc
        pending = nxt
    return RingElem(spec, {e: c for e, c in out.items() if c})


class RingElem:
    """Element of B_n^m in normal form. Treat as immutable."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: RingSpec, terms: dict[Monomial, CycloNum]):
        # callers guarantee normal monomials and nonzero coefficients
        self.spec = spec
        self.terms = terms

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> RingElem | None:
        if isinstance(other, RingElem):
            if other.spec != self.spec:
                raise RingMismatchError(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, Rational, CycloNum)):
            return self.spec.constant(other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return RingElem(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.spec, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> RingElem:
        c = self.spec.field(c)
        if not c:
            return self.spec.zero
        return RingElem(self.spec, {e: a * c for e, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational, CycloNum)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        raw: dict[Monomial, CycloNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                raw[e] = raw[e] + c if e in raw else c
        return normal_form(raw, self.spec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = self.spec.one, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure --------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.spec == other.spec and self.terms == other.terms
        if isinstance(other, (int, Rational, CycloNum)):
            return self.terms == self.spec.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[Monomial, CycloNum]]:
        for e in sorted(self.terms, reverse=True):
            yield e, self.terms[e]

    def __len__(self):
        return len(self.terms)

    def coefficient(self, mono: Monomial) -> CycloNum:
        return self.terms.get(tuple(mono), self.spec.field.zero)

    def degree(self) -> int:
        """Total degree of the normal form; -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_components(self) -> dict[int, RingElem]:
        comps: dict[int, dict[Monomial, CycloNum]] = {}
        for e, c in self.terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {k: RingElem(self.spec, t) for k, t in sorted(comps.items())}

    # -- printing ---------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces: list[tuple[bool, str]] = []
        for e, c in self:
            neg, mag = _split_sign(c)
            mono = _format_monomial(e)
            mag_s = str(mag)
            if len(mag.support()) > 1:
                mag_s = f"({mag_s})"
            if not mono:
                body = mag_s
            elif mag == 1:
                body = mono
            else:
                body = f"{mag_s}*{mono}"
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"RingElem({self})"


def _split_sign(c: CycloNum) -> tuple[bool, CycloNum]:
    supp = c.support()
    if len(supp) == 1 and c.coords[supp[0]] < 0:
        return True, -c
    return False, c


def _format_monomial(e: Monomial) -> str:
    parts = []
    for i, x in enumerate(e, start=1):
        if x == 1:
            parts.append(f"x{i}")
        elif x > 1:
            parts.append(f"x{i}^{x}")
    return "*".join(parts)


def equal(f: RingElem, g: RingElem) -> bool:
    """Equality in B_n^m; by uniqueness of normal forms this is structural."""
    if f.spec != g.spec:
        raise RingMismatchError(f"{f.spec} vs {g.spec}")
    return f.terms == g.terms


def homogeneous_components(f: RingElem) -> dict[int, RingElem]:
    return f.homogeneous_components()


def vk_basis(spec: RingSpec, k: int) -> list[Monomial]:
    """Normal monomials of total degree k in descending lex order (a basis of V_k)."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    n, cap = spec.n, spec.m[-1] - 1
    out: list[Monomial] = []

    def rec(prefix: list[int], remaining: int, pos: int):
        if pos == n - 1:
            if remaining <= cap:
                out.append(tuple(prefix) + (remaining,))
            return
        for x in range(remaining, -1, -1):
            prefix.append(x)
            rec(prefix, remaining - x, pos + 1)
            prefix.pop()

    rec([], k, 0)
    return out

