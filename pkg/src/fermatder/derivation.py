"""Derivations of B_n^m given by the images of the generators x_i.

A tuple of images (d(x_1), ..., d(x_n)) defines a derivation of the quotient
exactly when sum_i m_i x_i^(m_i-1) d(x_i) vanishes in B_n^m. That residue is
computed when a :class:`Derivation` is built; only certified derivations can
be applied.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactla import Matrix, rank
from .ring import Monomial, RingElem, RingSpec, normal_form, vk_basis


class ArityError(ValueError):
    """Wrong number of images, or a variable index outside 1..n."""


class CertificationRequiredError(RuntimeError):
    """An ill-defined derivation was applied."""


class NotADerivationError(ValueError):
    """The images do not respect the Fermat relation."""

    def __init__(self, residue: RingElem, message: str | None = None):
        self.residue = residue
        super().__init__(message or f"not a derivation of the ring: residue {residue} != 0")


def well_definedness_residue(images: Sequence[RingElem], spec: RingSpec | None = None) -> RingElem:
    """sum_i m_i x_i^(m_i - 1) * images[i], reduced to normal form."""
    if not images:
        raise ArityError("no images given")
    spec = spec or images[0].spec
    if len(images) != spec.n:
        raise ArityError(f"expected {spec.n} images, got {len(images)}")
    raw: dict[Monomial, object] = {}
    for i, (mi, img) in enumerate(zip(spec.m, images)):
        if img.spec != spec:
            raise ArityError(f"image {i + 1} lives in a different ring")
        for e, c in img.terms.items():
            ne = e[:i] + (e[i] + mi - 1,) + e[i + 1:]
            v = c * mi
            raw[ne] = raw[ne] + v if ne in raw else v
    return normal_form(raw, spec)


def is_well_defined(images: Sequence[RingElem], spec: RingSpec | None = None) -> bool:
    return not well_definedness_residue(images, spec)


class Derivation:
    """A derivation of B_n^m, x_i -> images[i]."""

    __slots__ = ("spec", "images", "residue")

    def __init__(self, spec: RingSpec, images: Sequence[RingElem]):
        self.spec = spec
        self.images = tuple(images)
        self.residue = well_definedness_residue(self.images, spec)

    @property
    def certified(self) -> bool:
        return not self.residue

    def require_certified(self) -> Derivation:
        if not self.certified:
            raise CertificationRequiredError(
                f"images do not define a derivation (residue {self.residue})"
            )
        return self

    def __call__(self, f: RingElem) -> RingElem:
        return apply(self, f)

    def __add__(self, other: Derivation) -> Derivation:
        return Derivation(self.spec, [a + b for a, b in zip(self.images, other.images)])

    def __sub__(self, other: Derivation) -> Derivation:
        return Derivation(self.spec, [a - b for a, b in zip(self.images, other.images)])

    def scale(self, c) -> Derivation:
        return Derivation(self.spec, [img.scale(c) for img in self.images])

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.spec == other.spec and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        return "; ".join(f"d(x{i})={img}" for i, img in enumerate(self.images, start=1))

    def __repr__(self):
        return f"Derivation({self})"


def derivative_terms(d: Derivation, f: RingElem) -> dict[Monomial, object]:
    """sum_i (df/dx_i) d(x_i) as a raw polynomial, before reduction."""
    if f.spec != d.spec:
        raise ArityError("element and derivation live in different rings")
    raw: dict[Monomial, object] = {}
    imgs = [img.terms for img in d.images]
    for e, c in f.terms.items():
        for i, ei in enumerate(e):
            if not ei:
                continue
            cc = c * ei
            base = e[:i] + (ei - 1,) + e[i + 1:]
            for ie, ic in imgs[i].items():
                ne = tuple(a + b for a, b in zip(base, ie))
                v = cc * ic
                raw[ne] = raw[ne] + v if ne in raw else v
    return raw


def apply(d: Derivation, f: RingElem) -> RingElem:
    """d(f), differentiating the normal-form representative and reducing."""
    d.require_certified()
    return normal_form(derivative_terms(d, f), d.spec)


def compose_power(d: Derivation, s: int, f: RingElem) -> RingElem:
    """d applied s times to f."""
    if s < 0:
        raise ValueError("power must be nonnegative")
    d.require_certified()
    for _ in range(s):
        if not f:
            break
        f = apply(d, f)
    return f


def generator_dij(spec: RingSpec, i: int, j: int) -> Derivation:
    """d_ij = m_i x_i^(m_i-1) d/dx_j - m_j x_j^(m_j-1) d/dx_i, for 1 <= i < j <= n."""
    n = spec.n
    if not (1 <= i < j <= n):
        raise IndexError(f"need 1 <= i < j <= {n}, got ({i}, {j})")
    images = [spec.zero] * n
    mi, mj = spec.m[i - 1], spec.m[j - 1]
    images[i - 1] = spec.variable(j) ** (mj - 1) * (-mj)
    images[j - 1] = spec.variable(i) ** (mi - 1) * mi
    return Derivation(spec, images)


def generator_epsilon(spec: RingSpec) -> Derivation:
    """Euler-type derivation x_i -> x_i / m_i."""
    return Derivation(
        spec, [spec.variable(i) * Fraction(1, mi) for i, mi in enumerate(spec.m, start=1)]
    )


def _monomials_up_to(nvars: int, n: int, bound: int) -> list[Monomial]:
    # monomials in the first nvars variables, padded to length n, total degree <= bound
    out: list[Monomial] = []

    def rec(prefix, remaining, pos):
        if pos == nvars:
            out.append(tuple(prefix) + (0,) * (n - nvars))
            return
        for x in range(remaining, -1, -1):
            rec(prefix + [x], remaining - x, pos + 1)

    rec([], bound, 0)
    return out


def triangular_system(spec: RingSpec, degree_bound: int) -> tuple[Matrix, list[tuple[int, Monomial]]]:
    """Linear constraints on candidates with d(x_1) constant, d(x_i) in K[x_1..x_{i-1}].

    Unknowns are the coefficients of each d(x_i) (degree <= bound); one row per
    normal monomial of the well-definedness residue.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    n = spec.n
    unknowns: list[tuple[int, Monomial]] = [(0, (0,) * n)]
    for i in range(1, n):
        unknowns += [(i, mono) for mono in _monomials_up_to(i, n, degree_bound)]
    columns: list[dict[Monomial, object]] = []
    for i, mono in unknowns:
        images = [spec.zero] * n
        images[i] = spec.monomial(mono)
        columns.append(well_definedness_residue(images, spec).terms)
    rows = sorted({e for col in columns for e in col}, reverse=True)
    fld = spec.field
    if not rows:
        return Matrix.zeros(fld, 1, len(unknowns)), unknowns
    data = [[col.get(e, fld.zero) for col in columns] for e in rows]
    return Matrix(fld, data), unknowns


def verify_triangular_vanishing(spec: RingSpec, degree_bound: int) -> bool:
    """True iff the only triangular candidate of bounded degree is the zero derivation."""
    M, unknowns = triangular_system(spec, degree_bound)
    return rank(M) == len(unknowns)


def is_homogeneous_preserving(d: Derivation, k: int) -> bool:
    """Whether d maps every normal monomial of degree k into V_k."""
    for e in vk_basis(d.spec, k):
        img = apply(d, RingElem(d.spec, {e: d.spec.field.one}))
        if any(sum(x) != k for x in img.terms):
            return False
    return True
