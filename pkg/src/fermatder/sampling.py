"""Seeded random generators for field elements, ring elements and derivations."""
from __future__ import annotations

import random
from fractions import Fraction

from .exactla import Matrix
from .field import CycloNum, FieldSpec
from .linearder import LinearDerivation, linear_derivation_space
from .ring import RingElem, RingSpec, normal_form, vk_basis

_SMALL = [Fraction(p, q) for p in range(-3, 4) for q in (1, 2, 3)]


def random_rational(rng: random.Random, zero_weight: float = 0.3) -> Fraction:
    if rng.random() < zero_weight:
        return Fraction(0)
    return rng.choice(_SMALL)


def random_cyclonum(rng: random.Random, field: FieldSpec, zero_weight: float = 0.3) -> CycloNum:
    return field.element([random_rational(rng, zero_weight) for _ in range(field.degree)])


def random_nonzero(rng: random.Random, field: FieldSpec) -> CycloNum:
    while True:
        c = random_cyclonum(rng, field)
        if c:
            return c


def random_raw_terms(rng: random.Random, spec: RingSpec, nterms: int = 4, max_exp: int = 4):
    """Random polynomial terms, not necessarily normal."""
    return [
        (tuple(rng.randint(0, max_exp) for _ in range(spec.n)), random_cyclonum(rng, spec.field, 0.0))
        for _ in range(nterms)
    ]


def random_element(rng: random.Random, spec: RingSpec, nterms: int = 4, max_exp: int = 3) -> RingElem:
    return normal_form(random_raw_terms(rng, spec, nterms, max_exp), spec)


def random_homogeneous(rng: random.Random, spec: RingSpec, k: int, nterms: int = 3) -> RingElem:
    basis = vk_basis(spec, k)
    while True:
        picks = rng.sample(basis, min(nterms, len(basis)))
        f = RingElem(spec, {e: random_nonzero(rng, spec.field) for e in picks})
        if f:
            return f


def random_linear_derivation(rng: random.Random, spec: RingSpec) -> LinearDerivation:
    """Random combination of a basis of all linear derivations of ``spec``."""
    basis = _space(spec)
    M = Matrix.zeros(spec.field, spec.n)
    for B in basis:
        M = M + B.scale(random_cyclonum(rng, spec.field))
    return LinearDerivation(spec, M)


_SPACE_CACHE: dict[RingSpec, list[Matrix]] = {}


def _space(spec: RingSpec) -> list[Matrix]:
    if spec not in _SPACE_CACHE:
        _SPACE_CACHE[spec] = linear_derivation_space(spec)
    return _SPACE_CACHE[spec]


def random_skew_matrix(rng: random.Random, field: FieldSpec, n: int, zero_weight: float = 0.3) -> Matrix:
    z = field.zero
    rows = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = random_cyclonum(rng, field, zero_weight)
            rows[i][j], rows[j][i] = c, -c
    return Matrix(field, rows)


def random_skew_derivation(rng: random.Random, spec: RingSpec, zero_weight: float = 0.3) -> LinearDerivation:
    return LinearDerivation(spec, random_skew_matrix(rng, spec.field, spec.n, zero_weight))
