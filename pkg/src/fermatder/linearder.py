"""Linear derivations d(x_i) = sum_j a_ij x_j and their classification."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Union

from .derivation import Derivation, NotADerivationError, well_definedness_residue
from .exactla import Matrix, ShapeError, is_nilpotent, nullspace
from .field import CycloNum
from .ring import RingElem, RingSpec


class UnsupportedShapeError(ValueError):
    """The operation is only defined for a particular exponent vector m."""


def images_from_matrix(spec: RingSpec, M: Matrix) -> list[RingElem]:
    xs = spec.variables()
    out = []
    for i in range(spec.n):
        img = spec.zero
        for j, a in enumerate(M.row(i)):
            if a:
                img = img + xs[j].scale(a)
        out.append(img)
    return out


@dataclass(frozen=True)
class LinearDerivation:
    """A derivation whose associated matrix [a_ij] gives d(x_i) = sum_j a_ij x_j.

    Construction validates the Fermat relation and raises
    :class:`NotADerivationError` (carrying the residue) if it fails.
    """

    spec: RingSpec
    matrix: Matrix
    derivation: Derivation = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        M = self.matrix
        if M.shape != (self.spec.n, self.spec.n):
            raise ShapeError(f"expected {self.spec.n}x{self.spec.n} matrix, got {M.rows}x{M.cols}")
        if M.field != self.spec.field:
            raise ShapeError("matrix and ring use different coefficient fields")
        d = Derivation(self.spec, images_from_matrix(self.spec, M))
        if not d.certified:
            raise NotADerivationError(d.residue)
        object.__setattr__(self, "derivation", d)

    def __call__(self, f: RingElem) -> RingElem:
        return self.derivation(f)

    def __add__(self, other: LinearDerivation) -> LinearDerivation:
        return LinearDerivation(self.spec, self.matrix + other.matrix)

    def __sub__(self, other: LinearDerivation) -> LinearDerivation:
        return LinearDerivation(self.spec, self.matrix - other.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def from_matrix(spec: RingSpec, M: Matrix) -> LinearDerivation:
    return LinearDerivation(spec, M)


def scalar_derivation(spec: RingSpec, alpha) -> LinearDerivation:
    """x_i -> alpha x_i (a derivation only when all m_i are equal)."""
    return LinearDerivation(spec, Matrix.scalar(spec.field, spec.n, alpha))


def diagonal_derivation(spec: RingSpec, alpha) -> LinearDerivation:
    """x_i -> (alpha / m_i) x_i, which is alpha times the Euler-type generator."""
    a = spec.field(alpha)
    return LinearDerivation(spec, Matrix.diagonal(spec.field, [a * Fraction(1, mi) for mi in spec.m]))


def linear_derivation_space(spec: RingSpec) -> list[Matrix]:
    """Basis of all associated matrices [a_ij] that define derivations of B_n^m.

    Every entry a_ij is an unknown; requiring the residue of the relation to
    vanish coefficientwise gives a homogeneous linear system whose nullspace
    is returned, one n x n matrix per basis vector.
    """
    n, fld = spec.n, spec.field
    xs = spec.variables()
    columns = []
    for i in range(n):
        for j in range(n):
            images = [spec.zero] * n
            images[i] = xs[j]
            columns.append(well_definedness_residue(images, spec).terms)
    rows = sorted({e for col in columns for e in col}, reverse=True)
    system = Matrix(fld, [[col.get(e, fld.zero) for col in columns] for e in rows])
    return [
        Matrix(fld, [vec[i * n:(i + 1) * n] for i in range(n)]) for vec in nullspace(system)
    ]


@dataclass(frozen=True)
class Decomposition:
    """matrix = alpha * I + skew, with skew^T = -skew."""

    alpha: CycloNum
    skew: Matrix


@dataclass(frozen=True)
class Diagonal:
    alpha: CycloNum

    kind = "diagonal"


@dataclass(frozen=True)
class ScalarPlusSkew:
    decomposition: Decomposition

    kind = "scalar+skew"


@dataclass(frozen=True)
class Unclassified:
    matrix: Matrix

    kind = "unclassified"


Classification = Union[Diagonal, ScalarPlusSkew, Unclassified]


def classify(ld: LinearDerivation) -> Classification:
    """Diagonal form when all m_i >= 3, scalar plus skew part when m = (2,...,2).

    Mixed exponent vectors get :class:`Unclassified`.
    """
    spec, M = ld.spec, ld.matrix
    if spec.all_at_least_three():
        alpha = M[0, 0] * spec.m[0]
        expected = Matrix.diagonal(spec.field, [alpha * Fraction(1, mi) for mi in spec.m])
        if M != expected:
            raise NotADerivationError(
                spec.zero, f"matrix is not of the form diag(alpha/m_i):\n{M}"
            )
        return Diagonal(alpha)
    if spec.all_quadratic():
        return ScalarPlusSkew(decompose(ld))
    return Unclassified(M)


def decompose(ld: LinearDerivation) -> Decomposition:
    """Unique split into scalar and skew-symmetric parts, for m = (2,...,2)."""
    spec, M = ld.spec, ld.matrix
    if not spec.all_quadratic():
        raise UnsupportedShapeError(f"scalar/skew decomposition needs m=(2,...,2), got {spec.m}")
    alpha = M[0, 0]
    if any(M[i, i] != alpha for i in range(spec.n)):
        raise NotADerivationError(spec.zero, "diagonal entries differ")
    skew = M - Matrix.scalar(spec.field, spec.n, alpha)
    if not skew.is_skew_symmetric():
        raise NotADerivationError(spec.zero, "off-diagonal part is not skew-symmetric")
    return Decomposition(alpha, skew)


def nilpotency_index(ld: LinearDerivation) -> int | None:
    return is_nilpotent(ld.matrix)[1]


def is_locally_nilpotent(ld: LinearDerivation) -> bool:
    """d is locally nilpotent iff its associated matrix is nilpotent.

    For m = (2,...,2) the answer is cross-checked against the nilpotent and
    skew-symmetric characterisation: a nilpotent matrix has zero trace, so its
    scalar part vanishes and it equals its own skew part.
    """
    nil, _ = is_nilpotent(ld.matrix)
    if ld.spec.all_quadratic():
        dec = decompose(ld)
        alt = not dec.alpha and is_nilpotent(dec.skew)[0]
        if alt != nil:
            raise AssertionError("nilpotency disagrees with the skew-symmetric characterisation")
    return nil
