"""Rings of constants and Darboux elements of linear derivations.

A linear derivation maps each V_k (normal monomials of total degree k) into
itself whenever the reduction x_n^m_n -> -(...) is homogeneous, i.e. for
uniform m, and for diagonal derivations in general. The kernel is then the
direct sum of the kernels on each V_k, so it can be certified degree by degree
up to a chosen bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

from .derivation import Derivation, apply, derivative_terms
from .exactla import Matrix, ShapeError, is_injective, is_nilpotent, nullspace
from .field import CycloNum, FieldSpec, imaginary_unit
from .linearder import (
    LinearDerivation,
    UnsupportedShapeError,
    diagonal_derivation,
    is_locally_nilpotent,
    scalar_derivation,
)
from .ring import Monomial, RingElem, RingSpec, normal_form, vk_basis

AnyDerivation = Union[LinearDerivation, Derivation]


class NotInvariantError(ValueError):
    """The derivation does not map the chosen span into itself."""


class PreconditionError(ValueError):
    """Inputs fall outside the hypotheses of the check."""


def _as_derivation(d: AnyDerivation) -> Derivation:
    return d.derivation if isinstance(d, LinearDerivation) else d


@dataclass(frozen=True)
class VkMatrix:
    """Matrix of d on span(basis); column j holds the coordinates of d(basis[j])."""

    degree: int
    basis: list[Monomial]
    matrix: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coords: Sequence[CycloNum], spec: RingSpec) -> RingElem:
        return RingElem(spec, {e: c for e, c in zip(self.basis, coords) if c})


def restrict_to_span(d: AnyDerivation, monomials: Sequence[Monomial], *, reduce: bool = True) -> Matrix:
    """Matrix of d on the span of the given monomials.

    With ``reduce=False`` derivatives are taken in the polynomial ring, without
    the Fermat relation; this is how the action on K[x_2, x_3] alone is read.
    """
    der = _as_derivation(d).require_certified()
    spec, fld = der.spec, der.spec.field
    index = {e: j for j, e in enumerate(monomials)}
    columns = []
    for e in monomials:
        raw = derivative_terms(der, RingElem(spec, {e: fld.one}))
        terms = normal_form(raw, spec).terms if reduce else {k: v for k, v in raw.items() if v}
        col = [fld.zero] * len(monomials)
        for mono, c in terms.items():
            j = index.get(mono)
            if j is None:
                raise NotInvariantError(f"d({_mono_str(e)}) leaves the span (term {_mono_str(mono)})")
            col[j] = c
        columns.append(col)
    return Matrix.from_columns(fld, columns)


def restrict_to_vk(d: AnyDerivation, k: int) -> VkMatrix:
    """Matrix of d on V_k in the descending-lex normal monomial basis."""
    spec = _as_derivation(d).spec
    basis = vk_basis(spec, k)
    return VkMatrix(k, basis, restrict_to_span(d, basis))


def _mono_str(e: Monomial) -> str:
    return "*".join(f"x{i}" + (f"^{x}" if x > 1 else "") for i, x in enumerate(e, start=1) if x) or "1"


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class KernelReport:
    """Kernel of d on V_1, ..., V_K. ``trivial`` claims nothing beyond max_degree."""

    max_degree: int
    bases: dict[int, list[RingElem]]
    dims: dict[int, int] = dc_field(default_factory=dict)

    @property
    def trivial(self) -> bool:
        return all(not b for k, b in self.bases.items() if k >= 1)

    @property
    def first_nontrivial_degree(self) -> int | None:
        return next((k for k in sorted(self.bases) if k >= 1 and self.bases[k]), None)

    def lines(self) -> list[str]:
        out = []
        for k in sorted(self.bases):
            basis = self.bases[k]
            shown = "[" + ", ".join(str(f) for f in basis) + "]"
            out.append(f"k={k} dim={len(basis)} basis={shown}")
        k0 = self.first_nontrivial_degree
        out.append(f"TRIVIAL_UP_TO={self.max_degree}" if k0 is None else f"NONTRIVIAL at k={k0}")
        return out


def kernel_on_vk(d: AnyDerivation, k: int, *, modular: bool = True) -> list[RingElem]:
    vk = restrict_to_vk(d, k)
    spec = _as_derivation(d).spec
    if modular and is_injective(vk.matrix, modular=True):
        return []
    return [vk.element(v, spec) for v in nullspace(vk.matrix)]


def kernel_up_to_degree(d: AnyDerivation, K: int, *, modular: bool = True) -> KernelReport:
    """Kernel bases of d on V_k for k = 1..K.

    ``modular`` enables the mod-p full-rank certificate before exact
    elimination; it never changes the answer, only the cost.
    """
    if K < 1:
        raise ValueError("max degree must be at least 1")
    bases, dims = {}, {}
    spec = _as_derivation(d).spec
    for k in range(1, K + 1):
        bases[k] = kernel_on_vk(d, k, modular=modular)
        dims[k] = len(vk_basis(spec, k))
    return KernelReport(K, bases, dims)


# ---------------------------------------------------------------------------
# Darboux elements


@dataclass(frozen=True)
class DarbouxCertificate:
    """d(element) = eigenvalue * element, checked exactly on construction."""

    element: RingElem
    eigenvalue: CycloNum

    @property
    def is_proper(self) -> bool:
        # nonzero elements with a monomial of positive degree are non-units
        return bool(self.element) and any(sum(e) > 0 for e in self.element.terms)


def certify(d: AnyDerivation, element: RingElem, eigenvalue) -> DarbouxCertificate:
    if not element:
        raise PreconditionError("a Darboux element must be nonzero")
    lam = element.spec.field(eigenvalue)
    if apply(_as_derivation(d), element) != element.scale(lam):
        raise PreconditionError(f"d({element}) != ({lam})*({element})")
    return DarbouxCertificate(element, lam)


def darboux_eigenvalue(spec: RingSpec, alpha, mono: Monomial) -> CycloNum:
    """alpha * sum_k i_k / m_k, the eigenvalue of x^mono under x_i -> (alpha/m_i) x_i."""
    a = spec.field(alpha)
    return a * sum((Fraction(i, mi) for i, mi in zip(mono, spec.m)), Fraction(0))


def homogeneous_eigenvalue(spec: RingSpec, alpha, f: RingElem) -> DarbouxCertificate:
    """Certificate d(f) = (alpha k / m) f for f of degree k, uniform m."""
    if not spec.is_uniform():
        raise UnsupportedShapeError(f"needs m_1 = ... = m_n, got {spec.m}")
    if not f:
        raise PreconditionError("f must be nonzero")
    if not f.is_homogeneous():
        raise ShapeError(f"{f} is not homogeneous")
    k = f.degree()
    lam = spec.field(alpha) * Fraction(k, spec.m[0])
    return certify(diagonal_derivation(spec, alpha), f, lam)


def diagonal_parameter(d: LinearDerivation) -> CycloNum:
    """alpha such that [d] = diag(alpha/m_i); raises if [d] has another shape."""
    spec, M = d.spec, d.matrix
    alpha = M[0, 0] * spec.m[0]
    if M != Matrix.diagonal(spec.field, [alpha * Fraction(1, mi) for mi in spec.m]):
        raise UnsupportedShapeError("derivation is not of the form x_i -> (alpha/m_i) x_i")
    return alpha


def eigenvalue_uniqueness_check(d: LinearDerivation, f: RingElem, lam) -> bool:
    """True iff every monomial in the support of f has eigenvalue lam."""
    if not f:
        raise PreconditionError("a Darboux element must be nonzero")
    alpha = diagonal_parameter(d)
    lam = d.spec.field(lam)
    return all(darboux_eigenvalue(d.spec, alpha, e) == lam for e in f.terms)


def shifted_eigen_check(d_s: LinearDerivation, alpha, f: RingElem, lam) -> bool:
    """Whether d_s(f) = (lam - k alpha) f for f homogeneous of degree k."""
    spec = d_s.spec
    if not spec.all_quadratic():
        raise UnsupportedShapeError(f"needs m=(2,...,2), got {spec.m}")
    if not d_s.matrix.is_skew_symmetric():
        raise ShapeError("d_s must have a skew-symmetric matrix")
    if not f.is_homogeneous():
        raise ShapeError(f"{f} is not homogeneous")
    k = max(f.degree(), 0)
    shift = spec.field(lam) - spec.field(alpha) * k
    return apply(d_s.derivation, f) == f.scale(shift)


# ---------------------------------------------------------------------------
# skew-symmetric derivations on B_n^2


def skew_kernel_witness(d_s: LinearDerivation) -> RingElem | None:
    """A nonconstant constant of d_s built from its matrix B.

    If B^2 != 0 the quadratic form X B^2 X^T commutes past d_s; if B^2 = 0 a
    null vector a of B^T gives the linear constant sum a_i x_i. Returns None
    when the quadratic form happens to vanish in the quotient (for instance
    B^2 = -I), where this construction gives nothing.
    """
    spec, B = d_s.spec, d_s.matrix
    B2 = B @ B
    if not B2.is_zero():
        raw = {}
        for i in range(spec.n):
            for j in range(spec.n):
                c = B2[i, j]
                if c:
                    e = tuple((i == t) + (j == t) for t in range(spec.n))
                    raw[e] = raw[e] + c if e in raw else c
        f = normal_form(raw, spec)
        return f or None
    null = nullspace(B.transpose())
    xs = spec.variables()
    f = spec.zero
    for a, x in zip(null[0], xs):
        if a:
            f = f + x.scale(a)
    return f


def alpha_rejection_degree(d_s: LinearDerivation, alpha, K: int) -> int | None:
    """Least k in 1..K with det([d_s|V_k] + k alpha I) = 0, or None.

    det != 0 is tested as full rank, which is equivalent for square matrices.
    """
    fld = d_s.spec.field
    a = fld(alpha)
    for k in range(1, K + 1):
        vk = restrict_to_vk(d_s, k)
        shifted = vk.matrix + Matrix.scalar(fld, vk.dim, a * k)
        if not is_injective(shifted):
            return k
    return None


def find_alpha(d_s: LinearDerivation, K: int, candidates: Sequence) -> CycloNum | None:
    """First nonzero candidate alpha making d_alpha + d_s injective on V_1..V_K."""
    if not d_s.spec.all_quadratic():
        raise UnsupportedShapeError(f"needs m=(2,...,2), got {d_s.spec.m}")
    if K < 1:
        raise ValueError("max degree must be at least 1")
    fld = d_s.spec.field
    for c in candidates:
        a = fld(c)
        if a and alpha_rejection_degree(d_s, a, K) is None:
            return a
    return None


def quadratic_spec(n: int, conductor: int = 4) -> RingSpec:
    return RingSpec((2,) * n, FieldSpec(conductor))


def build_odd_family(n: int, field: FieldSpec | None = None) -> LinearDerivation:
    """Skew matrix with last column (-1, -i, -1, -i, ...)^T and last row its negation; n odd."""
    if n < 3 or n % 2 == 0:
        raise ShapeError(f"odd family needs odd n >= 3, got {n}")
    field = field or FieldSpec(4)
    i = imaginary_unit(field)
    col = [-field.one if j % 2 == 0 else -i for j in range(n - 1)]
    return _bordered(RingSpec((2,) * n, field), col)


def build_even_family(n: int, field: FieldSpec | None = None) -> LinearDerivation:
    """Skew matrix with last column (-1, -e, ..., -e^(n-2))^T, e a primitive (n-1)-th root of unity."""
    if n < 4 or n % 2:
        raise ShapeError(f"even family needs even n >= 4, got {n}")
    field = field or FieldSpec(lcm(4, n - 1))
    eps = field.root_of_unity(n - 1)
    col = [-(eps ** j) for j in range(n - 1)]
    return _bordered(RingSpec((2,) * n, field), col)


def _bordered(spec: RingSpec, col: list[CycloNum]) -> LinearDerivation:
    n, fld = spec.n, spec.field
    rows = [[fld.zero] * (n - 1) + [c] for c in col]
    rows.append([-c for c in col] + [fld.zero])
    ld = LinearDerivation(spec, Matrix(fld, rows))
    nil, index = is_nilpotent(ld.matrix)
    if not ld.matrix.is_skew_symmetric() or not nil or index > 3:
        raise AssertionError("family matrix is not skew with cube zero")
    return ld


def rotation_example(field: FieldSpec | None = None) -> LinearDerivation:
    """d = identity + rotation in (x2, x3) on B_3^(2,2,2): matrix [[1,0,0],[0,1,-1],[0,1,1]]."""
    spec = quadratic_spec(3, (field or FieldSpec(4)).conductor)
    return LinearDerivation(spec, Matrix(spec.field, [[1, 0, 0], [0, 1, -1], [0, 1, 1]]))


def rotation_skew_part(field: FieldSpec | None = None) -> LinearDerivation:
    spec = quadratic_spec(3, (field or FieldSpec(4)).conductor)
    return LinearDerivation(spec, Matrix(spec.field, [[0, 0, 0], [0, 0, -1], [0, 1, 0]]))


def binary_forms_basis(k: int) -> list[Monomial]:
    """x2^k, x2^(k-1) x3, ..., x3^k: the degree-k monomials free of x1 in three variables."""
    return [(0, k - j, j) for j in range(k + 1)]


def verify_lnd_skew_implies_trivial(d_s: LinearDerivation, alpha, K: int) -> bool:
    """For a nilpotent skew d_s and alpha != 0, whether ker(d_alpha + d_s) is trivial through K."""
    spec = d_s.spec
    if not spec.all_quadratic() or not d_s.matrix.is_skew_symmetric():
        raise PreconditionError("d_s must be a skew-symmetric derivation of B_n^2")
    if not is_locally_nilpotent(d_s):
        raise PreconditionError("d_s is not locally nilpotent")
    a = spec.field(alpha)
    if not a:
        raise PreconditionError("alpha must be nonzero")
    return kernel_up_to_degree(scalar_derivation(spec, a) + d_s, K).trivial
