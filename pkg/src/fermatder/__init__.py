"""Exact algebra for derivations of Fermat rings C[x1..xn]/(x1^m1 + ... + xn^mn)."""
from .field import CycloNum, FieldSpec, cyclotomic_polynomial, imaginary_unit
from .exactla import Matrix, det, is_injective, is_nilpotent, nullspace, rank, rref
from .ring import RingElem, RingSpec, normal_form, vk_basis
from .derivation import (
    Derivation,
    NotADerivationError,
    apply,
    compose_power,
    generator_dij,
    generator_epsilon,
    well_definedness_residue,
)
from .linearder import (
    LinearDerivation,
    classify,
    decompose,
    diagonal_derivation,
    is_locally_nilpotent,
    linear_derivation_space,
    scalar_derivation,
)
from .constants import (
    DarbouxCertificate,
    KernelReport,
    build_even_family,
    build_odd_family,
    certify,
    find_alpha,
    kernel_up_to_degree,
    restrict_to_vk,
    skew_kernel_witness,
)

__all__ = [
    "CycloNum", "FieldSpec", "cyclotomic_polynomial", "imaginary_unit",
    "Matrix", "det", "is_injective", "is_nilpotent", "nullspace", "rank", "rref",
    "RingElem", "RingSpec", "normal_form", "vk_basis",
    "Derivation", "NotADerivationError", "apply", "compose_power", "generator_dij",
    "generator_epsilon", "well_definedness_residue",
    "LinearDerivation", "classify", "decompose", "diagonal_derivation",
    "is_locally_nilpotent", "linear_derivation_space", "scalar_derivation",
    "DarbouxCertificate", "KernelReport", "build_even_family", "build_odd_family",
    "certify", "find_alpha", "kernel_up_to_degree", "restrict_to_vk", "skew_kernel_witness",
]
__version__ = "0.1.0"
