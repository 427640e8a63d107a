"""Replay of every structural claim about linear derivations of Fermat rings.

Each check runs over the applicable members of a grid of exponent vectors and
reports PASS, FAIL or SKIP (nothing in the grid it applies to).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from .constants import (
    binary_forms_basis,
    build_even_family,
    build_odd_family,
    certify,
    darboux_eigenvalue,
    eigenvalue_uniqueness_check,
    find_alpha,
    alpha_rejection_degree,
    homogeneous_eigenvalue,
    kernel_up_to_degree,
    restrict_to_span,
    restrict_to_vk,
    rotation_example,
    rotation_skew_part,
    shifted_eigen_check,
    skew_kernel_witness,
    verify_lnd_skew_implies_trivial,
)
from .derivation import apply, compose_power, generator_dij, generator_epsilon, verify_triangular_vanishing
from .exactla import Matrix, det, is_nilpotent, matrix_power
from .field import FieldSpec, imaginary_unit
from .linearder import (
    LinearDerivation,
    decompose,
    diagonal_derivation,
    is_locally_nilpotent,
    linear_derivation_space,
)
from .ring import RingSpec, normal_form
from . import sampling


def default_grid() -> list[tuple[int, ...]]:
    grid: list[tuple[int, ...]] = []
    for n in (3, 4):
        grid += list(itertools.product((3, 4, 5), repeat=n))
    grid += [(2,) * n for n in (3, 4, 5)]
    return grid


@dataclass
class SuiteConfig:
    max_degree: int = 6
    grid: list[tuple[int, ...]] = dc_field(default_factory=default_grid)
    bound: int = 2
    seed: int = 20240229
    conductor: int = 4

    def specs(self) -> list[RingSpec]:
        return [RingSpec(m, FieldSpec(self.conductor)) for m in self.grid]


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{self.status} {self.name}{tail}"


Check = Callable[[SuiteConfig, random.Random], tuple[str, str]]
_CHECKS: list[tuple[str, Check]] = []


def check(name: str):
    def deco(fn: Check) -> Check:
        _CHECKS.append((name, fn))
        return fn
    return deco


def _ok(cond: bool, detail: str = "") -> tuple[str, str]:
    return ("PASS" if cond else "FAIL"), detail


SKIP = ("SKIP", "no applicable ring in grid")


@check("normal form kills the relation and is idempotent")
def _normal_form(cfg, rng):
    count = 0
    for spec in cfg.specs():
        if spec.relation():
            return _ok(False, f"relation nonzero in {spec}")
        for _ in range(20):
            f = normal_form(sampling.random_raw_terms(rng, spec, 3, 2 * max(spec.m)), spec)
            if normal_form(f.terms, spec) != f or not all(spec.is_normal(e) for e in f.terms):
                return _ok(False, f"not idempotent in {spec}")
            count += 1
    return _ok(True, f"{count} reductions")


@check("generators d_ij and epsilon are well defined")
def _generators(cfg, rng):
    count = 0
    for spec in cfg.specs():
        gens = [generator_epsilon(spec)] + [
            generator_dij(spec, i, j) for i in range(1, spec.n + 1) for j in range(i + 1, spec.n + 1)
        ]
        if not all(g.certified for g in gens):
            return _ok(False, str(spec))
        count += len(gens)
    return _ok(True, f"{count} generators")


@check("triangular derivations vanish")
def _triangular(cfg, rng):
    specs = cfg.specs()
    ok = all(verify_triangular_vanishing(s, cfg.bound) for s in specs)
    return _ok(ok, f"degree bound {cfg.bound}, {len(specs)} rings")


@check("linear derivations are diagonal (m_i >= 3) or scalar plus skew (m = 2)")
def _linear_space(cfg, rng):
    seen = 0
    for spec in cfg.specs():
        if spec.all_at_least_three():
            basis = linear_derivation_space(spec)
            if len(basis) != 1:
                return _ok(False, f"dim {len(basis)} in {spec}")
            B = basis[0]
            scaled = {B[i, i] * spec.m[i] for i in range(spec.n)}
            diag = B == Matrix.diagonal(spec.field, [B[i, i] for i in range(spec.n)])
            if not diag or len(scaled) != 1 or not next(iter(scaled)):
                return _ok(False, f"basis not proportional to diag(1/m_i) in {spec}")
            seen += 1
        elif spec.all_quadratic():
            basis = linear_derivation_space(spec)
            n = spec.n
            if len(basis) != 1 + n * (n - 1) // 2:
                return _ok(False, f"dim {len(basis)} in {spec}")
            for B in basis:
                dec = decompose(LinearDerivation(spec, B))
                if not dec.skew.is_skew_symmetric():
                    return _ok(False, str(spec))
            seen += 1
    return _ok(True, f"{seen} rings") if seen else SKIP


@check("powers of a linear derivation follow powers of its matrix")
def _powers(cfg, rng):
    count = 0
    for spec in cfg.specs():
        xs = spec.variables()
        for _ in range(3):
            d = sampling.random_linear_derivation(rng, spec)
            for s in range(6):
                P = matrix_power(d.matrix, s)
                for i in range(spec.n):
                    expected = spec.zero
                    for j in range(spec.n):
                        if P[i, j]:
                            expected = expected + xs[j].scale(P[i, j])
                    if compose_power(d.derivation, s, xs[i]) != expected:
                        return _ok(False, f"s={s} in {spec}")
            count += 1
    return _ok(True, f"{count} derivations, s <= 5")


@check("only the zero linear derivation is locally nilpotent when all m_i >= 3")
def _lnd_diagonal(cfg, rng):
    seen = 0
    for spec in cfg.specs():
        if not spec.all_at_least_three():
            continue
        if not is_locally_nilpotent(diagonal_derivation(spec, 0)):
            return _ok(False, "zero derivation")
        for _ in range(3):
            d = sampling.random_linear_derivation(rng, spec)
            if is_locally_nilpotent(d) != d.is_zero():
                return _ok(False, f"{d.matrix} in {spec}")
        seen += 1
    return _ok(True, f"{seen} rings") if seen else SKIP


@check("locally nilpotent iff nilpotent skew-symmetric (m = 2, finite families)")
def _lnd_quadratic(cfg, rng):
    seen = nil_count = 0
    for spec in cfg.specs():
        if not spec.all_quadratic():
            continue
        pool = [sampling.random_linear_derivation(rng, spec) for _ in range(5)]
        pool += [sampling.random_skew_derivation(rng, spec, 0.7) for _ in range(5)]
        fam = _family(spec.n, spec.field)
        if fam is not None:
            pool.append(fam)
        for d in pool:
            nil = is_locally_nilpotent(d)
            dec = decompose(d)
            if nil and (dec.alpha or not is_nilpotent(dec.skew)[0]):
                return _ok(False, f"{d.matrix}")
            nil_count += nil
        if fam is not None and not is_locally_nilpotent(fam):
            return _ok(False, "family not nilpotent")
        seen += 1
    return _ok(True, f"{seen} rings, {nil_count} nilpotent") if seen else SKIP


def _family(n: int, field: FieldSpec):
    if n % 2 and field.conductor % 4 == 0:
        return build_odd_family(n, field)
    if n % 2 == 0 and n >= 4 and field.conductor % (n - 1) == 0:
        return build_even_family(n, field)
    return None


@check("monomials are Darboux elements with eigenvalue alpha * sum i_k/m_k")
def _darboux(cfg, rng):
    count = 0
    for spec in cfg.specs():
        if spec.all_at_least_three() or spec.is_uniform():
            alpha = sampling.random_nonzero(rng, spec.field)
            d = diagonal_derivation(spec, alpha)
            for _ in range(3):
                mono = tuple(rng.randint(0, 3) for _ in range(spec.n - 1)) + (rng.randint(0, spec.m[-1] - 1),)
                lam = darboux_eigenvalue(spec, alpha, mono)
                certify(d, spec.monomial(mono), lam)
                count += 1
            x1, x2 = spec.variable(1), spec.variable(2)
            mixed = x1 + x1 * x2
            for e in mixed.terms:
                if eigenvalue_uniqueness_check(d, mixed, darboux_eigenvalue(spec, alpha, e)):
                    return _ok(False, f"mixed support accepted in {spec}")
            if spec.is_uniform():
                f = sampling.random_homogeneous(rng, spec, rng.randint(1, 3))
                homogeneous_eigenvalue(spec, alpha, f)
                count += 1
    return _ok(True, f"{count} certificates") if count else SKIP


@check("nonzero diagonal derivations have only constant constants")
def _diag_kernel(cfg, rng):
    seen = 0
    for spec in cfg.specs():
        if not spec.all_at_least_three():
            continue
        d = diagonal_derivation(spec, sampling.random_nonzero(rng, spec.field))
        if not kernel_up_to_degree(d, cfg.max_degree).trivial:
            return _ok(False, str(spec))
        seen += 1
    return _ok(True, f"{seen} rings through k={cfg.max_degree}") if seen else SKIP


@check("d(f) = lam f iff d_s(f) = (lam - k alpha) f")
def _shift(cfg, rng):
    count = 0
    for spec in cfg.specs():
        if not spec.all_quadratic():
            continue
        for _ in range(4):
            d = sampling.random_linear_derivation(rng, spec)
            dec = decompose(d)
            d_s = LinearDerivation(spec, dec.skew)
            witness = skew_kernel_witness(d_s)
            cases = [(sampling.random_homogeneous(rng, spec, k), sampling.random_cyclonum(rng, spec.field))
                     for k in (1, 2)]
            if witness is not None:
                k = witness.degree()
                cases.append((witness, dec.alpha * k))
            for f, lam in cases:
                lhs = apply(d.derivation, f) == f.scale(lam)
                if lhs != shifted_eigen_check(d_s, dec.alpha, f, lam):
                    return _ok(False, f"f={f}")
                count += 1
    return _ok(True, f"{count} cases") if count else SKIP


@check("skew-symmetric derivations have nonconstant constants of degree <= 2")
def _skew_kernel(cfg, rng):
    count = 0
    for spec in cfg.specs():
        if not spec.all_quadratic():
            continue
        pool = [sampling.random_skew_derivation(rng, spec) for _ in range(4)]
        fam = _family(spec.n, spec.field)
        if fam is not None:
            pool.append(fam)
        for d_s in pool:
            if kernel_up_to_degree(d_s, 2).trivial:
                return _ok(False, f"{d_s.matrix}")
            w = skew_kernel_witness(d_s)
            if w is not None and (w.is_constant() or apply(d_s.derivation, w)):
                return _ok(False, f"bad witness {w}")
            count += 1
    return _ok(True, f"{count} skew derivations") if count else SKIP


@check("a scalar part with trivial constants is found for the rotation example")
def _find_alpha(cfg, rng):
    d_s = rotation_skew_part(FieldSpec(cfg.conductor))
    K = max(cfg.max_degree, 8)
    alpha = find_alpha(d_s, K, [1, 2, Fraction(1, 2)])
    if alpha is None:
        return _ok(False, "no candidate passed")
    detail = f"alpha={alpha} through k={K}"
    if cfg.conductor % 4 == 0:
        rej = alpha_rejection_degree(d_s, imaginary_unit(d_s.spec.field), K)
        if rej != 1:
            return _ok(False, f"alpha=i rejected at {rej}")
        detail += ", alpha=i rejected at k=1"
    return _ok(True, detail)


@check("scalar plus nilpotent skew derivation has only constant constants")
def _families(cfg, rng):
    odd = build_odd_family(3)
    even = build_even_family(4)
    ok = verify_lnd_skew_implies_trivial(odd, 1, cfg.max_degree) and \
        verify_lnd_skew_implies_trivial(even, 1, cfg.max_degree)
    return _ok(ok, f"n=3 odd, n=4 even through k={cfg.max_degree}")


@check("rotation example: restricted determinants are nonzero for k = 1..10")
def _rotation_dets(cfg, rng):
    d = rotation_example(FieldSpec(cfg.conductor))
    for k in range(1, 11):
        if not det(restrict_to_span(d, binary_forms_basis(k), reduce=False)):
            return _ok(False, f"binary forms, k={k}")
        if not det(restrict_to_vk(d, k).matrix):
            return _ok(False, f"full V_k, k={k}")
    return _ok(True, "binary forms and full V_k")


@check("non-nilpotent skew part can still give trivial constants")
def _non_nilpotent_skew_part(cfg, rng):
    d_s = rotation_skew_part(FieldSpec(cfg.conductor))
    d = rotation_example(FieldSpec(cfg.conductor))
    nil = is_locally_nilpotent(d_s)
    trivial = kernel_up_to_degree(d, cfg.max_degree).trivial
    return _ok(not nil and trivial, f"d_s nilpotent={nil}, trivial through k={cfg.max_degree}={trivial}")


def check_names() -> list[str]:
    return [name for name, _ in _CHECKS]


def run_suite(cfg: SuiteConfig | None = None) -> list[CheckResult]:
    cfg = cfg or SuiteConfig()
    if cfg.max_degree < 1:
        raise ValueError("max degree must be at least 1")
    results = []
    for name, fn in _CHECKS:
        rng = random.Random(f"{cfg.seed}:{name}")
        try:
            status, detail = fn(cfg, rng)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, status, detail))
    return results
