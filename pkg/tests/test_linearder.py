import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fermatder.constants import build_even_family, build_odd_family, rotation_skew_part
from fermatder.derivation import NotADerivationError, compose_power
from fermatder.exactla import Matrix, ShapeError, is_nilpotent, matrix_power
from fermatder.field import FieldSpec
from fermatder.linearder import (
    LinearDerivation,
    UnsupportedShapeError,
    classify,
    decompose,
    diagonal_derivation,
    is_locally_nilpotent,
    linear_derivation_space,
    nilpotency_index,
    scalar_derivation,
)
from fermatder.ring import RingSpec
from fermatder.sampling import random_linear_derivation

from conftest import cyclonums

AT_LEAST_THREE = [m for n in (3, 4) for m in itertools.product((3, 4, 5), repeat=n)]


@pytest.mark.parametrize("m", AT_LEAST_THREE)
def test_space_is_one_dimensional_and_diagonal(m):
    spec = RingSpec(m)
    (B,) = linear_derivation_space(spec)
    t = B[0, 0] * m[0]
    assert t
    assert B == Matrix.diagonal(spec.field, [t * Fraction(1, mi) for mi in m])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_quadratic_space_is_scalar_plus_skew(n):
    spec = RingSpec((2,) * n)
    basis = linear_derivation_space(spec)
    assert len(basis) == 1 + n * (n - 1) // 2
    for B in basis:
        dec = decompose(LinearDerivation(spec, B))
        assert dec.skew.is_skew_symmetric()
        assert dec.skew + Matrix.scalar(spec.field, n, dec.alpha) == B


def test_mixed_exponents():
    # worked by hand: 2x1 d(x1) + 2x2 d(x2) + 3x3^2 d(x3) = 0 forces
    # d = diag(3t/2, 3t/2, t) plus a skew block in (x1, x2)
    spec = RingSpec((2, 2, 3))
    basis = linear_derivation_space(spec)
    assert len(basis) == 2
    for B in basis:
        assert LinearDerivation(spec, B).derivation.certified
    assert classify(LinearDerivation(spec, basis[0])).kind == "unclassified"
    with pytest.raises(UnsupportedShapeError):
        decompose(LinearDerivation(spec, basis[0]))


def test_validation_carries_residue():
    spec = RingSpec((3, 3, 3), FieldSpec(1))
    M = Matrix(spec.field, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(NotADerivationError) as info:
        LinearDerivation(spec, M)
    assert str(info.value.residue) == "3*x1^2*x2"
    with pytest.raises(ShapeError):
        LinearDerivation(spec, Matrix.identity(spec.field, 2))


def test_scalar_derivation_needs_uniform_exponents():
    assert scalar_derivation(RingSpec((3, 3, 3)), 2).matrix == Matrix.scalar(FieldSpec(4), 3, 2)
    with pytest.raises(NotADerivationError):
        scalar_derivation(RingSpec((3, 4, 3)), 1)


def test_classification():
    d = diagonal_derivation(RingSpec((3, 4, 5)), 6)
    c = classify(d)
    assert c.kind == "diagonal" and c.alpha == 6
    q = RingSpec((2, 2, 2))
    M = Matrix(q.field, [[2, 1, 0], [-1, 2, 3], [0, -3, 2]])
    c = classify(LinearDerivation(q, M))
    assert c.kind == "scalar+skew" and c.decomposition.alpha == 2
    assert c.decomposition.skew == Matrix(q.field, [[0, 1, 0], [-1, 0, 3], [0, -3, 0]])


def _nilpotent_by_iteration(d):
    """Independent route: d^n(x_i) = 0 for every generator."""
    n = d.spec.n
    return all(not compose_power(d.derivation, n, x) for x in d.spec.variables())


@pytest.mark.parametrize("n", [3, 4, 5])
@settings(max_examples=40)
@given(seed=st.integers(0, 10 ** 6))
def test_local_nilpotency_two_routes(n, seed):
    import random
    spec = RingSpec((2,) * n)
    d = random_linear_derivation(random.Random(seed), spec)
    nil = is_locally_nilpotent(d)
    assert nil == _nilpotent_by_iteration(d)
    dec = decompose(d)
    assert nil == (not dec.alpha and is_nilpotent(dec.skew)[0])


@pytest.mark.parametrize("d, expected", [
    (build_odd_family(3), True),
    (build_odd_family(5), True),
    (build_even_family(4), True),
    (rotation_skew_part(), False),
    (scalar_derivation(RingSpec((2, 2, 2)), 0), True),
    (diagonal_derivation(RingSpec((3, 4, 5)), 1), False),
])
def test_known_nilpotency(d, expected):
    assert is_locally_nilpotent(d) is expected
    assert _nilpotent_by_iteration(d) is expected


def test_nilpotency_index():
    assert nilpotency_index(build_odd_family(3)) == 3
    assert nilpotency_index(scalar_derivation(RingSpec((2, 2, 2)), 0)) == 1
    assert nilpotency_index(rotation_skew_part()) is None


@pytest.mark.parametrize("m", [(2, 2, 2), (3, 3, 3), (2, 2, 2, 2), (3, 4, 5)])
@settings(max_examples=25)
@given(seed=st.integers(0, 10 ** 6), s=st.integers(0, 5))
def test_powers_follow_matrix_powers(m, seed, s):
    import random
    spec = RingSpec(m)
    d = random_linear_derivation(random.Random(seed), spec)
    P = matrix_power(d.matrix, s)
    xs = spec.variables()
    for i, x in enumerate(xs):
        expected = spec.zero
        for j in range(spec.n):
            expected = expected + xs[j].scale(P[i, j])
        assert compose_power(d.derivation, s, x) == expected


@given(a=cyclonums(FieldSpec(4)), b=cyclonums(FieldSpec(4)))
def test_linear_derivations_form_a_vector_space(a, b):
    spec = RingSpec((2, 2, 2))
    d1, d2 = (LinearDerivation(spec, B) for B in linear_derivation_space(spec)[:2])
    combo = LinearDerivation(spec, d1.matrix.scale(a) + d2.matrix.scale(b))
    x = spec.variable(1)
    assert combo(x) == d1(x).scale(a) + d2(x).scale(b)
    assert (d1 + d2)(x) == d1(x) + d2(x)
    assert (d1 - d1).is_zero()
