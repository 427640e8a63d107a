import pytest
from hypothesis import given, strategies as st

from fermatder.derivation import (
    ArityError,
    CertificationRequiredError,
    Derivation,
    NotADerivationError,
    apply,
    compose_power,
    generator_dij,
    generator_epsilon,
    is_homogeneous_preserving,
    is_well_defined,
    triangular_system,
    verify_triangular_vanishing,
    well_definedness_residue,
)
from fermatder.exactla import nullspace
from fermatder.ring import RingSpec

from conftest import ring_elems

SPECS = [RingSpec(m) for m in [(2, 2, 2), (3, 3, 3), (2, 3, 4), (2, 2, 2, 2), (5, 3, 4, 3)]]


def _generators(spec):
    return [generator_epsilon(spec)] + [
        generator_dij(spec, i, j) for i in range(1, spec.n + 1) for j in range(i + 1, spec.n + 1)
    ]


@pytest.mark.parametrize("spec", SPECS)
def test_generators_are_certified(spec):
    for g in _generators(spec):
        assert g.certified
        assert not well_definedness_residue(g.images, spec)


def test_generator_images(b3_2):
    assert str(generator_dij(b3_2, 1, 3)) == "d(x1)=-2*x3; d(x2)=0; d(x3)=2*x1"
    spec = RingSpec((3, 4, 5))
    assert str(generator_epsilon(spec)) == "d(x1)=1/3*x1; d(x2)=1/4*x2; d(x3)=1/5*x3"
    with pytest.raises(IndexError):
        generator_dij(spec, 2, 2)


def _random_derivation(data, spec):
    """Ring-linear combination of generators: always a derivation."""
    d = None
    for g in _generators(spec):
        c = data.draw(ring_elems(spec, 2, 2))
        term = Derivation(spec, [c * img for img in g.images])
        d = term if d is None else d + term
    return d


@pytest.mark.parametrize("spec", SPECS[:4])
@given(data=st.data())
def test_leibniz_rule(spec, data):
    d = _random_derivation(data, spec)
    assert d.certified
    f = data.draw(ring_elems(spec, 3))
    g = data.draw(ring_elems(spec, 3))
    assert apply(d, f * g) == apply(d, f) * g + f * apply(d, g)
    assert apply(d, f + g) == apply(d, f) + apply(d, g)
    assert apply(d, spec.constant(7)) == spec.zero


def test_residue_of_an_ill_defined_map():
    spec = RingSpec((3, 3, 3))
    x1, x2, _ = spec.variables()
    d = Derivation(spec, [x2, spec.zero, spec.zero])
    assert not d.certified
    assert str(d.residue) == "3*x1^2*x2"
    assert not is_well_defined(d.images)
    with pytest.raises(CertificationRequiredError):
        apply(d, x1)
    err = NotADerivationError(d.residue)
    assert err.residue == d.residue and "3*x1^2*x2" in str(err)


def test_arity_checks(b3_2):
    with pytest.raises(ArityError):
        well_definedness_residue([b3_2.zero] * 2, b3_2)
    with pytest.raises(ArityError):
        well_definedness_residue([])
    d = generator_epsilon(b3_2)
    with pytest.raises(ArityError):
        apply(d, RingSpec((3, 3, 3)).variable(1))


def test_compose_power(b3_2):
    x1, x2, x3 = b3_2.variables()
    d = generator_dij(b3_2, 1, 2)  # x1 -> -2 x2, x2 -> 2 x1
    assert compose_power(d, 0, x1) == x1
    assert compose_power(d, 2, x1) == x1.scale(-4)
    assert compose_power(d, 4, x1) == x1.scale(16)
    assert compose_power(d, 3, x3) == b3_2.zero
    with pytest.raises(ValueError):
        compose_power(d, -1, x1)


@pytest.mark.parametrize("m", [(2, 2, 2), (3, 3, 3), (2, 2, 2, 2), (2, 3, 4), (4, 4, 4, 4)])
@pytest.mark.parametrize("bound", [0, 1, 2])
def test_triangular_derivations_vanish(m, bound):
    spec = RingSpec(m)
    assert verify_triangular_vanishing(spec, bound)
    M, unknowns = triangular_system(spec, bound)
    assert M.cols == len(unknowns)
    assert nullspace(M) == []


def test_dropping_the_triangular_shape_admits_derivations(b3_2):
    # negative control: d_12 has d(x1) nonconstant, so it is outside the triangular family
    d = generator_dij(b3_2, 1, 2)
    assert d.certified and not d.images[0].is_constant()


def test_homogeneity_preservation(b3_2):
    for k in range(4):
        assert is_homogeneous_preserving(generator_dij(b3_2, 1, 2), k)
        assert is_homogeneous_preserving(generator_epsilon(b3_2), k)
    mixed = RingSpec((2, 3, 3))
    # d_12 maps x1 -> -3 x2^2 and x2 -> 2 x1: degrees shift
    assert not is_homogeneous_preserving(generator_dij(mixed, 1, 2), 1)
