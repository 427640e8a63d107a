"""Shared hypothesis strategies and numeric oracles."""
from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from fermatder.field import CycloNum, FieldSpec
from fermatder.ring import RingElem, RingSpec

settings.register_profile(
    "default", deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

CONDUCTORS = (1, 3, 4, 5, 8, 12)


def fractions(bound: int = 5):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, 4))


def cyclonums(field: FieldSpec, bound: int = 5):
    return st.lists(fractions(bound), min_size=field.degree, max_size=field.degree).map(field.element)


def ring_elems(spec: RingSpec, max_terms: int = 4, max_exp: int = 3):
    """Arbitrary raw polynomials pushed through normal_form."""
    exps = st.tuples(*[st.integers(0, max_exp)] * spec.n)
    terms = st.lists(st.tuples(exps, cyclonums(spec.field, 3)), max_size=max_terms)
    from fermatder.ring import normal_form
    return terms.map(lambda t: normal_form(t, spec))


def to_complex(x: CycloNum) -> complex:
    """Evaluate at zeta_k = exp(2 pi i / k) in floating point (independent oracle)."""
    z = cmath.exp(2j * cmath.pi / x.field.conductor)
    return sum(float(c) * z ** j for j, c in enumerate(x.coords))


@pytest.fixture
def qi() -> FieldSpec:
    return FieldSpec(4)


@pytest.fixture
def b3_2(qi) -> RingSpec:
    return RingSpec((2, 2, 2), qi)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
