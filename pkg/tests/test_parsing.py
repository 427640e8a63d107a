import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fermatder.field import FieldSpec, imaginary_unit
from fermatder.parsing import (
    GrammarError,
    LexicalError,
    LiteralError,
    ParseError,
    VariableIndexError,
    parse_candidates,
    parse_coefficient,
    parse_expression,
    parse_images,
    parse_matrix,
    parse_monomial,
    parse_ring,
)
from fermatder.ring import RingSpec
from fermatder.sampling import random_element

from conftest import cyclonums, ring_elems


def test_relation_parses_to_zero(b3_2):
    assert parse_expression("x1^2 + x2^2 + x3^2", b3_2) == b3_2.zero


def test_two_term_element(b3_2):
    f = parse_expression("2/3*x1*x2 - i*x3", b3_2)
    i = imaginary_unit(b3_2.field)
    x1, x2, x3 = b3_2.variables()
    assert f == (x1 * x2).scale(Fraction(2, 3)) - x3.scale(i)
    assert len(f) == 2


def test_precedence(b3_2):
    x1, x2, x3 = b3_2.variables()
    assert parse_expression("-x1^2", b3_2) == -(x1 ** 2)
    assert parse_expression("2x1x2", b3_2) == (x1 * x2).scale(2)
    assert parse_expression("x1 - x2 - x3", b3_2) == x1 - x2 - x3
    assert parse_expression("(x1 + x2)^2 / 2", b3_2) == ((x1 + x2) ** 2).scale(Fraction(1, 2))
    assert parse_expression("x1*-x2", b3_2) == -(x1 * x2)
    assert parse_expression("x3^3", b3_2) == x3 ** 3


@pytest.mark.parametrize("text, cls, offset", [
    ("x4", VariableIndexError, 0),
    ("x1 + x0", VariableIndexError, 5),
    ("x1 + (x2", GrammarError, 8),
    ("x1 + x2)", GrammarError, 7),
    ("x1 ^ x2", GrammarError, 5),
    ("x1 / x2", GrammarError, 5),
    ("x1 / 0", GrammarError, 3),
    ("x1 + ", GrammarError, 5),
    ("x1 $ 2", LexicalError, 3),
    ("y1", LexicalError, 0),
])
def test_error_classes_and_positions(b3_2, text, cls, offset):
    with pytest.raises(cls) as info:
        parse_expression(text, b3_2)
    err = info.value
    assert isinstance(err, ParseError)
    assert err.offset == offset and err.line == 1 and err.column == offset + 1
    assert f"column {offset + 1}" in str(err)


def test_multiline_positions(b3_2):
    with pytest.raises(LexicalError) as info:
        parse_expression("x1 +\n  x2 # x3", b3_2)
    assert (info.value.line, info.value.column) == (2, 6)


def test_imaginary_literal_needs_conductor_divisible_by_four():
    with pytest.raises(LiteralError):
        parse_coefficient("1 + i", FieldSpec(3))
    assert parse_coefficient("1 + w", FieldSpec(3)) == FieldSpec(3).element([1, 1])


@pytest.mark.parametrize("k", [1, 3, 4, 5, 12])
@given(data=st.data())
def test_coefficient_round_trip(k, data):
    c = data.draw(cyclonums(FieldSpec(k)))
    assert parse_coefficient(str(c), FieldSpec(k)) == c


@pytest.mark.parametrize("m, k", [((2, 2, 2), 4), ((3, 4, 5), 3), ((2, 2, 2, 2), 12), ((2, 3, 2), 1)])
def test_expression_round_trip_500(m, k):
    rng = random.Random(f"{m}{k}")
    spec = RingSpec(m, FieldSpec(k))
    for _ in range(500):
        f = random_element(rng, spec, rng.randint(0, 6), 5)
        assert parse_expression(str(f), spec) == f


@given(ring_elems(RingSpec((2, 2, 2)), 5, 5))
def test_expression_round_trip_hypothesis(f):
    assert parse_expression(str(f), f.spec) == f


def test_matrix_format():
    qi = FieldSpec(4)
    M = parse_matrix("0,0,-1; 0,0,-i; 1,i,0", qi)
    i = imaginary_unit(qi)
    assert M.shape == (3, 3) and M[1, 2] == -i and M[2, 1] == i
    with pytest.raises(GrammarError):
        parse_matrix("1,2;3", qi)
    with pytest.raises(GrammarError):
        parse_matrix("1,2;;3,4", qi)
    with pytest.raises(VariableIndexError) as info:
        parse_matrix("1,x1", qi)
    assert info.value.offset == 2


def test_images_format(b3_2):
    imgs = parse_images("d(x1)=x2; d(x2)=-x1; d(x3)=0", b3_2)
    x1, x2, _ = b3_2.variables()
    assert imgs == [x2, -x1, b3_2.zero]
    with pytest.raises(GrammarError):
        parse_images("d(x1)=x2; d(x2)=-x1", b3_2)
    with pytest.raises(GrammarError):
        parse_images("d(x1)=x2; d(x1)=0; d(x3)=0", b3_2)
    with pytest.raises(VariableIndexError):
        parse_images("d(x1)=0; d(x2)=0; d(x3)=0; d(x4)=0", b3_2)
    with pytest.raises(VariableIndexError) as info:
        parse_images("d(x1)=x5; d(x2)=0; d(x3)=0", b3_2)
    assert info.value.offset == 6


def test_monomials_candidates_rings(b3_2):
    assert parse_monomial("x1^2*x3", b3_2) == (2, 0, 1)
    with pytest.raises(GrammarError):
        parse_monomial("x1 + x2", b3_2)
    with pytest.raises(GrammarError):
        parse_monomial("2*x1", b3_2)
    assert parse_candidates("1, 2, 1/2, i", b3_2.field)[2] == Fraction(1, 2)
    assert parse_ring("n=3;m=2,2,2;field=4") == b3_2
    assert parse_ring("n=4;m=3") == RingSpec((3, 3, 3, 3))
    assert parse_ring("m=3,4,5;field=1") == RingSpec((3, 4, 5), FieldSpec(1))
    for bad in ("n=3;m=2,2", "n=3", "n=3;m=a", "n=3;m=2;q=1", "m=1,2,3", "m=2,2,2;field=0"):
        with pytest.raises(GrammarError):
            parse_ring(bad)
