import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rnsym.errors import ParseError
from rnsym.expr import parse_element, parse_vector_field, tokenize
from rnsym.lie import LieAction, brst_differential, su2
from rnsym.models import affine, sphere_even, torus

from helpers import random_element


def test_juxtaposition_and_fractions():
    m = affine(2)
    e = parse_element("1/2 x^2 dy - 3*y dx", m.algebra)
    assert e == m.el("x") ** 2 * m.el("dy") * Fraction(1, 2) - m.el("y") * m.el("dx") * 3


def test_parentheses_powers_and_unary_minus():
    m = affine(2)
    x, y = m.el("x"), m.el("y")
    assert parse_element("-(x + y)^2", m.algebra) == -((x + y) * (x + y))
    assert parse_element("(x)(y)", m.algebra) == x * y


def test_odd_generators_anticommute_when_parsed():
    t = torus(2)
    assert parse_element("dphi2 dphi1", t.algebra) == -parse_element("dphi1 dphi2", t.algebra)
    assert parse_element("dphi1^2", t.algebra).is_zero()


def test_d_operator_uses_the_model_differential():
    s = sphere_even(2)
    assert parse_element("d(y)", s.algebra, s.d) == s.el("x") ** 2
    with pytest.raises(ParseError, match="not available"):
        parse_element("d(y)", s.algebra)


@pytest.mark.parametrize("text,column,fragment", [
    ("x + ", 5, "expected a term"),
    ("x $ y", 3, "unexpected character"),
    ("x + q", 5, "unknown generator"),
    ("(x + y", 7, "expected ')'"),
    ("1/0 x", 3, "zero denominator"),
    ("x^-1", 3, "non-negative"),
    ("", 1, "empty"),
])
def test_errors_carry_columns(text, column, fragment):
    m = affine(2)
    with pytest.raises(ParseError) as err:
        parse_element(text, m.algebra, path="H")
    assert err.value.column == column
    assert fragment in str(err.value)
    assert str(err.value).startswith(f"H: col {column}: ")


def test_tokenizer_columns():
    toks = tokenize("  12 dx")
    assert [(t.kind, t.text, t.col) for t in toks] == [("num", "12", 3), ("name", "dx", 6), ("end", "", 8)]


def test_vector_fields():
    m = affine(2)
    X = parse_vector_field("x Dy - y Dx", m)
    assert X == m.vf({"Dx": -m.coord("y"), "Dy": m.coord("x")})
    with pytest.raises(ParseError, match="no vector-field factor"):
        parse_vector_field("x y", m)
    with pytest.raises(ParseError):
        parse_vector_field("Dx Dy", m)
    with pytest.raises(ParseError, match="not allowed"):
        parse_vector_field("d(x) Dy", m)
    with pytest.raises(ParseError, match="unknown field"):
        parse_vector_field("Dw", m)


def _round_trip_algebras():
    m = affine(3)
    x, y, z = (m.coord(c) for c in "xyz")
    act = LieAction(su2(), m, [m.vf({"Dy": z, "Dz": -y}), m.vf({"Dz": x, "Dx": -z}),
                               m.vf({"Dx": y, "Dy": -x})])
    return [affine(2).algebra, torus(3).algebra, sphere_even(2).algebra,
            brst_differential(su2(), act).algebra]


ALGEBRAS = _round_trip_algebras()


@given(st.integers(0, 10_000), st.sampled_from(range(len(ALGEBRAS))), st.integers(0, 4))
def test_printed_elements_parse_back(seed, which, degree):
    alg = ALGEBRAS[which]
    e = random_element(random.Random(seed), alg, degree, 2, 4)
    assert parse_element(str(e), alg) == e
