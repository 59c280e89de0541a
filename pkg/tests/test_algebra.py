from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadind.algebra import (
    InexactDivision,
    Polynomial,
    VarSet,
    VarSetMismatch,
    coeff_extract,
    format_rational,
    monomials_of_degree,
    parse_polynomial,
    parse_rational,
    rat_arith,
    substitute,
)

VS = VarSet.of("x", "y", "z")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, rationals, max_size=6).map(lambda t: Polynomial(VS, t))
points = st.fixed_dictionaries({n: rationals for n in VS.names})


# -- scalars -------------------------------------------------------------


@pytest.mark.parametrize(
    "text, value",
    [("5", 5), ("-3/7", Fraction(-3, 7)), ("4/2", 2), ("-0", 0), (" 12 / 8 ", Fraction(3, 2))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value
    assert type(parse_rational(text)) is type(value)


@pytest.mark.parametrize("text", ["", "1.5", "a", "1/-2", "--1", "1/2/3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "div")


@given(rationals, rationals)
def test_rat_arith_matches_fraction(a, b):
    assert rat_arith(a, b, "add") == a + b
    assert rat_arith(a, b, "sub") == a - b
    assert rat_arith(a, b, "mul") == a * b
    if b:
        assert rat_arith(a, b, "div") == a / b


def test_rat_arith_canonical_int():
    assert type(rat_arith(Fraction(1, 2), Fraction(3, 2), "add")) is int


@given(rationals)
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


# -- variable sets -------------------------------------------------------


def test_varset_rejects_duplicates():
    with pytest.raises(ValueError):
        VarSet.of("x", "x")


def test_varset_mismatch():
    other = VarSet.of("x", "y")
    with pytest.raises(VarSetMismatch):
        VS.var("x") + other.var("x")


# -- ring axioms -----------------------------------------------------------


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == VS.zero()
    assert p * VS.one() == p


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


def _naive_mul(p, q):
    # oracle: schoolbook convolution on raw term lists
    out = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


@given(polys, polys)
def test_multiplication_matches_convolution(p, q):
    assert dict((p * q).terms) == _naive_mul(p, q)


@given(st.lists(rationals, min_size=1, max_size=4), st.integers(1, 3))
def test_homogeneity_of_products(coeffs, d):
    lin = sum((VS.var(n) * c for n, c in zip(VS.names, coeffs)), VS.zero())
    if lin:
        assert (lin**d).is_homogeneous()
        assert (lin**d).total_degree() == d


@given(polys, polys, rationals)
def test_substitution_commutes_with_products(p, q, v):
    b = {"x": VS.var("y") * v + 1}
    assert substitute(p * q, b) == substitute(p, b) * substitute(q, b)


@settings(max_examples=60)
@given(polys, polys)
def test_exact_division_round_trip(p, q):
    if q:
        assert (p * q).exact_div(q) == p


def test_inexact_division():
    x, y = VS.vars("x", "y")
    with pytest.raises(InexactDivision):
        (x * x + y).exact_div(x)
    with pytest.raises(ZeroDivisionError):
        x.exact_div(VS.zero())


@given(polys)
def test_render_parse_round_trip(p):
    assert parse_polynomial(str(p), VS) == p


def test_canonical_rendering():
    p = parse_polynomial("5 - z/2 + 3*x^2*y", VS)
    assert str(p) == "3*x^2*y - 1/2*z + 5"
    assert str(VS.zero()) == "0"
    assert str(-VS.var("x")) == "-x"


def test_parse_errors():
    for bad in ["", "x +", "x ** 2", "x / y", "(x", "x $ y"]:
        with pytest.raises(ValueError):
            parse_polynomial(bad, VS)
    with pytest.raises(KeyError):
        parse_polynomial("w", VS)


def test_coeff_extract():
    p = parse_polynomial("3*x^2*y + x^2*z - 7*x*y + y", VS)
    assert coeff_extract(p, {"x": 2}) == parse_polynomial("3*y + z", VS)
    assert coeff_extract(p, {"x": 0}) == VS.var("y")
    assert coeff_extract(p, {"x": 1, "y": 1}) == -7
    assert coeff_extract(p, {"x": 5}).is_zero()


def test_monomials_of_degree_count():
    assert len(monomials_of_degree(3, 4)) == 15
    assert len(monomials_of_degree(6, 2)) == 21


def test_grlex_leading_term():
    p = parse_polynomial("x*z^2 + x^2*y + y^3", VS)
    assert p.leading_term()[0] == (2, 1, 0)
