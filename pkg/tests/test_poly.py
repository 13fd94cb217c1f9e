"""Exact polynomial arithmetic, parsing, and arc composition."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kuothom import (
    INF,
    ParseError,
    Polynomial,
    UniPoly,
    compose_arc,
    parse_polynomial,
    parse_unipoly,
)


def P(text: str, nvars: int | None = None) -> Polynomial:
    return parse_polynomial(text, nvars)


@st.composite
def polynomials(draw, nvars: int | None = None, max_degree: int = 4) -> Polynomial:
    n = nvars if nvars is not None else draw(st.integers(1, 3))
    terms: dict[tuple[int, ...], Fraction] = {}
    for _ in range(draw(st.integers(1, 5))):
        mono = [0] * n
        for _ in range(draw(st.integers(0, max_degree))):
            mono[draw(st.integers(0, n - 1))] += 1
        coeff = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 4)))
        key = tuple(mono)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Polynomial(n, terms)


@st.composite
def unipolys(draw, max_degree: int = 6) -> UniPoly:
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=0, max_size=max_degree + 1))
    return UniPoly([Fraction(c) for c in coeffs])


# -- construction and canonical form ----------------------------------------


def test_zero_coefficients_are_dropped():
    p = Polynomial(2, {(1, 0): Fraction(1), (0, 2): Fraction(0)})
    assert (0, 2) not in p.terms
    assert p == P("x", 2)


def test_like_terms_accumulate_in_constructor():
    p = Polynomial.from_terms(2, [((1, 0), 2), ((1, 0), -2), ((0, 1), 1)])
    assert p == P("y")


def test_immutability():
    p = P("x + y")
    with pytest.raises(AttributeError):
        p.nvars = 3


def test_equal_polynomials_hash_equal():
    a = P("x - y^2") + P("y^2")
    b = P("x", 2)
    assert a == b
    assert hash(a) == hash(b)


def test_variable_index_bounds():
    with pytest.raises(ValueError):
        Polynomial.variable(2, 2)
    with pytest.raises(ValueError):
        Polynomial(0, {})


# -- ring operations ---------------------------------------------------------


def test_add_cancellation():
    assert P("x - y^2") + P("y^2") == P("x", 2)


def test_add_identity():
    p = P("3*x^2 - y")
    assert p + Polynomial.zero(2) == p


def test_add_doubling():
    assert P("x") + P("x") == P("2*x")


def test_add_nvars_mismatch():
    with pytest.raises(ValueError):
        P("x", 1) + P("y", 2)


def test_mul_conjugate():
    assert P("x - y^2") * P("x + y^2") == P("x^2 - y^4")


def test_mul_identity():
    p = P("x^3 - 2*x*y")
    assert p * Polynomial.constant(2, 1) == p


def test_mul_variables():
    assert P("x", 2) * P("y") == P("x*y")


def test_scalar_mul_and_pow():
    assert 3 * P("x") == P("3*x")
    assert Fraction(1, 2) * P("2*y") == P("y")
    assert P("x + y") ** 2 == P("x^2 + 2*x*y + y^2")
    assert P("x", 2) ** 0 == Polynomial.constant(2, 1)


@given(polynomials(nvars=2), polynomials(nvars=2))
def test_mul_order_additivity(a, b):
    # ord(a*b) = ord(a) + ord(b); INF absorbs per the total-order convention
    prod = a * b
    if a.is_zero or b.is_zero:
        assert prod.order_at_origin == INF
    else:
        assert prod.order_at_origin == a.order_at_origin + b.order_at_origin


# -- differentiation ----------------------------------------------------------


def test_partial_examples():
    assert P("x - y^2").partial(1) == P("-2*y")
    assert P("x^2", 2).partial(0) == P("2*x", 2)
    assert P("y^3").partial(0) == Polynomial.zero(2)


def test_partial_index_out_of_range():
    with pytest.raises(ValueError):
        P("x").partial(1)


@given(polynomials(nvars=2), polynomials(nvars=2), st.integers(0, 1))
def test_leibniz_rule(a, b, i):
    assert (a * b).partial(i) == a.partial(i) * b + a * b.partial(i)


# -- order and jets ------------------------------------------------------------


def test_order_at_origin_examples():
    assert P("x - y^2").order_at_origin == 1
    assert P("x^2*y^3").order_at_origin == 5
    assert Polynomial.zero(2).order_at_origin == INF


def test_jet_examples():
    assert P("x + x^3", 2).jet(2) == P("x", 2)
    p = P("x - y^2 + x^5*y")
    assert p.jet(p.total_degree) == p
    assert p.jet(4) == P("x - y^2")


@given(polynomials(nvars=2), st.integers(0, 6))
def test_jet_idempotent(p, r):
    assert p.jet(r).jet(r) == p.jet(r)


# -- evaluation ---------------------------------------------------------------


def test_eval_exact_examples():
    assert P("x - y^2").eval_exact((1, 1)) == 0
    assert P("x^2", 2).eval_exact((Fraction(1, 2), 0)) == Fraction(1, 4)
    assert P("x - y^2").eval_exact((Fraction(1, 4), Fraction(1, 2))) == 0


def test_eval_dimension_mismatch():
    with pytest.raises(ValueError):
        P("x + y").eval_exact((1,))
    with pytest.raises(ValueError):
        P("x + y").eval_float((1.0, 2.0, 3.0))


@given(
    polynomials(nvars=2),
    st.fractions(min_value=-1, max_value=1, max_denominator=64),
    st.fractions(min_value=-1, max_value=1, max_denominator=64),
)
def test_eval_float_matches_exact(p, a, b):
    exact = p.eval_exact((a, b))
    approx = p.eval_float((float(a), float(b)))
    assert abs(approx - float(exact)) <= 1e-10 * max(1.0, abs(float(exact)))


# -- arc composition ------------------------------------------------------------


def test_compose_arc_direct():
    arc = (parse_unipoly("t"), parse_unipoly("t^2"))
    assert compose_arc(P("x - y^2"), arc) == parse_unipoly("t - t^4")


def test_compose_arc_cancellation():
    arc = (parse_unipoly("t^2"), parse_unipoly("t"))
    assert compose_arc(P("x - y^2"), arc).is_zero
    assert compose_arc(P("x^2", 2), arc) == parse_unipoly("t^4")


def test_compose_arc_dimension_mismatch():
    with pytest.raises(ValueError):
        compose_arc(P("x + y"), (parse_unipoly("t"),))


@given(polynomials(nvars=2), polynomials(nvars=2), unipolys(), unipolys())
def test_compose_arc_is_ring_homomorphism(a, b, u, v):
    arc = (u, v)
    assert compose_arc(a * b, arc) == compose_arc(a, arc) * compose_arc(b, arc)
    assert compose_arc(a + b, arc) == compose_arc(a, arc) + compose_arc(b, arc)


@given(polynomials(nvars=2), unipolys(), unipolys())
def test_compose_arc_cache_is_transparent(p, u, v):
    cache: dict = {}
    assert compose_arc(p, (u, v), cache) == compose_arc(p, (u, v))


def test_compose_arc_rational_coefficients():
    p = P("1/2*x^2 - 1/3*y")
    arc = (parse_unipoly("2*t"), parse_unipoly("3*t^2"))
    # 1/2*(2t)^2 - 1/3*(3t^2) = 2t^2 - t^2 = t^2
    assert compose_arc(p, arc) == parse_unipoly("t^2")


# -- UniPoly -------------------------------------------------------------------


def test_unipoly_trailing_zeros_trimmed():
    assert UniPoly([1, 0, 0]).coeffs == (Fraction(1),)
    assert UniPoly([0, 0]).is_zero


def test_unipoly_order_and_degree():
    q = parse_unipoly("t^2 - t^5")
    assert q.order == 2
    assert q.degree == 5
    assert UniPoly.zero().order == INF


def test_unipoly_arithmetic():
    a = parse_unipoly("1 + t")
    b = parse_unipoly("1 - t")
    assert a * b == parse_unipoly("1 - t^2")
    assert a + b == parse_unipoly("2")
    assert a - a == UniPoly.zero()
    assert a ** 2 == parse_unipoly("1 + 2*t + t^2")


def test_unipoly_evaluation():
    q = parse_unipoly("t - t^4")
    assert q.eval_exact(Fraction(1, 2)) == Fraction(7, 16)
    assert abs(q.eval_float(0.5) - 7 / 16) < 1e-15


# -- parsing and printing --------------------------------------------------------


def test_parse_aliases_and_indexed_names():
    assert P("x2", 3) == Polynomial.variable(3, 1)
    assert P("y", 3) == Polynomial.variable(3, 1)
    assert P("x5") == Polynomial.variable(5, 4)


def test_parse_infers_nvars():
    assert P("x - y^2").nvars == 2
    assert P("z").nvars == 3
    assert P("7").nvars == 1


def test_parse_rational_literals():
    assert P("1/2*x") == Fraction(1, 2) * P("x")
    with pytest.raises(ParseError):
        P("1/0")


def test_parse_rejects_implicit_multiplication():
    with pytest.raises(ParseError):
        P("2x")
    with pytest.raises(ParseError):
        P("x y")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        P("x +\n* y")
    assert info.value.line == 2
    assert info.value.column == 1


def test_parse_unknown_variable():
    with pytest.raises(ParseError):
        P("q + 1")
    with pytest.raises(ParseError):
        P("x3", 2)


def test_unary_minus_binds_below_power():
    # -x^2 is -(x^2), and (-x)^2 is x^2
    assert P("-x^2") == -P("x^2")
    assert P("(-x)^2") == P("x^2")


@given(polynomials())
def test_to_string_round_trip(p):
    assert parse_polynomial(p.to_string(), p.nvars) == p


def test_to_string_many_variables():
    p = Polynomial.variable(5, 4) + Polynomial.variable(5, 0)
    text = p.to_string()
    assert "x5" in text and "x1" in text
    assert parse_polynomial(text, 5) == p


def test_zero_prints_as_zero():
    assert Polynomial.zero(3).to_string() == "0"
    assert UniPoly.zero().to_string() == "0"
