from __future__ import annotations

from fractions import Fraction

import pytest

from fantree.errors import CommonFactor, DocumentError, InputError, NegativeExponent, ZeroPolynomial
from fantree.lattice import LatticeVec, Matrix2
from fantree.poly import (
    BiPoly,
    exact_div_count,
    exceptional_split,
    have_common_factor,
    intersection_multiplicity,
    monomial_pullback,
    monomial_pushforward,
    ord_v,
    parse_poly,
    poly_from_json,
    poly_to_json,
    resultant_y,
    shear_x,
    shift_y,
    substitute_y,
    univariate_factorization,
    univariate_order,
    univariate_rational_roots,
)

from example_data import CUSP, F1, F2


def test_parse_expression_and_triples_agree():
    f = parse_poly("y^2 + x^3")
    assert f == poly_from_json([[0, 2, "1"], [3, 0, "1"]])
    assert parse_poly("2x y + 1/2 y^2") == BiPoly({(1, 1): 2, (0, 2): Fraction(1, 2)})
    assert str(f) == "y^2 + x^3"


def test_parse_with_renamed_coordinates():
    assert parse_poly("v^2 + u^3", coordinates=("u", "v")) == parse_poly(CUSP)


@pytest.mark.parametrize("source", ["x + q", "1/x"])
def test_parse_rejects(source):
    with pytest.raises(DocumentError):
        parse_poly(source)


def test_json_triples_are_canonical():
    f = parse_poly("x^3 - 1/2*y^2")
    assert poly_to_json(f) == [[0, 2, "-1/2"], [3, 0, "1"]]
    with pytest.raises(DocumentError):
        poly_from_json([[0, -1, "1"]])


def test_arithmetic():
    x, y = BiPoly.x(), BiPoly.y()
    f = (y**2 + x**3) ** 2 + x**6 * y
    assert f == parse_poly(F1)
    assert f - f == BiPoly.zero()
    assert (x + 1) * (x - 1) == x**2 - 1


def test_negative_exponents_are_input_errors():
    with pytest.raises(NegativeExponent):
        BiPoly({(0, -1): 1})
    with pytest.raises(NegativeExponent):
        BiPoly.x() ** -1
    with pytest.raises(NegativeExponent):
        monomial_pullback(BiPoly.x(), Matrix2(LatticeVec(1, -1), LatticeVec(0, 1)))
    with pytest.raises(InputError):
        exact_div_count(BiPoly.x(), BiPoly.constant(2))


def test_ord_v_and_exceptional_split():
    f = parse_poly(CUSP)
    assert ord_v(f, LatticeVec(2, 3)) == 6
    assert ord_v(f, LatticeVec(1, 1)) == 2
    a, b, core = exceptional_split(parse_poly("x^2*y^3 + x^3*y^4"))
    assert (a, b) == (2, 3)
    assert core == parse_poly("1 + x*y")
    with pytest.raises(ZeroPolynomial):
        ord_v(BiPoly.zero(), LatticeVec(1, 1))


def test_substitutions():
    assert shift_y(parse_poly("y^2"), 1) == parse_poly("y^2 + 2*y + 1")
    assert substitute_y(parse_poly("x + y^2"), parse_poly("y + x")) == parse_poly("x + (y + x)^2")
    assert shear_x(parse_poly("x"), 2) == parse_poly("x + 2*y")


def test_pullback_and_pushforward_on_the_cusp():
    f = parse_poly(CUSP)
    chart = Matrix2(LatticeVec(2, 3), LatticeVec(1, 2))
    pulled = monomial_pullback(f, chart)
    assert pulled == parse_poly("x^6*y^4 + x^6*y^3")
    assert monomial_pushforward(exceptional_split(pulled)[2], chart) == f


def test_univariate_factorization():
    report = univariate_factorization([-2, 0, 1])
    assert report.roots == ()
    assert report.nonlinear == (((Fraction(-2), Fraction(0), Fraction(1)), 1),)
    assert report.cofactor_degree == 2
    assert univariate_factorization([0, 0, 1]).roots == ((Fraction(0), 2),)
    assert univariate_factorization([-1, 0, 1]).roots == ((Fraction(-1), 1), (Fraction(1), 1))
    assert univariate_order([0, 0, 3, 1]) == 2


def test_rational_roots_report_the_cofactor_degree():
    assert univariate_rational_roots([1, -2, 2, -2, 1]) == ([(Fraction(1), 2)], 2)
    assert univariate_rational_roots([-2, 0, 1]) == ([], 2)
    assert univariate_rational_roots([5]) == ([], 0)


def test_resultant_in_y():
    res = resultant_y(parse_poly("y - x^2"), parse_poly("y - x^3"))
    assert res == [0, 0, 1, -1]
    assert univariate_order(resultant_y(parse_poly(CUSP), parse_poly(F2))) == 9
    with pytest.raises(CommonFactor):
        resultant_y(parse_poly(CUSP), parse_poly(CUSP) * parse_poly("y"))


def test_division_counts_and_common_factors():
    f = parse_poly(CUSP)
    assert exact_div_count(f**2 * BiPoly.x(), f) == 2
    assert exact_div_count(BiPoly.x(), f) == 0
    assert have_common_factor(f * BiPoly.y(), f * BiPoly.x())
    assert not have_common_factor(parse_poly(F1), parse_poly(F2))


@pytest.mark.parametrize(
    ("f", "g", "expected"),
    [
        ("y - x^2", "y", 2),
        (CUSP, "y", 3),
        (CUSP, "x", 2),
        (CUSP, "y^2 - x^3", 6),
        (F1, F2, 18),
    ],
)
def test_intersection_multiplicity(f, g, expected):
    assert intersection_multiplicity(parse_poly(f), parse_poly(g)) == expected


def test_intersection_needs_coprime_inputs():
    f = parse_poly(CUSP)
    with pytest.raises(CommonFactor):
        intersection_multiplicity(f, f * BiPoly.x())
