from __future__ import annotations

from fractions import Fraction

import pytest

from fantree.errors import InputError, NegativeExponent, UnknownElement
from fantree.multiplier import (
    Monomial,
    enumerate_xi_values,
    ideal_presentation,
    jumping_data,
    jumping_numbers,
    lct,
    membership,
    membership_by_values,
    monomial_membership,
    polynomial_generators,
    same_ideal,
    same_polynomial_ideal,
    shift_by_period,
    xi_of_monomial,
)
from fantree.poly import ideal_contains, parse_poly
from fantree.resolution import Curve, resolve
from fantree.tree_functions import build_valuation_table

from example_data import CUSP, F1, F2, IDEALS, JUMPING_NUMBERS, reduced_threshold


@pytest.fixture(scope="module")
def example():
    return resolve(Curve.of(parse_poly(F1), parse_poly(F2)))


@pytest.fixture(scope="module")
def table(example):
    return build_valuation_table(example.tree)


def _monomials(text: str) -> list[Monomial]:
    return [Monomial.parse(token) for token in text.split()]


def test_monomial_parse_and_format():
    m = Monomial.parse("x^2*y z")
    assert m.as_dict() == {"x": 2, "y": 1, "z": 1}
    assert m.format(("z", "y", "x")) == "z*y*x^2"
    assert str(Monomial()) == "1"
    assert Monomial.parse("x").divides(m)
    with pytest.raises(InputError):
        Monomial.parse("x^-1")
    with pytest.raises(NegativeExponent):
        Monomial.of({"x": 1, "z": -2})


def test_log_canonical_threshold(table):
    assert lct(table) == Fraction(5, 21)


def test_reduced_thresholds_read_off_the_rows(table):
    for a in range(4):
        for b in range(4):
            for c in range(4):
                m = Monomial.of({"x": a, "y": b, "z": c})
                assert xi_of_monomial(table, m, reduced=True) == reduced_threshold(a, b, c)


def test_jumping_numbers_below_one(table):
    assert jumping_numbers(table, Fraction(1), inclusive=False) == JUMPING_NUMBERS


def test_jumping_numbers_match_direct_enumeration(table):
    values = [v for v in enumerate_xi_values(table, Fraction(1), reduced=True) if v < 1]
    assert values == JUMPING_NUMBERS


def test_jumping_data_records_witnesses(table):
    first = jumping_data(table, Fraction(1, 3))
    assert [j.xi for j in first] == [Fraction(5, 21), Fraction(1, 3)]
    assert first[0].witnesses == (Monomial(),)


@pytest.mark.parametrize("xi", list(IDEALS))
def test_ideal_presentations(example, table, xi):
    xi_value = Fraction(xi)
    pres = ideal_presentation(table, xi_value)
    assert pres.reduced
    assert pres.alphabet == ("x", "y", "z")
    expected = _monomials(IDEALS[xi])
    for m in expected:
        assert monomial_membership(table, m, xi_value), m
        assert pres.contains(m), m
    # x, y and z are weighted homogeneous, so equality in Q[x, y] is equality of local ideals
    assert same_polynomial_ideal(example, pres.monomials(), expected)
    for g in pres.generators:
        assert xi_value < g.xi <= xi_value + 1
        assert monomial_membership(table, g.monomial, xi_value)


def test_formal_generators_can_be_polynomially_redundant(example, table):
    pres = ideal_presentation(table, Fraction(13, 16))
    z3 = Monomial.parse("z^3")
    assert z3 in pres.monomials()
    assert not same_ideal(pres.monomials(), _monomials(IDEALS["13/16"]))
    listed = polynomial_generators(example, _monomials("y^3*z x*y^2*z x^4*z"))
    assert ideal_contains(listed, polynomial_generators(example, [z3]))
    assert not same_polynomial_ideal(example, [Monomial.parse("z")], [Monomial.parse("x")])


def test_generators_are_sorted_by_degree(table):
    pres = ideal_presentation(table, Fraction(17, 33))
    degrees = [g.monomial.degree for g in pres.generators]
    assert degrees == sorted(degrees)
    assert pres.generators[0].monomial == Monomial.parse("x*z")
    assert pres.generators[-1].monomial == Monomial.parse("x^4")


def test_ideal_rejects_nonpositive_xi(table):
    with pytest.raises(InputError):
        ideal_presentation(table, Fraction(0))


def test_threads_do_not_change_the_result(table):
    one = ideal_presentation(table, Fraction(31, 33), threads=1)
    four = ideal_presentation(table, Fraction(31, 33), threads=4)
    assert one == four


def test_membership_of_the_curvetta(example, table):
    z = parse_poly(CUSP)
    result = membership(example, z, Fraction(17, 33))
    assert not result
    assert result.witness == "R3"
    assert membership(example, z, Fraction(10, 21))
    assert monomial_membership(table, Monomial.parse("z"), Fraction(17, 33)).witness == "R3"


def test_membership_of_the_branches(example):
    f1, f2 = parse_poly(F1), parse_poly(F2)
    assert membership(example, f1, Fraction(1, 2))
    assert membership(example, f1 * f2, Fraction(1))
    result = membership(example, parse_poly("x^20"), Fraction(1))
    assert not result
    assert result.witness == "C1"


def test_membership_by_values_needs_every_row(table):
    with pytest.raises(UnknownElement):
        membership_by_values(table, {"R2": 100}, Fraction(1, 2))


def test_periodicity(table):
    upto_two = set(jumping_numbers(table, Fraction(2), reduced=False))
    assert Fraction(1) in upto_two
    for xi in [*JUMPING_NUMBERS, Fraction(1)]:
        assert xi + 1 in upto_two
        shifted = shift_by_period(ideal_presentation(table, xi, reduced=False), 1)
        direct = ideal_presentation(table, xi + 1, reduced=False)
        assert shifted.xi == direct.xi
        assert same_ideal(shifted.monomials(), direct.monomials())


def test_period_shift_of_a_reduced_presentation(table):
    reduced = ideal_presentation(table, Fraction(5, 21))
    assert reduced.reduced
    shifted = shift_by_period(reduced, 2)
    assert not shifted.reduced
    direct = ideal_presentation(table, Fraction(5, 21) + 2, reduced=False)
    assert same_ideal(shifted.monomials(), direct.monomials())
    with pytest.raises(InputError):
        shift_by_period(reduced, 0)


def test_non_reduced_curve_uses_the_branch_conditions():
    res = resolve(Curve.of(parse_poly(CUSP), mults=[2]))
    table = build_valuation_table(res.tree)
    assert not table.reduced
    assert jumping_numbers(table, Fraction(1), inclusive=False) == [
        Fraction(5, 12),
        Fraction(1, 2),
        Fraction(11, 12),
    ]
    with pytest.raises(InputError):
        ideal_presentation(table, Fraction(1, 2), reduced=True)
