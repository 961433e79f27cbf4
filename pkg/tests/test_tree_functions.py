from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from fantree import tree_functions
from fantree.errors import InputError, InvariantViolation
from fantree.oracles import resultant_intersection
from fantree.poly import BiPoly, parse_poly
from fantree.resolution import Curve, element_polynomial, resolve
from fantree.tree_functions import (
    TreePoint,
    ValuationRow,
    ValuationTable,
    build_decoration_table,
    build_valuation_table,
    canonical,
    intersection_matrix,
    intersection_number,
    log_discrepancy_by_index,
    log_discrepancy_propagated,
    meet,
    multiplicity,
    tripod_center,
    valuation,
)

from example_data import COLUMNS, CUSP, F1, F2, TABLE


@pytest.fixture(scope="module")
def example():
    return resolve(Curve.of(parse_poly(F1), parse_poly(F2)))


def _random_curve(rng: random.Random) -> Curve:
    """Products of y^q + c*x^p (p, q coprime) with terms above the Newton polygon added."""
    seen: set[tuple[int, int, int]] = set()
    polys: list[BiPoly] = []
    for _ in range(rng.randint(1, 3)):
        p, q = rng.choice([(3, 2), (5, 2), (5, 3), (7, 3), (4, 3), (7, 4), (1, 1), (2, 1)])
        c = rng.choice([1, 2, -1, 3])
        if (p, q, c) in seen:
            continue
        seen.add((p, q, c))
        f = BiPoly.monomial(0, q) + BiPoly.monomial(p, 0, c)
        i, j = rng.randint(0, p), rng.randint(1, q)
        if i * q + j * p > p * q:
            f = f + BiPoly.monomial(i, j, rng.choice([1, -2]))
        polys.append(f)
    if rng.random() < 0.5 and (3, 2, 1) not in seen:
        polys.append(parse_poly(F1))
    return Curve.of(*polys)


def test_valuation_table_reproduces_the_worked_example(example):
    table = build_valuation_table(example.tree, resolution=example)
    assert table.columns() == [*COLUMNS]
    assert [r.label for r in table.rows] == list(TABLE)
    for row in table.rows:
        expected = TABLE[row.label]
        assert tuple(row.values[name] for name in COLUMNS[:-1]) == expected[:5]
        assert row.curve == expected[5]
        assert row.log_discrepancy == expected[6]


def test_decorations_of_the_last_rupture_divisor(example):
    decorations = build_decoration_table(example.tree)
    r4 = decorations.row("R4")
    assert r4.exponent == Fraction(9, 4)
    assert r4.contact == Fraction(15, 8)
    assert (r4.index, r4.index_plus) == (2, 4)
    assert r4.delta == ("R2",)
    assert r4.delta_plus == ("R2", "R4")
    assert [d.log_discrepancy for d in decorations.rows] == [5, 8, 13]


def test_meets_and_tripods(example):
    tree = example.tree
    c1, c2 = TreePoint(4, Fraction(1)), TreePoint(3, Fraction(1))
    z = TreePoint(2, tree.node(2).end.slope)
    assert meet(tree, c1, c2) == TreePoint(1, Fraction(3, 2))
    assert meet(tree, c1, z) == TreePoint(2, Fraction(3, 2))
    assert tripod_center(tree, c1, c2, z) == TreePoint(2, Fraction(3, 2))
    assert canonical(tree, TreePoint(2, Fraction(0))) == TreePoint(1, Fraction(3, 2))


def test_intersections_and_multiplicities(example):
    tree = example.tree
    matrix = intersection_matrix(tree)
    assert matrix[("C1", "C2")] == matrix[("C2", "C1")] == 18
    assert matrix[("z", "C2")] == 9
    assert matrix[("x", "C1")] == multiplicity(tree, "C1") == 4
    assert matrix[("x", "C2")] == multiplicity(tree, "C2") == 3


def test_intersections_agree_with_resultants(example):
    matrix = intersection_matrix(example.tree)
    for a, b in combinations(COLUMNS[:-1], 2):
        f, g = element_polynomial(example, a), element_polynomial(example, b)
        assert matrix[(a, b)] == resultant_intersection(f, g), (a, b)


def test_log_discrepancy_formulas_agree_on_random_curves():
    rng = random.Random(5)
    for _ in range(20):
        res = resolve(_random_curve(rng))
        for node, marked in res.tree.marked_points():
            p = TreePoint(node.id, marked.slope)
            assert log_discrepancy_by_index(res.tree, p) == log_discrepancy_propagated(res.tree, p)
        build_valuation_table(res.tree)


def test_cusp_rupture_row():
    table = build_valuation_table(resolve(Curve.of(parse_poly(CUSP))).tree)
    assert [(r.label, r.log_discrepancy, r.curve) for r in table.rows] == [("R2", 5, 6)]


def test_smooth_branch_has_no_rows():
    table = build_valuation_table(resolve(Curve.of(parse_poly("y - x^2"))).tree)
    assert table.rows == ()
    assert table.notes == ("no rupture components",)


def test_table_rejects_an_inconsistent_curve_column(example):
    table = build_valuation_table(example.tree)
    row = table.rows[0]
    broken = ValuationRow(row.label, row.log_discrepancy, row.values, row.curve + 1)
    with pytest.raises(InvariantViolation):
        ValuationTable(table.elements, (broken,), table.branches)


def test_fractional_valuations_are_invariant_violations(example, monkeypatch):
    tree = example.tree
    p, c1 = TreePoint(1, Fraction(3, 2)), TreePoint(4, Fraction(1))
    assert valuation(tree, p, c1) == TABLE["R2"][3]
    monkeypatch.setattr(tree_functions, "contact", lambda tree, p: Fraction(1, 7))
    with pytest.raises(InvariantViolation):
        valuation(tree, p, c1)
    with pytest.raises(InvariantViolation):
        intersection_number(tree, c1, TreePoint(3, Fraction(1)))


def test_r_has_no_self_intersection(example):
    assert intersection_number(example.tree, None, TreePoint(4, Fraction(1))) == 4
    with pytest.raises(InputError):
        intersection_number(example.tree, None, None)
