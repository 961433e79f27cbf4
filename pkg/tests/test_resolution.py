from __future__ import annotations

from fractions import Fraction

import pytest

from fantree.errors import (
    CommonFactor,
    DepthExceeded,
    InputError,
    NotACross,
    NotThroughOrigin,
    NonRationalCenter,
    RIsComponent,
    UnknownElement,
)
from fantree.lattice import LatticeVec
from fantree.poly import BiPoly, parse_poly
from fantree.resolution import (
    Curve,
    Factor,
    dual_graph,
    element_polynomial,
    lift_curvetta,
    newton_data_at,
    render_tree,
    resolve,
    rupture_divisors,
    valuations_of,
)
from fantree.tree_functions import build_valuation_table

from example_data import CUSP, F1, F2, TABLE


@pytest.fixture(scope="module")
def example():
    return resolve(Curve.of(parse_poly(F1), parse_poly(F2)))


@pytest.fixture(scope="module")
def cusp():
    return resolve(Curve.of(parse_poly(CUSP)))


def test_example_tree_shape(example):
    tree = example.tree
    assert [n.id for n in tree.nodes] == [1, 2, 3, 4]
    root = tree.root
    assert [(m.ray, m.label, m.children) for m in root.trunk] == [
        (LatticeVec(2, 3), "R2", (2,)),
        (LatticeVec(3, 5), "R3", (3,)),
    ]
    assert root.end.name == "y"
    node2 = tree.node(2)
    assert (node2.parent, node2.attach_ray, node2.center) == (1, LatticeVec(2, 3), Fraction(-1))
    assert [(m.ray, m.label) for m in node2.trunk] == [(LatticeVec(2, 3), "R4")]
    assert node2.end.name == "z"
    assert tree.node(3).terminal and tree.node(3).end.label == "C2"
    assert tree.node(4).terminal and tree.node(4).end.label == "C1"
    assert tree.node(4).r_label == "R4"


def test_cusp_resolves_in_one_modification(cusp):
    tree = cusp.tree
    assert len(tree.nodes) == 2
    assert [m.label for m in tree.root.trunk] == ["R2"]
    assert tree.root.fan_rays == (
        LatticeVec(1, 0),
        LatticeVec(1, 1),
        LatticeVec(2, 3),
        LatticeVec(1, 2),
        LatticeVec(0, 1),
    )


def test_smooth_branch_is_already_a_cross():
    tree = resolve(Curve.of(parse_poly("y - x^2"))).tree
    assert len(tree.nodes) == 1
    assert tree.root.terminal
    assert tree.root.end.label == "C1"


def test_dual_graph_and_rupture_divisors(example, cusp):
    assert rupture_divisors(example.tree) == ["R2", "R3", "R4"]
    assert rupture_divisors(cusp.tree) == ["R2"]
    graph = dual_graph(cusp.tree)
    assert set(graph.neighbors("R2")) == {"E1.1", "E1.2", "C1"}
    assert graph.nodes["y"]["kind"] == "curvetta"


def test_render_tree_lists_every_node(example):
    text = render_tree(example.tree)
    assert text.startswith("node 1 (root)\n")
    assert "node 4 (parent 2 at slope 3/2, on R4)" in text
    assert "end C2" in text


def test_valuations_replayed_from_the_ledger(example):
    for name, h in [("x", BiPoly.x()), ("C2", parse_poly(F2)), ("C1", parse_poly(F1))]:
        column = ("x", "y", "z", "C1", "C2").index(name)
        values = valuations_of(example, h)
        assert {label: values[label] for label in TABLE} == {
            label: row[column] for label, row in TABLE.items()
        }


def test_newton_data_replayed_at_a_node(example):
    z = parse_poly(CUSP)
    assert newton_data_at(example.ledger, 1, z).vertices == ((0, 2), (3, 0))
    assert len(newton_data_at(example.ledger, 2, z).vertices) == 1


def test_lift_curvetta(example):
    assert lift_curvetta(example, 2) == parse_poly(CUSP)
    assert element_polynomial(example, "z") == parse_poly(CUSP)
    assert element_polynomial(example, "x") == BiPoly.x()
    assert element_polynomial(example, "C2") == parse_poly(F2)
    lifted = lift_curvetta(example, "R3")
    assert valuations_of(example, lifted)["R3"] == TABLE["R3"][4]
    with pytest.raises(UnknownElement):
        element_polynomial(example, "w")


def test_every_element_lifts_to_a_polynomial(example, cusp):
    assert element_polynomial(example, "y") == parse_poly("y")
    assert element_polynomial(cusp, "y") == parse_poly("y")
    for res, names in [(example, ("x", "y", "z", "C1", "C2")), (cusp, ("x", "y", "C1"))]:
        for name in names:
            h = element_polynomial(res, name)
            assert not h.is_zero()
            assert h.constant_term() == 0


def test_first_l_changes_the_cross_not_the_rupture_rows():
    res = resolve(Curve.of(parse_poly(CUSP)), parse_poly("y - x"))
    assert [m.label for _, m in res.tree.marked_points()] == ["R2", "R3"]
    assert rupture_divisors(res.tree) == ["R3"]
    rows = build_valuation_table(res.tree).rows
    assert [(r.label, r.log_discrepancy, r.curve) for r in rows] == [("R3", 5, 6)]
    assert element_polynomial(res, "y") == parse_poly("y - x")
    with pytest.raises(NotACross):
        resolve(Curve.of(parse_poly(CUSP)), parse_poly("y^2"))


@pytest.mark.parametrize(
    ("polys", "error"),
    [
        (["x*y + x^2"], RIsComponent),
        (["y + 1"], NotThroughOrigin),
        ([CUSP, "y^2 + x^3"], CommonFactor),
    ],
)
def test_curve_validation(polys, error):
    with pytest.raises(error):
        Curve.of(*[parse_poly(p) for p in polys])


def test_curve_validation_errors_are_input_errors():
    f = parse_poly(CUSP)
    with pytest.raises(InputError):
        Curve((Factor(f, 1, "C1"), Factor(parse_poly("y - x^2"), 1, "C1")))
    with pytest.raises(InputError):
        Curve((Factor(f, 0, "C1"),))


def test_conjugate_branches_need_no_rational_center():
    tree = resolve(Curve.of(parse_poly("y^2 - 2*x^2"))).tree
    conjugates = [n for n in tree.nodes if n.conjugate]
    assert len(conjugates) == 2
    assert all(n.terminal and n.end.label == "C1" for n in conjugates)


def test_singular_point_on_a_non_rational_center():
    with pytest.raises(NonRationalCenter) as info:
        resolve(Curve.of(parse_poly("(y^2 - 2*x^2)^2 + x^5")))
    assert info.value.degree == 2
    assert info.value.exit_code == 2


def test_depth_limit():
    with pytest.raises(DepthExceeded):
        resolve(Curve.of(parse_poly(CUSP)), depth_limit=0)
