"""
Decorations of the fan tree: index, exponent and contact complexity, tripod centers,
log-discrepancies, divisorial valuations and the valuation table read off them.

A point of the tree is a node id and a slope on that node's trunk. The point at slope 0 of a
non-root trunk is the marked point of the parent it is glued to; `canonical` always moves it
there.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .defaults import DEFAULT_CURVE_COLUMN, DEFAULT_R_NAME
from .errors import InputError, InvariantViolation, LiftFailed, UnknownElement
from .lattice import INFINITY, Slope, ray_of_slope
from .poly import BiPoly
from .resolution import FanTree, Resolution, lift_curvetta, rupture_divisors, valuations_of
from .util import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class TreePoint:
    node: int
    slope: Slope

    def __str__(self) -> str:
        s = "oo" if self.slope is INFINITY else format_rational(self.slope)
        return f"{self.node}@{s}"


def canonical(tree: FanTree, p: TreePoint) -> TreePoint:
    while p.slope == 0:
        node = tree.node(p.node)
        if node.parent is None:
            break
        p = TreePoint(node.parent, node.attach_slope)
    return p


def root_point() -> TreePoint:
    return TreePoint(1, Fraction(0))


def _chain(tree: FanTree, p: TreePoint) -> list[tuple[int, Slope, int]]:
    """(node, exit slope, index on that trunk) for every trunk crossed from e_R to p."""
    p = canonical(tree, p)
    path = tree.path(p.node)
    out: list[tuple[int, Slope, int]] = []
    index = 1
    for here, nxt in zip(path, [*path[1:], None], strict=True):
        if here.attach_ray is not None:
            index *= here.attach_ray.a
        out.append((here.id, nxt.attach_slope if nxt is not None else p.slope, index))
    return out


# region ---[ Index, exponent, contact ]---


def index(tree: FanTree, p: TreePoint) -> int:
    """Product of the denominators of the slopes at the ramification points before p."""
    return _chain(tree, p)[-1][2]


def index_plus(tree: FanTree, p: TreePoint) -> int:
    p = canonical(tree, p)
    i = index(tree, p)
    if p.slope is INFINITY:
        return i
    return i * Fraction(p.slope).denominator


def exponent(tree: FanTree, p: TreePoint) -> Slope:
    total = Fraction(0)
    for _, exit_slope, i in _chain(tree, p):
        if exit_slope is INFINITY:
            return INFINITY
        total += Fraction(exit_slope) / i
    return total


def contact(tree: FanTree, p: TreePoint) -> Slope:
    total = Fraction(0)
    for _, exit_slope, i in _chain(tree, p):
        if exit_slope is INFINITY:
            return INFINITY
        total += Fraction(exit_slope) / (i * i)
    return total


def ramification_points_before(tree: FanTree, p: TreePoint) -> list[str]:
    """Labels of the ramification points e_{R_i} crossed strictly before p."""
    return [tree.node(node).r_label for node, _, _ in _chain(tree, p)[1:]]


# endregion ---[ Index, exponent, contact ]---
# region ---[ Meets and tripods ]---


def meet(tree: FanTree, a: TreePoint, b: TreePoint) -> TreePoint:
    """The point where the segments [e_R, a] and [e_R, b] separate."""
    ca, cb = _chain(tree, a), _chain(tree, b)
    k = 0
    while k + 1 < min(len(ca), len(cb)) and ca[k + 1][0] == cb[k + 1][0]:
        k += 1
    return canonical(tree, TreePoint(ca[k][0], min(ca[k][1], cb[k][1])))


def _depth(tree: FanTree, p: TreePoint) -> tuple[int, Slope]:
    p = canonical(tree, p)
    return (len(tree.path(p.node)), p.slope)


def tripod_center(tree: FanTree, a: TreePoint, b: TreePoint, c: TreePoint) -> TreePoint:
    meets = [meet(tree, a, b), meet(tree, a, c), meet(tree, b, c)]
    return max(meets, key=lambda p: _depth(tree, p))


# endregion ---[ Meets and tripods ]---
# region ---[ Log-discrepancies and valuations ]---


def log_discrepancy_by_index(tree: FanTree, p: TreePoint) -> int:
    """i+(p) * (1 + e(p))."""
    p = canonical(tree, p)
    value = index_plus(tree, p) * (1 + exponent(tree, p))
    if value.denominator != 1:
        msg = f"Log-discrepancy at {p} is not an integer: {value}"
        raise InvariantViolation(msg)
    return int(value)


def log_discrepancy_propagated(tree: FanTree, p: TreePoint) -> int:
    """<e_{D_p}, (lambda_{R_i}, lambda_{L_i})> with lambda_{R_1} = lambda_{L_i} = 1."""
    p = canonical(tree, p)
    lam_r = 1
    for node in tree.path(p.node)[1:]:
        ray = node.attach_ray
        lam_r = ray.a * lam_r + ray.b
    ray = ray_of_slope(p.slope)
    return ray.a * lam_r + ray.b


def log_discrepancy(tree: FanTree, p: TreePoint) -> int:
    by_index = log_discrepancy_by_index(tree, p)
    propagated = log_discrepancy_propagated(tree, p)
    if by_index != propagated:
        msg = f"Log-discrepancy at {p}: {by_index} from the index, {propagated} propagated"
        raise InvariantViolation(msg)
    return by_index


def _integral(value: Slope, what: str) -> int:
    if value is INFINITY or value.denominator != 1:
        msg = f"{what} is {value}, not an integer"
        raise InvariantViolation(msg)
    return value.numerator


def valuation(tree: FanTree, p: TreePoint, end: TreePoint | None) -> int:
    """
    nu_{D_p} of the branch ending at `end`; `end=None` stands for R.
    """
    if end is None:
        return index_plus(tree, p)
    value = index_plus(tree, p) * index(tree, end) * contact(tree, meet(tree, p, end))
    return _integral(value, f"nu at {p} of the branch ending at {end}")


def intersection_number(tree: FanTree, a: TreePoint | None, b: TreePoint | None) -> int:
    """(A . B) of two distinct branches of the completion; None stands for R."""
    if a is None and b is None:
        msg = "R has no intersection number with itself"
        raise InputError(msg)
    if a is None or b is None:
        return index(tree, b if a is None else a)
    value = index(tree, a) * index(tree, b) * contact(tree, meet(tree, a, b))
    return _integral(value, f"({a} . {b})")


# endregion ---[ Log-discrepancies and valuations ]---
# region ---[ Elements ]---


@dataclass(frozen=True, slots=True)
class Element:
    """
    A branch of the completion, named as a monomial variable.

    `kind` is "R", "curvetta" or "branch". A branch element may have several ends
    (a group of conjugate branches); `generating` marks the elements that enter the reduced
    alphabet.
    """

    name: str
    kind: str
    ends: tuple[TreePoint, ...]
    generating: bool
    mult: int = 0


def completion_elements(tree: FanTree) -> list[Element]:
    out = [Element(DEFAULT_R_NAME, "R", (), True)]
    for node in tree.curvetta_nodes():
        if node.end.factor is None:
            end = TreePoint(node.id, INFINITY)
            out.append(Element(str(node.end.name), "curvetta", (end,), True))
    mults = tree.factor_mults or (1,) * len(tree.factor_names)
    for j, (name, mult) in enumerate(zip(tree.factor_names, mults, strict=True)):
        nodes = tree.branch_nodes(j)
        ends = tuple(TreePoint(n.id, n.end.slope) for n in nodes)
        generating = any(not n.terminal for n in nodes)
        out.append(Element(name, "branch", ends, generating, mult))
    return out


def element_valuation(tree: FanTree, p: TreePoint, element: Element) -> int:
    if element.kind == "R":
        return valuation(tree, p, None)
    return sum(valuation(tree, p, end) for end in element.ends)


def multiplicity(tree: FanTree, name: str) -> int:
    """Multiplicity of a branch of C that is transversal to R, as the index of its end(s)."""
    for element in completion_elements(tree):
        if element.name == name and element.kind == "branch":
            return sum(index(tree, end) for end in element.ends)
    msg = f"No branch named {name!r}"
    raise UnknownElement(msg)


def intersection_matrix(tree: FanTree) -> dict[tuple[str, str], int]:
    """(A . B) for every unordered pair of distinct completion elements, both orders stored."""
    out: dict[tuple[str, str], int] = {}
    elements = completion_elements(tree)
    for a, b in combinations(elements, 2):
        value = _element_intersection(tree, a, b)
        out[(a.name, b.name)] = value
        out[(b.name, a.name)] = value
    return out


def _element_intersection(tree: FanTree, a: Element, b: Element) -> int:
    ends_a = a.ends or (None,)
    ends_b = b.ends or (None,)
    return sum(intersection_number(tree, p, q) for p in ends_a for q in ends_b)


# endregion ---[ Elements ]---
# region ---[ Tables ]---


@dataclass(frozen=True, slots=True)
class Decoration:
    label: str
    point: TreePoint
    delta: tuple[str, ...]
    delta_plus: tuple[str, ...]
    index: int
    index_plus: int
    exponent: Fraction
    contact: Fraction
    log_discrepancy: int


@dataclass(frozen=True)
class DecorationTable:
    rows: tuple[Decoration, ...]

    def row(self, label: str) -> Decoration:
        for r in self.rows:
            if r.label == label:
                return r
        msg = f"No marked point labeled {label!r}"
        raise UnknownElement(msg)


def build_decoration_table(tree: FanTree) -> DecorationTable:
    rows: list[Decoration] = []
    for node, marked in tree.marked_points():
        p = TreePoint(node.id, marked.slope)
        delta = tuple(ramification_points_before(tree, p))
        rows.append(
            Decoration(
                label=marked.label,
                point=p,
                delta=delta,
                delta_plus=(*delta, marked.label),
                index=index(tree, p),
                index_plus=index_plus(tree, p),
                exponent=exponent(tree, p),
                contact=contact(tree, p),
                log_discrepancy=log_discrepancy(tree, p),
            )
        )
    return DecorationTable(tuple(rows))


@dataclass(frozen=True, slots=True)
class ValuationRow:
    label: str
    log_discrepancy: int
    values: dict[str, int]
    curve: int


@dataclass(frozen=True, slots=True)
class BranchRow:
    name: str
    mult: int


@dataclass(frozen=True)
class ValuationTable:
    """
    What the multiplier engine consumes: rows of exceptional divisors with their
    log-discrepancy, the values on every element and on C, then the branches of C.
    """

    elements: tuple[Element, ...]
    rows: tuple[ValuationRow, ...]
    branches: tuple[BranchRow, ...]
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        names = {e.name for e in self.elements}
        for b in self.branches:
            if b.name not in names:
                msg = f"Branch {b.name!r} is not an element of the table"
                raise UnknownElement(msg)
        for row in self.rows:
            missing = names - row.values.keys()
            if missing:
                msg = f"Row {row.label} has no value for {sorted(missing)}"
                raise UnknownElement(msg)
            expected = sum(b.mult * row.values[b.name] for b in self.branches)
            if row.curve != expected:
                msg = f"Row {row.label}: nu(C) = {row.curve} but the branches give {expected}"
                raise InvariantViolation(msg)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.elements)

    @property
    def reduced(self) -> bool:
        return all(b.mult == 1 for b in self.branches)

    def generating_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.elements if e.generating)

    def element(self, name: str) -> Element:
        for e in self.elements:
            if e.name == name:
                return e
        msg = f"Unknown element {name!r}; the table knows {list(self.names)}"
        raise UnknownElement(msg)

    def row(self, label: str) -> ValuationRow:
        for r in self.rows:
            if r.label == label:
                return r
        msg = f"No row labeled {label!r}"
        raise UnknownElement(msg)

    def columns(self) -> list[str]:
        return [*self.names, DEFAULT_CURVE_COLUMN]


def build_valuation_table(tree: FanTree, *, resolution: Resolution | None = None) -> ValuationTable:
    """
    One row per rupture divisor of the total transform of C, in node order, and one column per
    completion element. Marked points of valency two (a tangent first L, say) get no row.

    With `resolution`, every column that has a polynomial representative is checked against
    the support-function values replayed from the ledger.
    """
    elements = completion_elements(tree)
    factor_mults = tree.factor_mults or (1,) * len(tree.factor_names)
    mults = dict(zip(tree.factor_names, factor_mults, strict=True))
    branches = tuple(BranchRow(name, mults[name]) for name in tree.factor_names)
    rupture = set(rupture_divisors(tree))
    rows: list[ValuationRow] = []
    for node, marked in tree.marked_points():
        if marked.label not in rupture:
            continue
        p = TreePoint(node.id, marked.slope)
        values = {e.name: element_valuation(tree, p, e) for e in elements}
        curve = sum(b.mult * values[b.name] for b in branches)
        rows.append(ValuationRow(marked.label, log_discrepancy(tree, p), values, curve))

    notes: list[str] = []
    if not rows:
        notes.append("no rupture components")
    table = ValuationTable(tuple(elements), tuple(rows), branches, tuple(notes))
    if resolution is not None:
        _check_against_ledger(table, resolution)
    return table


def _check_against_ledger(table: ValuationTable, resolution: Resolution) -> None:
    representatives: dict[str, BiPoly] = {DEFAULT_R_NAME: BiPoly.x()}
    for f in resolution.curve.factors:
        representatives[f.name] = f.poly
    for node in resolution.tree.curvetta_nodes():
        if node.end.factor is not None:
            continue
        try:
            representatives[str(node.end.name)] = lift_curvetta(resolution, node.id)
        except LiftFailed as e:
            logger.warning("column %s left unchecked: %s", node.end.name, e)

    for name, h in representatives.items():
        replayed = valuations_of(resolution, h)
        for row in table.rows:
            if replayed[row.label] != row.values[name]:
                msg = (
                    f"nu_{row.label}({name}) is {row.values[name]} on the tree "
                    f"but {replayed[row.label]} from the ledger"
                )
                raise InvariantViolation(msg)
    logger.debug("valuation table agrees with the ledger on %s", sorted(representatives))


# endregion ---[ Tables ]---
