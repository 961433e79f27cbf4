"""
Toroidal embedded resolution of a plane curve by iterated regularized Newton modifications.

Every node i carries a cross (R_i, L_i) with local coordinates (u, w): u = 0 is R_i and w = 0 is
L_i. At the root u = x and w = c*y - phi(x) for the chosen first L. At a node created on the
divisor of a Newton ray r of its parent, at the point Y = c of the chart (r, r_next), u = X and
w = Y - c. The ledger keeps, for every node, the chain of charts and recenterings from the root
together with the local total transforms of the factors of C, so any test function can be
replayed to any node.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import count

import networkx as nx
from typeguard import typechecked

from .defaults import (
    DEFAULT_BRANCH_PREFIX,
    DEFAULT_CURVETTA_FALLBACK_PREFIX,
    DEFAULT_CURVETTA_NAMES,
    DEFAULT_DEPTH_LIMIT,
    DEFAULT_DIVISOR_PREFIX,
    DEFAULT_FIRST_L_NAME,
    DEFAULT_R_NAME,
    DEFAULT_TERMINAL_END_SLOPE,
)
from .errors import (
    CommonFactor,
    DepthExceeded,
    InputError,
    InvariantViolation,
    LiftFailed,
    NoLedgerData,
    NonRationalCenter,
    NotACross,
    NotThroughOrigin,
    RIsComponent,
    UnknownElement,
    ZeroPolynomial,
)
from .lattice import E_L, E_R, INFINITY, LatticeVec, Matrix2, Slope, regularize_fan
from .newton import NewtonPolygon, minkowski, newton_fan, scale, support_eval
from .poly import (
    BiPoly,
    exact_div_count,
    exceptional_split,
    have_common_factor,
    monomial_pullback,
    monomial_pushforward,
    shift_y,
    substitute_y,
    univariate_factorization,
    univariate_order,
)
from .util import format_rational

logger = logging.getLogger(__name__)


# region ---[ Input ]---


@dataclass(frozen=True, slots=True)
class Factor:
    poly: BiPoly
    mult: int
    name: str


@dataclass(frozen=True)
class Curve:
    """C = sum a_j C_j. Each factor is taken to be irreducible; this is not verified."""

    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            msg = "A curve needs at least one factor"
            raise ZeroPolynomial(msg)
        names = [f.name for f in self.factors]
        if len(set(names)) != len(names):
            msg = f"Branch names must be unique, got {names}"
            raise InputError(msg)
        for f in self.factors:
            if f.poly.is_zero():
                msg = f"Branch {f.name} is the zero polynomial"
                raise ZeroPolynomial(msg)
            if f.mult < 1:
                msg = f"Branch {f.name} has multiplicity {f.mult}; it must be positive"
                raise InputError(msg)
            if f.poly.constant_term() != 0:
                msg = f"Branch {f.name} = {f.poly} does not pass through the origin"
                raise NotThroughOrigin(msg)
            if all(i >= 1 for i, _ in f.poly.support()):
                msg = f"Branch {f.name} = {f.poly} is divisible by x; R must not be in C"
                raise RIsComponent(msg)
        for k, f in enumerate(self.factors):
            for g in self.factors[k + 1 :]:
                if have_common_factor(f.poly, g.poly):
                    msg = f"Branches {f.name} and {g.name} share a factor"
                    raise CommonFactor(msg)

    @classmethod
    def of(cls, *polys: BiPoly, mults: list[int] | None = None) -> Curve:
        mults = mults or [1] * len(polys)
        return cls(
            tuple(
                Factor(p, a, f"{DEFAULT_BRANCH_PREFIX}{k}")
                for k, (p, a) in enumerate(zip(polys, mults, strict=True), start=1)
            )
        )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.factors)

    @property
    def reduced(self) -> bool:
        return all(f.mult == 1 for f in self.factors)

    def equation(self) -> BiPoly:
        out = BiPoly.constant(1)
        for f in self.factors:
            out = out * f.poly**f.mult
        return out

    def factor_index(self, name: str) -> int:
        for k, f in enumerate(self.factors):
            if f.name == name:
                return k
        msg = f"No branch named {name!r}"
        raise UnknownElement(msg)


@dataclass(frozen=True, slots=True)
class FirstL:
    """The first L as c*y - phi(x) with phi(0) = 0, so that w = c*y - phi(x)."""

    c: Fraction
    phi: BiPoly

    @classmethod
    def default(cls) -> FirstL:
        return cls(Fraction(1), BiPoly.zero())

    @classmethod
    @typechecked
    def parse(cls, poly: BiPoly) -> FirstL:
        c = poly.coefficient(0, 1)
        rest = poly - BiPoly.monomial(0, 1, c)
        if not c or any(j != 0 or i == 0 for i, j in rest.support()):
            msg = f"First L must have the form c*y - phi(x) with phi(0) = 0, got {poly}"
            raise NotACross(msg)
        return cls(c, -rest)

    @property
    def poly(self) -> BiPoly:
        return BiPoly.monomial(0, 1, self.c) - self.phi

    def substitution(self) -> BiPoly:
        """y as a polynomial in (x, w): (w + phi(x)) / c."""
        return (BiPoly.y() + self.phi).scale(1 / self.c)


# endregion ---[ Input ]---
# region ---[ Tree ]---


class EndKind(Enum):
    CURVETTA = "curvetta"
    BRANCH = "branch"


@dataclass(frozen=True, slots=True)
class ChartStep:
    chart: Matrix2
    center: Fraction


@dataclass(frozen=True, slots=True)
class MarkedPoint:
    slope: Fraction
    ray: LatticeVec
    label: str
    children: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class BranchEnd:
    """
    The end e_{L_i} of a trunk.

    `name` is the curvetta element name on non-terminal trunks (None on terminal ones);
    `factor` is set when the end is a branch of C.
    """

    slope: Slope
    name: str | None
    factor: int | None
    factor_name: str | None = None

    @property
    def kind(self) -> EndKind:
        return EndKind.BRANCH if self.factor is not None else EndKind.CURVETTA

    @property
    def label(self) -> str:
        return self.factor_name if self.factor_name is not None else str(self.name)


@dataclass(frozen=True, slots=True)
class Cross:
    node: int
    r_label: str
    l_label: str


@dataclass(frozen=True, slots=True)
class ResolutionNode:
    id: int
    parent: int | None
    attach_ray: LatticeVec | None
    center: Fraction | None
    terminal: bool
    conjugate: bool
    trunk: tuple[MarkedPoint, ...]
    end: BranchEnd
    fan_rays: tuple[LatticeVec, ...] = (E_R, E_L)
    r_label: str = DEFAULT_R_NAME

    @property
    def attach_slope(self) -> Fraction | None:
        if self.attach_ray is None:
            return None
        return Fraction(self.attach_ray.b, self.attach_ray.a)

    @property
    def cross(self) -> Cross:
        return Cross(self.id, self.r_label, self.end.label)

    def marked(self, label: str) -> MarkedPoint | None:
        return next((m for m in self.trunk if m.label == label), None)


@dataclass(frozen=True)
class FanTree:
    nodes: tuple[ResolutionNode, ...]
    factor_names: tuple[str, ...]
    factor_mults: tuple[int, ...] = ()

    @property
    def root(self) -> ResolutionNode:
        return self.nodes[0]

    def node(self, i: int) -> ResolutionNode:
        if not 1 <= i <= len(self.nodes):
            msg = f"No node {i}"
            raise UnknownElement(msg)
        return self.nodes[i - 1]

    def children(self, i: int) -> list[ResolutionNode]:
        return [n for n in self.nodes if n.parent == i]

    def path(self, i: int) -> list[ResolutionNode]:
        """Nodes from the root down to node i."""
        out: list[ResolutionNode] = []
        node: ResolutionNode | None = self.node(i)
        while node is not None:
            out.append(node)
            node = self.node(node.parent) if node.parent is not None else None
        return out[::-1]

    def marked_points(self) -> list[tuple[ResolutionNode, MarkedPoint]]:
        return [(n, m) for n in self.nodes for m in n.trunk]

    def divisor(self, label: str) -> tuple[ResolutionNode, MarkedPoint]:
        for n, m in self.marked_points():
            if m.label == label:
                return n, m
        msg = f"No exceptional divisor labeled {label!r}"
        raise UnknownElement(msg)

    def ramification_points(self) -> list[int]:
        return [n.id for n in self.nodes if n.parent is not None]

    def curvetta_nodes(self) -> list[ResolutionNode]:
        return [n for n in self.nodes if not n.terminal]

    def branch_nodes(self, factor: int) -> list[ResolutionNode]:
        return [n for n in self.nodes if n.end.factor == factor]


# endregion ---[ Tree ]---
# region ---[ Ledger ]---


@dataclass(frozen=True)
class NodeLedger:
    steps: tuple[ChartStep, ...]
    totals: tuple[BiPoly, ...]

    @property
    def offsets(self) -> tuple[tuple[int, int], ...]:
        return tuple(exceptional_split(t)[:2] for t in self.totals)


@dataclass(frozen=True)
class Ledger:
    first_l: FirstL
    entries: dict[int, NodeLedger] = field(default_factory=dict)

    def entry(self, node: int) -> NodeLedger:
        if node not in self.entries:
            msg = f"Node {node} carries no polynomial data (conjugate branch)"
            raise NoLedgerData(msg)
        return self.entries[node]

    def to_root(self, h: BiPoly) -> BiPoly:
        return substitute_y(h, self.first_l.substitution())

    def replay(self, node: int, h: BiPoly, extra: tuple[ChartStep, ...] = ()) -> BiPoly:
        """The local total transform of h at node (followed by `extra` steps)."""
        if h.is_zero():
            msg = "Cannot replay the zero polynomial"
            raise ZeroPolynomial(msg)
        g = self.to_root(h)
        for step in (*self.entry(node).steps, *extra):
            g = shift_y(monomial_pullback(g, step.chart), step.center)
        return g


@dataclass(frozen=True)
class Resolution:
    curve: Curve
    tree: FanTree
    ledger: Ledger

    def curve_polygon(self, node: int) -> NewtonPolygon:
        """Newton polygon of the total transform of f_C at node, as sum a_j N(T_j)."""
        entry = self.ledger.entry(node)
        out = NewtonPolygon(((0, 0),))
        for f, t in zip(self.curve.factors, entry.totals, strict=True):
            out = minkowski(out, scale(t.newton_polygon(), f.mult))
        return out


# endregion ---[ Ledger ]---
# region ---[ Driver ]---


@dataclass
class _Pending:
    id: int
    parent: int | None
    attach_ray: LatticeVec | None
    center: Fraction | None
    steps: tuple[ChartStep, ...]
    totals: tuple[BiPoly, ...] | None
    r_label: str
    conjugate_factor: int | None = None


def _curvetta_names():
    yield from DEFAULT_CURVETTA_NAMES
    for k in count(1):
        yield f"{DEFAULT_CURVETTA_FALLBACK_PREFIX}{k}"


def _strict(total: BiPoly) -> BiPoly:
    """Remove the power of u = 0 (the divisor R_i) from a local total transform."""
    a = min(i for i, _ in total.support())
    return total.shift_exponents(-a, 0)


def _times(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p = p[:-1]
    return p


@typechecked
def resolve(
    c: Curve,
    first_L: BiPoly | None = None,
    *,
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
) -> Resolution:
    first = FirstL.parse(first_L) if first_L is not None else FirstL.default()
    ledger = Ledger(first)
    root_totals = tuple(ledger.to_root(f.poly) for f in c.factors)
    names = _curvetta_names()

    ids = count(2)
    queue: deque[_Pending] = deque(
        [_Pending(1, None, None, None, (), root_totals, DEFAULT_R_NAME)]
    )
    built: list[ResolutionNode] = []

    while queue:
        pending = queue.popleft()
        if len(pending.steps) > depth_limit:
            msg = f"Resolution deeper than {depth_limit} charts at node {pending.id}"
            raise DepthExceeded(msg)

        if pending.conjugate_factor is not None:
            j = pending.conjugate_factor
            built.append(
                ResolutionNode(
                    id=pending.id,
                    parent=pending.parent,
                    attach_ray=pending.attach_ray,
                    center=None,
                    terminal=True,
                    conjugate=True,
                    trunk=(),
                    end=BranchEnd(Fraction(DEFAULT_TERMINAL_END_SLOPE), None, j, c.factors[j].name),
                    r_label=pending.r_label,
                )
            )
            continue

        totals = pending.totals
        assert totals is not None
        ledger.entries[pending.id] = NodeLedger(pending.steps, totals)
        stricts = [_strict(t) for t in totals]
        passing = [j for j, s in enumerate(stricts) if s.constant_term() == 0]
        if not passing:
            msg = f"No branch passes through the center of node {pending.id}"
            raise InvariantViolation(msg)

        if len(passing) == 1 and univariate_order(stricts[passing[0]].at_x_zero()) == 1:
            j = passing[0]
            logger.debug("node %s: cross with branch %s", pending.id, c.factors[j].name)
            built.append(
                ResolutionNode(
                    id=pending.id,
                    parent=pending.parent,
                    attach_ray=pending.attach_ray,
                    center=pending.center,
                    terminal=True,
                    conjugate=False,
                    trunk=(),
                    end=BranchEnd(Fraction(DEFAULT_TERMINAL_END_SLOPE), None, j, c.factors[j].name),
                    r_label=pending.r_label,
                )
            )
            continue

        node, children = _modify(pending, c, stricts, passing, ids, names)
        built.append(node)
        queue.extend(children)

    built.sort(key=lambda n: n.id)
    tree = FanTree(tuple(built), c.names, tuple(f.mult for f in c.factors))
    logger.info("resolved %s into %s nodes", ", ".join(c.names), len(built))
    return Resolution(c, tree, ledger)


def _modify(
    pending: _Pending,
    c: Curve,
    stricts: list[BiPoly],
    passing: list[int],
    ids,
    names,
) -> tuple[ResolutionNode, list[_Pending]]:
    """One regularized Newton modification at a node that is not yet a cross."""
    totals = pending.totals
    assert totals is not None
    product = BiPoly.constant(1)
    for j in passing:
        product = product * stricts[j]
    polygon = product.newton_polygon()
    fan = newton_fan(polygon)
    if not fan.interior_rays():
        msg = f"Node {pending.id}: Newton polygon {polygon} has no compact edge"
        raise InvariantViolation(msg)
    regular = regularize_fan(fan)
    logger.debug("node %s: polygon %s, Newton rays %s", pending.id, polygon, fan.rays)

    on_l = [j for j in passing if all(e[1] >= 1 for e in stricts[j].support())]
    end_factor = on_l[0] if on_l else None
    curvetta = DEFAULT_FIRST_L_NAME if pending.id == 1 else next(names)
    end = BranchEnd(
        INFINITY,
        curvetta,
        end_factor,
        c.factors[end_factor].name if end_factor is not None else None,
    )

    trunk: list[MarkedPoint] = []
    children: list[_Pending] = []
    for ray in fan.interior_rays():
        chart = Matrix2(ray, regular.next_ray(ray))
        pulled = [monomial_pullback(t, chart) for t in totals]
        faces: dict[int, list[Fraction]] = {}
        face = [Fraction(1)]
        for j in passing:
            core = exceptional_split(monomial_pullback(stricts[j], chart))[2]
            faces[j] = _trim(core.at_x_zero())
            face = _times(face, faces[j])
        face = _trim(face)
        if not face[0] or len(face) - 1 != polygon.edge_length(ray):
            msg = (
                f"Node {pending.id}, ray {ray}: face polynomial of degree {len(face) - 1} "
                f"does not match the edge length {polygon.edge_length(ray)}"
            )
            raise InvariantViolation(msg)

        roots: dict[Fraction, int] = {}
        nonlinear: dict[tuple[Fraction, ...], list[tuple[int, int]]] = {}
        for j, coeffs in faces.items():
            report = univariate_factorization(coeffs)
            for root, mult in report.roots:
                roots[root] = roots.get(root, 0) + mult
            for poly, mult in report.nonlinear:
                nonlinear.setdefault(poly, []).append((j, mult))

        conjugates: list[tuple[int, int]] = []
        for poly, owners in nonlinear.items():
            degree = len(poly) - 1
            if len(owners) > 1 or owners[0][1] > 1:
                msg = (
                    f"Node {pending.id}, ray {ray}: a singular point of the strict transform "
                    f"sits on a non-rational center of degree {degree}"
                )
                raise NonRationalCenter(msg, node=pending.id, degree=degree)
            conjugates.append((owners[0][0], degree))

        child_ids: list[int] = []
        for root in sorted(roots):
            k = next(ids)
            child_ids.append(k)
            children.append(
                _Pending(
                    k,
                    pending.id,
                    ray,
                    root,
                    (*pending.steps, ChartStep(chart, root)),
                    tuple(shift_y(p, root) for p in pulled),
                    "",
                )
            )
        for j, degree in conjugates:
            logger.warning(
                "node %s, ray %s: branch %s meets the divisor at %s conjugate points",
                pending.id,
                ray,
                c.factors[j].name,
                degree,
            )
            for _ in range(degree):
                k = next(ids)
                child_ids.append(k)
                children.append(
                    _Pending(k, pending.id, ray, None, (), None, "", conjugate_factor=j)
                )

        label = f"{DEFAULT_DIVISOR_PREFIX}{min(child_ids)}"
        for child in children:
            if child.id in child_ids:
                child.r_label = label
        trunk.append(MarkedPoint(Fraction(ray.b, ray.a), ray, label, tuple(child_ids)))

    node = ResolutionNode(
        id=pending.id,
        parent=pending.parent,
        attach_ray=pending.attach_ray,
        center=pending.center,
        terminal=False,
        conjugate=False,
        trunk=tuple(trunk),
        end=end,
        fan_rays=regular.rays,
        r_label=pending.r_label,
    )
    return node, children


# endregion ---[ Driver ]---
# region ---[ Queries ]---


def newton_data_at(ledger: Ledger, node: int, h: BiPoly) -> NewtonPolygon:
    return ledger.replay(node, h).newton_polygon()


def valuations_of(resolution: Resolution, h: BiPoly) -> dict[str, int]:
    """
    nu_D(h) for every marked exceptional divisor, read off the support function at the node
    that carries it, then the vanishing order of h along every end of the tree.
    """
    if h.is_zero():
        msg = "Valuations of the zero polynomial"
        raise ZeroPolynomial(msg)
    tree, ledger = resolution.tree, resolution.ledger
    out: dict[str, int] = {}
    for node in tree.curvetta_nodes():
        polygon = newton_data_at(ledger, node.id, h)
        for m in node.trunk:
            out[m.label] = support_eval(polygon, m.ray)
    for node in tree.curvetta_nodes():
        if node.end.factor is None:
            out[node.end.label] = support_eval(newton_data_at(ledger, node.id, h), E_L)
    for f in resolution.curve.factors:
        out[f.name] = exact_div_count(h, f.poly)
    return out


def index_of_node(tree: FanTree, node: int) -> int:
    """Product of the denominators of the attaching slopes from the root to node."""
    out = 1
    for n in tree.path(node):
        if n.attach_ray is not None:
            out *= n.attach_ray.a
    return out


def _divisor_curvetta_step(tree: FanTree, label: str) -> tuple[ResolutionNode, ChartStep, int]:
    node, marked = tree.divisor(label)
    taken = {n.center for n in tree.children(node.id) if n.attach_ray == marked.ray}
    c = 1
    while Fraction(c) in taken:
        c += 1
    chart = Matrix2(marked.ray, _next_ray(node, marked.ray))
    return node, ChartStep(chart, Fraction(c)), index_of_node(tree, node.id) * marked.ray.a


def _next_ray(node: ResolutionNode, ray: LatticeVec) -> LatticeVec:
    rays = node.fan_rays
    return rays[rays.index(ray) + 1]


def _normalized(g: BiPoly) -> BiPoly:
    """Make the highest pure power of y monic, when there is one."""
    pure = [j for i, j in g.support() if i == 0]
    if not pure:
        return g
    return g.scale(1 / g.coefficient(0, max(pure)))


def lift_curvetta(resolution: Resolution, target: int | str) -> BiPoly:
    """
    A polynomial whose branch is a curvetta at the target: the L of a non-terminal node (by id)
    or an exceptional divisor (by label, at a point of it where nothing else passes).

    The chart chain is undone from the target down to the root, then the result is replayed
    to the target and checked: it must pass through the center as a smooth branch transversal
    to the divisor, and meet R with the expected index.
    """
    tree, ledger = resolution.tree, resolution.ledger
    if isinstance(target, int):
        node = tree.node(target)
        if node.terminal:
            msg = f"Node {target} is a cross with a branch of C; it has no curvetta"
            raise LiftFailed(msg)
        extra: tuple[ChartStep, ...] = ()
        expected = index_of_node(tree, node.id)
    else:
        node, step, expected = _divisor_curvetta_step(tree, target)
        extra = (step,)

    steps = (*ledger.entry(node.id).steps, *extra)
    if not steps:
        return ledger.first_l.poly
    g = BiPoly.y()
    for step in reversed(steps):
        g = monomial_pushforward(shift_y(g, -step.center), step.chart)
    g = substitute_y(g, ledger.first_l.poly)
    g = _normalized(exceptional_split(g)[2])

    strict = _strict(ledger.replay(node.id, g, extra))
    ok = strict.constant_term() == 0 and univariate_order(strict.at_x_zero()) == 1
    if ok:
        ok = univariate_order(g.at_x_zero()) == expected
    if not ok:
        msg = f"Could not verify a curvetta for {target!r} (candidate {g})"
        raise LiftFailed(msg)
    logger.debug("curvetta for %r: %s", target, g)
    return g


def element_polynomial(resolution: Resolution, name: str) -> BiPoly:
    """A polynomial representative of a completion element: x, a lifted curvetta or a branch."""
    if name == DEFAULT_R_NAME:
        return BiPoly.x()
    for f in resolution.curve.factors:
        if f.name == name:
            return f.poly
    for node in resolution.tree.curvetta_nodes():
        if node.end.factor is None and node.end.name == name:
            return lift_curvetta(resolution, node.id)
    msg = f"No element named {name!r}"
    raise UnknownElement(msg)


# endregion ---[ Queries ]---
# region ---[ Views ]---


def dual_graph(tree: FanTree) -> nx.Graph:
    """
    Exceptional divisors of the resolution together with R, the curvettas and the branches.

    Vertex attribute `kind` is one of "exceptional", "R", "curvetta", "branch".
    """
    graph = nx.Graph()
    graph.add_node(DEFAULT_R_NAME, kind="R")

    def divisor_name(node: ResolutionNode, ray: LatticeVec) -> str:
        marked = next((m for m in node.trunk if m.ray == ray), None)
        if marked is not None:
            return marked.label
        return f"E{node.id}.{format_rational(Fraction(ray.b, ray.a))}"

    conjugate_seen: dict[str, int] = {}

    def end_name(node: ResolutionNode) -> tuple[str, str]:
        if node.end.factor is None:
            return str(node.end.name), "curvetta"
        name = node.end.label
        if node.conjugate:
            conjugate_seen[name] = conjugate_seen.get(name, 0) + 1
            name = f"{name}#{conjugate_seen[name]}"
        return name, "branch"

    for node in tree.nodes:
        below = DEFAULT_R_NAME if node.parent is None else node.r_label
        chain = [below]
        for ray in node.fan_rays[1:-1]:
            name = divisor_name(node, ray)
            graph.add_node(name, kind="exceptional", node=node.id, ray=(ray.a, ray.b))
            chain.append(name)
        top, kind = end_name(node)
        graph.add_node(top, kind=kind)
        chain.append(top)
        nx.add_path(graph, chain)
    return graph


def rupture_divisors(tree: FanTree) -> list[str]:
    """
    Exceptional vertices of valency at least 3 in the dual graph of the total transform of C;
    R and the curvettas are not part of it.
    """
    graph = dual_graph(tree)
    keep = [v for v, k in graph.nodes(data="kind") if k in ("exceptional", "branch")]
    sub = graph.subgraph(keep)
    return [v for v in keep if graph.nodes[v]["kind"] == "exceptional" and sub.degree(v) >= 3]


def render_tree(tree: FanTree) -> str:
    lines: list[str] = []
    for node in tree.nodes:
        if node.parent is None:
            head = f"node {node.id} (root)"
        else:
            at = format_rational(node.attach_slope)
            head = f"node {node.id} (parent {node.parent} at slope {at}, on {node.r_label})"
        if node.conjugate:
            head += " conjugate"
        lines.append(head)
        for m in node.trunk:
            lines.append(f"  {format_rational(m.slope):>8}  {m.label}")
        end_slope = "oo" if node.end.slope is INFINITY else format_rational(node.end.slope)
        lines.append(f"  {end_slope:>8}  end {node.end.label}")
    return "\n".join(lines) + "\n"


# endregion ---[ Views ]---
