"""
Independent ways of computing the same invariants, used to cross-check the fan tree.

* Howald: for a polynomial that is non-degenerate with respect to its Newton polygon, J(xi*f)
  is the monomial ideal of the Newton polygon for xi < 1.
* Point blowups: the classical resolution by blowing up points, one at a time, with the
  log-discrepancies and divisorial valuations read off the charts.
* Resultants: intersection multiplicities at the origin.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
from sympy.polys.polyerrors import ExactQuotientFailed

from .defaults import DEFAULT_DEPTH_LIMIT, DEFAULT_SHEAR_LIMIT
from .errors import (
    DegenerateFaces,
    DepthExceeded,
    NonRationalCenter,
    UnknownElement,
    ZeroPolynomial,
)
from .lattice import LatticeVec, Matrix2
from .multiplier import MembershipResult
from .newton import NewtonPolygon, newton_fan, support_eval, translate, violated_ray
from .poly import (
    BiPoly,
    exact_div_count,
    intersection_multiplicity,
    monomial_pullback,
    ord_v,
    shift_y,
    univariate_factorization,
)
from .resolution import ChartStep, Curve
from .util import ceil_fraction

logger = logging.getLogger(__name__)

_DIAGONAL = LatticeVec(1, 1)
# x = X, y = X*Y: the exceptional curve is X = 0.
_CHART_SLOPES = Matrix2(LatticeVec(1, 1), LatticeVec(0, 1))
# x = X*Y, y = Y: the exceptional curve is Y = 0.
_CHART_VERTICAL = Matrix2(LatticeVec(1, 0), LatticeVec(1, 1))


# region ---[ Howald ]---


def face_polynomial(f: BiPoly, edge: tuple[tuple[int, int], tuple[int, int]]) -> list[Fraction]:
    """Coefficients of f along a compact edge, walked in lattice steps from its first vertex."""
    (i0, j0), (i1, j1) = edge
    length = math.gcd(i1 - i0, j1 - j0)
    di, dj = (i1 - i0) // length, (j1 - j0) // length
    return [f.coefficient(i0 + k * di, j0 + k * dj) for k in range(length + 1)]


def is_newton_nondegenerate(f: BiPoly) -> bool:
    """Every compact face polynomial of f is square-free away from the coordinate axes."""
    if f.is_zero():
        msg = "The zero polynomial has no Newton polygon"
        raise ZeroPolynomial(msg)
    for edge in f.newton_polygon().edges():
        report = univariate_factorization(face_polynomial(f, edge))
        mults = [mult for _, mult in (*report.roots, *report.nonlinear)]
        if any(mult > 1 for mult in mults):
            logger.debug("face %s of %s is not square-free", edge, f)
            return False
    return True


def _require_nondegenerate(f: BiPoly) -> NewtonPolygon:
    if not is_newton_nondegenerate(f):
        msg = f"{f} is degenerate with respect to its Newton polygon"
        raise DegenerateFaces(msg)
    return f.newton_polygon()


def howald_membership(f: BiPoly, h: BiPoly, xi: Fraction) -> MembershipResult:
    """
    h in J(xi*f) for a non-degenerate f: (1,1) plus the Newton polygon of h lies in the interior
    of (xi - n) times the polygon of f, after dividing h by f^n with n the integer part of xi.
    """
    N = _require_nondegenerate(f)
    xi = Fraction(xi)
    n = math.floor(xi)
    if n:
        try:
            h = BiPoly.from_sympy(h.to_sympy().exquo(f.to_sympy() ** n))
        except ExactQuotientFailed:
            return MembershipResult(False, "f")
    if h.is_zero():
        msg = "Membership of the zero polynomial"
        raise ZeroPolynomial(msg)
    ray = violated_ray(N, xi - n, translate(h.newton_polygon(), (1, 1)))
    if ray is None:
        return MembershipResult(True)
    return MembershipResult(False, str(ray))


def _monomial_threshold(N: NewtonPolygon, a: int, b: int) -> Fraction:
    candidates = [
        Fraction(v.dot((a + 1, b + 1)), support_eval(N, v))
        for v in newton_fan(N).rays
        if support_eval(N, v) > 0
    ]
    return min(candidates)


def howald_jumping_numbers(f: BiPoly, upper: Fraction, *, inclusive: bool = True) -> list[Fraction]:
    """
    Jumping numbers of a non-degenerate f up to `upper`.

    Below 1 they are the thresholds at which monomials x^a y^b leave the Newton multiplier
    ideal; the box a, b <= ceil(K) + 1, with K the largest vertex coordinate, reaches all of
    them when the polygon meets both axes. Above 1 they repeat with period 1.
    """
    N = _require_nondegenerate(f)
    upper = Fraction(upper)
    bound = ceil_fraction(Fraction(max(max(p) for p in N.vertices))) + 1
    base = {
        xi
        for a in range(bound + 1)
        for b in range(bound + 1)
        if (xi := _monomial_threshold(N, a, b)) < 1
    }
    base.add(Fraction(1))
    out: set[Fraction] = set()
    for xi in base:
        k = 0
        while xi + k < upper or (inclusive and xi + k == upper):
            out.add(xi + k)
            k += 1
    return sorted(out)


# endregion ---[ Howald ]---
# region ---[ Point blowups ]---


@dataclass(frozen=True)
class BlownUpDivisor:
    """
    The exceptional curve of one point blowup.

    `center` is the chain of charts and recenterings from the origin to the blown-up point;
    `nu` holds the order of every factor of C along the divisor.
    """

    name: str
    log_discrepancy: int
    nu: tuple[int, ...]
    curve: int
    center: tuple[ChartStep, ...]


@dataclass(frozen=True)
class _Point:
    steps: tuple[ChartStep, ...]
    totals: tuple[BiPoly, ...]
    # Exceptional curves through the point along u = 0 and along w = 0.
    axes: tuple[str | None, str | None]


@dataclass(frozen=True)
class BlowupChain:
    curve: Curve
    divisors: tuple[BlownUpDivisor, ...]
    graph: nx.Graph = field(compare=False)

    def divisor(self, name: str) -> BlownUpDivisor:
        for d in self.divisors:
            if d.name == name:
                return d
        msg = f"No blown-up divisor named {name!r}"
        raise UnknownElement(msg)

    def rupture_divisors(self) -> list[BlownUpDivisor]:
        """Exceptional curves meeting at least three other components of the total transform."""
        return [d for d in self.divisors if self.graph.degree(d.name) >= 3]

    def rupture_rows(self) -> list[tuple[int, int]]:
        """(lambda_E, nu_E(C)) of the rupture divisors, sorted."""
        return sorted((d.log_discrepancy, d.curve) for d in self.rupture_divisors())

    def log_canonical_threshold(self) -> Fraction:
        values = [Fraction(d.log_discrepancy, d.curve) for d in self.divisors]
        values.extend(Fraction(1, f.mult) for f in self.curve.factors)
        return min(values)

    def values_of(self, h: BiPoly) -> dict[str, int]:
        """nu_E(h) for every exceptional curve and the power of every branch of C dividing h."""
        if h.is_zero():
            msg = "Valuations of the zero polynomial"
            raise ZeroPolynomial(msg)
        out: dict[str, int] = {}
        for d in self.divisors:
            g = h
            for step in d.center:
                g = shift_y(monomial_pullback(g, step.chart), step.center)
            out[d.name] = ord_v(g, _DIAGONAL)
        for f in self.curve.factors:
            out[f.name] = exact_div_count(h, f.poly)
        return out

    def member_by_values(self, values: dict[str, int], xi: Fraction) -> MembershipResult:
        for d in self.divisors:
            if not values[d.name] + d.log_discrepancy > xi * d.curve:
                return MembershipResult(False, d.name)
        for f in self.curve.factors:
            if not values[f.name] + 1 > xi * f.mult:
                return MembershipResult(False, f.name)
        return MembershipResult(True)


def _strict_at(point: _Point, total: BiPoly) -> BiPoly:
    a = min(i for i, _ in total.support()) if point.axes[0] is not None else 0
    b = min(j for _, j in total.support()) if point.axes[1] is not None else 0
    return total.shift_exponents(-a, -b)


def _tangent_cone(s: BiPoly) -> list[Fraction]:
    """The lowest homogeneous part of s as a polynomial in t = w/u."""
    m = ord_v(s, _DIAGONAL)
    return [s.coefficient(m - k, k) for k in range(m + 1)]


def _is_resolved(point: _Point, stricts: list[BiPoly], passing: list[int]) -> bool:
    if not passing:
        return True
    if len(passing) > 1:
        return False
    s = stricts[passing[0]]
    if ord_v(s, _DIAGONAL) != 1:
        return False
    u_axis, w_axis = point.axes
    if (u_axis is None) == (w_axis is None):
        return False
    if u_axis is not None:
        return s.coefficient(0, 1) != 0
    return s.coefficient(1, 0) != 0


def _log_discrepancy(lam: dict[str, int], axis: str | None) -> int:
    return 1 if axis is None else lam[axis]


def blowup_resolve(curve: Curve, *, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> BlowupChain:
    """
    Resolve C by blowing up points until its total transform is a normal crossing divisor.

    The origin is always blown up. A point is left alone once at most one branch of C passes
    through it, smoothly and transversally to the single exceptional curve there. Tangent
    directions are followed over Q; a non-rational direction shared by several branches, or
    carrying a singular branch, stops the computation.
    """
    graph = nx.Graph()
    divisors: list[BlownUpDivisor] = []
    lam: dict[str, int] = {}
    queue = deque([_Point((), tuple(f.poly for f in curve.factors), (None, None))])
    first = True
    while queue:
        point = queue.popleft()
        stricts = [_strict_at(point, t) for t in point.totals]
        passing = [j for j, s in enumerate(stricts) if s.constant_term() == 0]
        if not first and _is_resolved(point, stricts, passing):
            if passing:
                axis = point.axes[0] if point.axes[0] is not None else point.axes[1]
                name = curve.factors[passing[0]].name
                graph.add_node(name, kind="branch")
                graph.add_edge(axis, name)
            continue
        first = False
        if len(point.steps) >= depth_limit:
            msg = f"More than {depth_limit} successive blowups above one point"
            raise DepthExceeded(msg)

        name = f"E{len(divisors) + 1}"
        nu = tuple(ord_v(t, _DIAGONAL) for t in point.totals)
        lam[name] = _log_discrepancy(lam, point.axes[0]) + _log_discrepancy(lam, point.axes[1])
        divisor = BlownUpDivisor(
            name=name,
            log_discrepancy=lam[name],
            nu=nu,
            curve=sum(f.mult * n for f, n in zip(curve.factors, nu, strict=True)),
            center=point.steps,
        )
        divisors.append(divisor)
        graph.add_node(name, kind="exceptional")
        u_axis, w_axis = point.axes
        if u_axis is not None and w_axis is not None and graph.has_edge(u_axis, w_axis):
            graph.remove_edge(u_axis, w_axis)
        for axis in point.axes:
            if axis is not None:
                graph.add_edge(axis, name)
        logger.debug("blew up %s: lambda=%s nu=%s", name, divisor.log_discrepancy, nu)

        centers: set[Fraction] = set()
        vertical = False
        seen_nonlinear: set[tuple[Fraction, ...]] = set()
        for j in passing:
            cone = _tangent_cone(stricts[j])
            while len(cone) > 1 and not cone[-1]:
                cone.pop()
                vertical = True
            report = univariate_factorization(cone)
            centers.update(c for c, _ in report.roots)
            conjugates = 0
            for coeffs, mult in report.nonlinear:
                if mult > 1 or coeffs in seen_nonlinear:
                    msg = (
                        f"Branches meet {name} at conjugate points of degree {len(coeffs) - 1}"
                        " that are not yet resolved"
                    )
                    raise NonRationalCenter(msg, degree=len(coeffs) - 1)
                seen_nonlinear.add(coeffs)
                for _ in range(len(coeffs) - 1):
                    conjugates += 1
                    branch = f"{curve.factors[j].name}#{conjugates}"
                    graph.add_node(branch, kind="branch")
                    graph.add_edge(name, branch)

        for c in sorted(centers):
            step = ChartStep(_CHART_SLOPES, c)
            queue.append(
                _Point(
                    (*point.steps, step),
                    tuple(shift_y(monomial_pullback(t, step.chart), c) for t in point.totals),
                    (name, w_axis if c == 0 else None),
                )
            )
        if vertical:
            step = ChartStep(_CHART_VERTICAL, Fraction(0))
            queue.append(
                _Point(
                    (*point.steps, step),
                    tuple(monomial_pullback(t, step.chart) for t in point.totals),
                    (u_axis, name),
                )
            )
    return BlowupChain(curve, tuple(divisors), graph)


def blowup_membership(chain: BlowupChain, h: BiPoly, xi: Fraction) -> MembershipResult:
    """h in J(xi*C): nu_E(h) + lambda_E > xi*nu_E(C) on every exceptional curve E."""
    return chain.member_by_values(chain.values_of(h), Fraction(xi))


# endregion ---[ Point blowups ]---
# region ---[ Resultants ]---


def resultant_intersection(f: BiPoly, g: BiPoly, *, shear_limit: int = DEFAULT_SHEAR_LIMIT) -> int:
    """(f . g) at the origin from the order of a resultant."""
    return intersection_multiplicity(f, g, shear_limit=shear_limit)


# endregion ---[ Resultants ]---
