"""
Newton polygons in the weight lattice M, their support functions and Newton fans.

A polygon is stored by its vertices only, ordered by increasing first coordinate; its recession
cone is always the first quadrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import EmptySupport, NegativeExponent, VectorOutsideQuadrant
from .lattice import E_L, E_R, Fan2, LatticeVec
from .types import TExponentPair


def _cross(o: TExponentPair, a: TExponentPair, b: TExponentPair) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True, slots=True)
class NewtonPolygon:
    vertices: tuple[TExponentPair, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            msg = "A Newton polygon needs at least one vertex"
            raise EmptySupport(msg)

    def edges(self) -> list[tuple[TExponentPair, TExponentPair]]:
        return list(zip(self.vertices, self.vertices[1:], strict=False))

    def edge_normals(self) -> list[LatticeVec]:
        """Primitive inward normals of the compact edges, in slope order."""
        out: list[LatticeVec] = []
        for (i0, j0), (i1, j1) in self.edges():
            di, dj = i1 - i0, j1 - j0
            g = math.gcd(di, dj)
            out.append(LatticeVec(-dj // g, di // g))
        return out

    def edge_for(self, normal: LatticeVec) -> tuple[TExponentPair, TExponentPair] | None:
        for edge, n in zip(self.edges(), self.edge_normals(), strict=True):
            if n == normal:
                return edge
        return None

    def edge_length(self, normal: LatticeVec) -> int:
        """Lattice length of the compact edge orthogonal to `normal`, 0 if there is none."""
        edge = self.edge_for(normal)
        if edge is None:
            return 0
        (i0, j0), (i1, j1) = edge
        return math.gcd(i1 - i0, j1 - j0)

    def axis_offsets(self) -> tuple[int, int]:
        """(ord along x, ord along y): the support function on (1,0) and (0,1)."""
        return (self.vertices[0][0], self.vertices[-1][1])

    def __str__(self) -> str:
        return "[" + ", ".join(f"({i},{j})" for i, j in self.vertices) + "]"


def polygon_from_support(points: Iterable[TExponentPair]) -> NewtonPolygon:
    lowest: dict[int, int] = {}
    for i, j in points:
        if i < 0 or j < 0:
            msg = f"Exponent {(i, j)} has a negative coordinate"
            raise NegativeExponent(msg)
        if i not in lowest or j < lowest[i]:
            lowest[i] = j
    if not lowest:
        msg = "Cannot build a Newton polygon from an empty support"
        raise EmptySupport(msg)
    pts = sorted(lowest.items())

    # Lower monotone chain; collinear points are dropped.
    hull: list[TExponentPair] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)

    min_j = min(j for _, j in hull)
    cut = next(k for k, (_, j) in enumerate(hull) if j == min_j)
    return NewtonPolygon(tuple(hull[: cut + 1]))


def support_eval(P: NewtonPolygon, v: LatticeVec) -> int:
    if v.a < 0 or v.b < 0:
        msg = f"Support function evaluated outside the first quadrant at {v}"
        raise VectorOutsideQuadrant(msg)
    return min(v.dot(p) for p in P.vertices)


def newton_fan(P: NewtonPolygon) -> Fan2:
    return Fan2((E_R, *P.edge_normals(), E_L))


def minkowski(P: NewtonPolygon, Q: NewtonPolygon) -> NewtonPolygon:
    return polygon_from_support((p[0] + q[0], p[1] + q[1]) for p in P.vertices for q in Q.vertices)


def translate(P: NewtonPolygon, shift: TExponentPair) -> NewtonPolygon:
    return NewtonPolygon(tuple((i + shift[0], j + shift[1]) for i, j in P.vertices))


def scale(P: NewtonPolygon, k: int) -> NewtonPolygon:
    if k == 0:
        return NewtonPolygon(((0, 0),))
    return NewtonPolygon(tuple((k * i, k * j) for i, j in P.vertices))


def scaled_interior_contains(N: NewtonPolygon, xi: Fraction, A: NewtonPolygon) -> bool:
    """
    Whether A lies in the interior of xi*N.

    It suffices to compare support functions on the rays of the Newton fan of N: on each of
    its cones xi*support(N) is linear and support(A) is concave.
    """
    return violated_ray(N, xi, A) is None


def violated_ray(N: NewtonPolygon, xi: Fraction, A: NewtonPolygon) -> LatticeVec | None:
    """The first Newton-fan ray of N on which A fails to sit strictly inside xi*N."""
    for v in newton_fan(N).rays:
        if not support_eval(A, v) > xi * support_eval(N, v):
            return v
    return None
