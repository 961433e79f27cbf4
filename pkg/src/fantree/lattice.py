"""
Rank-two lattice geometry: vectors of N, strictly convex cones, fans subdividing the first
quadrant, minimal regular subdivisions and unimodular monomial charts.

A vector (a, b) stands for a*e_R + b*e_L. Rays are always kept in increasing slope order and a
cone is always (lower slope, higher slope).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import InvalidCone, InvalidFan, NonRegularFan, VectorOutsideQuadrant, ZeroVector

Rat = Fraction


@total_ordering
class _Infinity:
    """The slope of (0, 1). Compares above every rational."""

    _instance: _Infinity | None = None

    def __new__(cls) -> _Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __hash__(self) -> int:
        return hash("fantree.INFINITY")

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "oo"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Slope = Fraction | _Infinity


@dataclass(frozen=True, slots=True, order=True)
class LatticeVec:
    a: int
    b: int

    def __iter__(self):
        yield self.a
        yield self.b

    def __add__(self, other: LatticeVec) -> LatticeVec:
        return LatticeVec(self.a + other.a, self.b + other.b)

    def __mul__(self, k: int) -> LatticeVec:
        return LatticeVec(self.a * k, self.b * k)

    __rmul__ = __mul__

    def dot(self, point: tuple[int, int]) -> int:
        return self.a * point[0] + self.b * point[1]

    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b) == 1

    def primitive(self) -> LatticeVec:
        g = math.gcd(self.a, self.b)
        if g == 0:
            msg = "The zero vector has no primitive multiple"
            raise ZeroVector(msg)
        return LatticeVec(self.a // g, self.b // g)

    def slope(self) -> Slope:
        return slope(self)

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


E_R = LatticeVec(1, 0)
E_L = LatticeVec(0, 1)


def det2(u: LatticeVec, v: LatticeVec) -> int:
    return u.a * v.b - u.b * v.a


def slope(u: LatticeVec) -> Slope:
    if u.a == 0 and u.b == 0:
        msg = "Slope of the zero vector"
        raise ZeroVector(msg)
    if u.a == 0:
        return INFINITY
    return Fraction(u.b, u.a)


def ray_of_slope(s: Slope) -> LatticeVec:
    """The primitive vector of N in the first quadrant with the given slope."""
    if s is INFINITY:
        return E_L
    s = Fraction(s)
    return LatticeVec(s.denominator, s.numerator)


@dataclass(frozen=True, slots=True)
class Cone2:
    u: LatticeVec
    v: LatticeVec

    def __post_init__(self) -> None:
        if not (self.u.is_primitive() and self.v.is_primitive()):
            msg = f"Cone rays must be primitive: {self.u}, {self.v}"
            raise InvalidCone(msg)
        if det2(self.u, self.v) <= 0:
            msg = f"Cone ({self.u}, {self.v}) is not strictly convex and positively oriented"
            raise InvalidCone(msg)

    def det(self) -> int:
        return det2(self.u, self.v)

    def is_regular(self) -> bool:
        return self.det() == 1


@dataclass(frozen=True, slots=True)
class Fan2:
    """A fan subdividing the first quadrant, given by its rays from (1,0) to (0,1)."""

    rays: tuple[LatticeVec, ...]

    def __post_init__(self) -> None:
        rays = self.rays
        if len(rays) < 2 or rays[0] != E_R or rays[-1] != E_L:
            msg = f"A fan must run from (1,0) to (0,1), got {list(map(str, rays))}"
            raise InvalidFan(msg)
        for r in rays:
            if r.a < 0 or r.b < 0 or not r.is_primitive():
                msg = f"Fan ray {r} is not a primitive vector of the first quadrant"
                raise VectorOutsideQuadrant(msg)
        for u, v in zip(rays, rays[1:], strict=False):
            if det2(u, v) <= 0:
                msg = f"Fan rays {u}, {v} are not in strictly increasing slope order"
                raise InvalidFan(msg)

    @classmethod
    def from_interior(cls, interior: list[LatticeVec]) -> Fan2:
        inner = sorted(set(interior), key=lambda r: Fraction(r.b, r.a))
        return cls((E_R, *inner, E_L))

    def cones(self) -> list[Cone2]:
        return [Cone2(u, v) for u, v in zip(self.rays, self.rays[1:], strict=False)]

    def interior_rays(self) -> tuple[LatticeVec, ...]:
        return self.rays[1:-1]

    def is_regular(self) -> bool:
        return all(c.is_regular() for c in self.cones())

    def next_ray(self, ray: LatticeVec) -> LatticeVec:
        i = self.rays.index(ray)
        return self.rays[i + 1]

    def previous_ray(self, ray: LatticeVec) -> LatticeVec:
        i = self.rays.index(ray)
        return self.rays[i - 1]


def regularize_cone(c: Cone2) -> list[LatticeVec]:
    """
    Rays inserted by the minimal regular subdivision of `c`, in slope order.

    Each step takes the lattice point w with det(u, w) = 1 closest to u, which is
    w = (v + k*u) / det(u, v) for the unique 0 <= k < det(u, v) making w integral.
    """
    inserted: list[LatticeVec] = []
    u, v = c.u, c.v
    d = det2(u, v)
    while d > 1:
        k = next(k for k in range(d) if (v.a + k * u.a) % d == 0 and (v.b + k * u.b) % d == 0)
        w = LatticeVec((v.a + k * u.a) // d, (v.b + k * u.b) // d)
        inserted.append(w)
        u, d = w, det2(w, v)
    return inserted


def regularize_fan(f: Fan2) -> Fan2:
    rays: list[LatticeVec] = [f.rays[0]]
    for cone in f.cones():
        rays.extend(regularize_cone(cone))
        rays.append(cone.v)
    return Fan2(tuple(rays))


@dataclass(frozen=True, slots=True)
class Matrix2:
    """
    A monomial chart with columns u, v.

    Substitution: x = X^{u.a} Y^{v.a}, y = X^{u.b} Y^{v.b}; on exponents,
    x^i y^j -> X^{<u,(i,j)>} Y^{<v,(i,j)>}. X = 0 is the orbit closure of the ray u.
    """

    u: LatticeVec
    v: LatticeVec

    def det(self) -> int:
        return det2(self.u, self.v)

    def apply(self, point: tuple[int, int]) -> tuple[int, int]:
        return (self.u.dot(point), self.v.dot(point))

    def apply_inverse(self, point: tuple[int, int]) -> tuple[int, int]:
        d = self.det()
        if abs(d) != 1:
            msg = f"Chart with columns {self.u}, {self.v} is not unimodular"
            raise NonRegularFan(msg)
        p, q = point
        # rows of (A^T)^{-1} for A = [[u.a, v.a], [u.b, v.b]]
        i = (self.v.b * p - self.u.b * q) * d
        j = (-self.v.a * p + self.u.a * q) * d
        return (i, j)

    def __matmul__(self, other: Matrix2) -> Matrix2:
        # (self @ other)^T e = other^T (self^T e): pull back by self, then by other.
        a11, a12, a21, a22 = self.u.a, self.v.a, self.u.b, self.v.b
        b11, b12, b21, b22 = other.u.a, other.v.a, other.u.b, other.v.b
        return Matrix2(
            LatticeVec(a11 * b11 + a12 * b21, a21 * b11 + a22 * b21),
            LatticeVec(a11 * b12 + a12 * b22, a21 * b12 + a22 * b22),
        )

    def __str__(self) -> str:
        return f"[{self.u} {self.v}]"


IDENTITY = Matrix2(E_R, E_L)


def charts(f: Fan2) -> list[Matrix2]:
    out: list[Matrix2] = []
    for u, v in zip(f.rays, f.rays[1:], strict=False):
        if det2(u, v) != 1:
            msg = f"Cone ({u}, {v}) has determinant {det2(u, v)}; the fan is not regular"
            raise NonRegularFan(msg)
        out.append(Matrix2(u, v))
    return out
