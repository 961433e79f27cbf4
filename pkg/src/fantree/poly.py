"""
Exact sparse bivariate polynomials over Q.

`BiPoly` keeps its own sparse dictionary of exponents (i, j) -> Fraction, which is what the
chart machinery needs (linear maps on exponents, translations in y). Anything that needs real
algebra (factorization of a univariate face polynomial, exact division, gcd, resultants) is
delegated to sympy through `to_sympy` / `from_sympy`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.polyerrors import CoercionFailed, ExactQuotientFailed, PolynomialError
from typeguard import typechecked

from .defaults import DEFAULT_SHEAR_LIMIT
from .errors import (
    CommonFactor,
    DocumentError,
    InputError,
    InvariantViolation,
    NegativeExponent,
    ZeroPolynomial,
)
from .lattice import LatticeVec, Matrix2
from .newton import NewtonPolygon, polygon_from_support
from .types import TExponentPair
from .util import format_rational, parse_rational

logger = logging.getLogger(__name__)

SYM_X, SYM_Y = sympy.symbols("x y")
_SYM_T = sympy.Symbol("t")

Coefficient = Fraction | int


class BiPoly:
    """An element of Q[x, y]; immutable, hashable, zero coefficients never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[TExponentPair, Coefficient] | None = None) -> None:
        clean: dict[TExponentPair, Fraction] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                msg = f"Negative exponent {(i, j)} in a polynomial"
                raise NegativeExponent(msg)
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash: int | None = None

    # region ---[ Construction ]---

    @classmethod
    def zero(cls) -> BiPoly:
        return cls()

    @classmethod
    def constant(cls, c: Coefficient) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Coefficient = 1) -> BiPoly:
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> BiPoly:
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> BiPoly:
        return cls.monomial(0, 1)

    # endregion ---[ Construction ]---

    @property
    def terms(self) -> dict[TExponentPair, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[TExponentPair, Fraction]]:
        """Terms in canonical (i, j)-lexicographic order."""
        return sorted(self._terms.items())

    def support(self) -> list[TExponentPair]:
        return sorted(self._terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self.coefficient(0, 0)

    def degree_x(self) -> int:
        return max((i for i, _ in self._terms), default=0)

    def degree_y(self) -> int:
        return max((j for _, j in self._terms), default=0)

    def at_x_zero(self) -> list[Fraction]:
        """Coefficients of f(0, y), lowest degree first."""
        out = [Fraction(0)] * (self.degree_y() + 1)
        for (i, j), c in self._terms.items():
            if i == 0:
                out[j] = c
        return out

    def at_y_zero(self) -> list[Fraction]:
        """Coefficients of f(x, 0), lowest degree first."""
        out = [Fraction(0)] * (self.degree_x() + 1)
        for (i, j), c in self._terms.items():
            if j == 0:
                out[i] = c
        return out

    def newton_polygon(self) -> NewtonPolygon:
        if self.is_zero():
            msg = "The zero polynomial has no Newton polygon"
            raise ZeroPolynomial(msg)
        return polygon_from_support(self._terms)

    # region ---[ Arithmetic ]---

    def __add__(self, other: BiPoly | Coefficient) -> BiPoly:
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: BiPoly | Coefficient) -> BiPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: Coefficient) -> BiPoly:
        return _coerce(other) - self

    def __mul__(self, other: BiPoly | Coefficient) -> BiPoly:
        other = _coerce(other)
        out: dict[TExponentPair, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BiPoly:
        if n < 0:
            msg = "Negative powers are not polynomials"
            raise NegativeExponent(msg)
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Coefficient) -> BiPoly:
        return BiPoly({e: v * c for e, v in self._terms.items()})

    def shift_exponents(self, di: int, dj: int) -> BiPoly:
        return BiPoly({(i + di, j + dj): c for (i, j), c in self._terms.items()})

    # endregion ---[ Arithmetic ]---

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __iter__(self) -> Iterator[tuple[TExponentPair, Fraction]]:
        return iter(self.items())

    def __repr__(self) -> str:
        return f"BiPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        order = sorted(self._terms.items(), key=lambda t: (t[0][0] + t[0][1], -t[0][1]))
        for (i, j), c in order:
            mono = "*".join(
                f"{name}^{k}" if k > 1 else name for name, k in (("x", i), ("y", j)) if k
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    # region ---[ sympy bridge ]---

    def to_sympy(self, *gens: sympy.Symbol) -> sympy.Poly:
        gens = gens or (SYM_X, SYM_Y)
        expr = sum(
            (
                sympy.Rational(c.numerator, c.denominator) * SYM_X**i * SYM_Y**j
                for (i, j), c in self._terms.items()
            ),
            sympy.Integer(0),
        )
        return sympy.Poly(expr, *gens, domain="QQ")

    @classmethod
    def from_sympy(cls, p: sympy.Poly | sympy.Expr) -> BiPoly:
        if not isinstance(p, sympy.Poly):
            p = sympy.Poly(p, SYM_X, SYM_Y, domain="QQ")
        elif p.gens != (SYM_X, SYM_Y):
            p = sympy.Poly(p.as_expr(), SYM_X, SYM_Y, domain="QQ")
        return cls({(int(i), int(j)): _to_fraction(c) for (i, j), c in p.terms()})

    # endregion ---[ sympy bridge ]---


def _coerce(value: BiPoly | Coefficient) -> BiPoly:
    if isinstance(value, BiPoly):
        return value
    return BiPoly.constant(value)


def _to_fraction(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def _to_sympy_rational(c: Fraction) -> sympy.Rational:
    return sympy.Rational(c.numerator, c.denominator)


def x_power(k: int) -> BiPoly:
    return BiPoly.monomial(k, 0)


def ord_v(f: BiPoly, v: LatticeVec) -> int:
    if f.is_zero():
        msg = "Monomial valuation of the zero polynomial"
        raise ZeroPolynomial(msg)
    return min(v.dot(e) for e in f.support())


def exceptional_split(g: BiPoly) -> tuple[int, int, BiPoly]:
    """g = x^a y^b * core with core divisible by neither x nor y."""
    if g.is_zero():
        msg = "Cannot split the zero polynomial"
        raise ZeroPolynomial(msg)
    a = min(i for i, _ in g.support())
    b = min(j for _, j in g.support())
    return a, b, g.shift_exponents(-a, -b)


def shift_y(f: BiPoly, c: Coefficient) -> BiPoly:
    """f(x, y + c)."""
    c = Fraction(c)
    if not c:
        return f
    out: dict[TExponentPair, Fraction] = {}
    for (i, j), coef in f.terms.items():
        for k in range(j + 1):
            e = (i, k)
            out[e] = out.get(e, Fraction(0)) + coef * math.comb(j, k) * c ** (j - k)
    return BiPoly(out)


def substitute_y(f: BiPoly, g: BiPoly) -> BiPoly:
    """f(x, g(x, y))."""
    powers: list[BiPoly] = [BiPoly.constant(1)]
    out = BiPoly.zero()
    for (i, j), c in f.items():
        while len(powers) <= j:
            powers.append(powers[-1] * g)
        out = out + powers[j].shift_exponents(i, 0).scale(c)
    return out


def shear_x(f: BiPoly, t: int) -> BiPoly:
    """f(x + t*y, y)."""
    if t == 0:
        return f
    base = BiPoly({(1, 0): 1, (0, 1): t})
    powers: list[BiPoly] = [BiPoly.constant(1)]
    out = BiPoly.zero()
    for (i, j), c in f.items():
        while len(powers) <= i:
            powers.append(powers[-1] * base)
        out = out + powers[i].shift_exponents(0, j).scale(c)
    return out


def monomial_pullback(f: BiPoly, chart: Matrix2) -> BiPoly:
    """Substitute x = X^{u.a} Y^{v.a}, y = X^{u.b} Y^{v.b}; exponents map linearly."""
    for col in (chart.u, chart.v):
        if col.a < 0 or col.b < 0:
            msg = f"Chart {chart} has a negative entry; the pullback would not be polynomial"
            raise NegativeExponent(msg)
    out: dict[TExponentPair, Fraction] = {}
    for e, c in f.terms.items():
        out[chart.apply(e)] = c
    return BiPoly(out)


def monomial_pushforward(g: BiPoly, chart: Matrix2) -> BiPoly:
    """
    The curve of g in chart coordinates, written back in the coordinates below the chart.

    Applies the inverse Laurent substitution and clears the monomial denominator, then removes
    any remaining monomial factor.
    """
    if g.is_zero():
        msg = "Cannot push forward the zero polynomial"
        raise ZeroPolynomial(msg)
    image = {chart.apply_inverse(e): c for e, c in g.terms.items()}
    di = -min(i for i, _ in image)
    dj = -min(j for _, j in image)
    laurent_cleared = BiPoly({(i + di, j + dj): c for (i, j), c in image.items()})
    return exceptional_split(laurent_cleared)[2]


# region ---[ Univariate helpers ]---


@dataclass(frozen=True, slots=True)
class RootReport:
    """Rational roots with multiplicities and the irreducible non-linear rest."""

    roots: tuple[tuple[Fraction, int], ...]
    nonlinear: tuple[tuple[tuple[Fraction, ...], int], ...]

    @property
    def cofactor_degree(self) -> int:
        return sum((len(coeffs) - 1) * mult for coeffs, mult in self.nonlinear)


def _univariate_poly(coeffs: list[Fraction]) -> sympy.Poly:
    dense = [_to_sympy_rational(Fraction(c)) for c in reversed(coeffs)]
    return sympy.Poly(dense, _SYM_T, domain="QQ")


def univariate_factorization(coeffs: list[Coefficient]) -> RootReport:
    """Factor sum(coeffs[k] t^k) over Q. Non-linear factors are made monic, lowest degree first."""
    coeffs = [Fraction(c) for c in coeffs]
    if not any(coeffs):
        msg = "Cannot find the roots of the zero polynomial"
        raise ZeroPolynomial(msg)
    p = _univariate_poly(coeffs)
    roots: list[tuple[Fraction, int]] = []
    nonlinear: list[tuple[tuple[Fraction, ...], int]] = []
    if p.degree() <= 0:
        return RootReport((), ())
    _, factors = p.factor_list()
    for factor, mult in factors:
        monic = factor.monic()
        if monic.degree() == 1:
            roots.append((-_to_fraction(monic.all_coeffs()[1]), int(mult)))
        else:
            ascending = tuple(_to_fraction(c) for c in reversed(monic.all_coeffs()))
            nonlinear.append((ascending, int(mult)))
    roots.sort()
    nonlinear.sort()
    return RootReport(tuple(roots), tuple(nonlinear))


def univariate_rational_roots(coeffs: list[Coefficient]) -> tuple[list[tuple[Fraction, int]], int]:
    """Rational roots (ascending, with multiplicity) and the degree of the root-free cofactor."""
    report = univariate_factorization(coeffs)
    return list(report.roots), report.cofactor_degree


def univariate_order(coeffs: list[Coefficient]) -> int:
    """Order of vanishing at 0; the zero polynomial has no order."""
    for k, c in enumerate(coeffs):
        if c:
            return k
    msg = "Order of the zero polynomial"
    raise ZeroPolynomial(msg)


# endregion ---[ Univariate helpers ]---
# region ---[ Division, gcd, resultants ]---


def exact_div_count(h: BiPoly, f: BiPoly) -> int:
    """The largest k with f^k dividing h."""
    if h.is_zero() or f.is_zero():
        msg = "exact_div_count needs nonzero polynomials"
        raise ZeroPolynomial(msg)
    if f.is_constant():
        msg = f"Cannot count divisions by the unit {f}"
        raise InputError(msg)
    H, F = h.to_sympy(), f.to_sympy()
    k = 0
    while True:
        try:
            H = H.exquo(F)
        except ExactQuotientFailed:
            return k
        k += 1


def have_common_factor(f: BiPoly, g: BiPoly) -> bool:
    common = sympy.gcd(f.to_sympy(), g.to_sympy())
    return common.total_degree() > 0


def ideal_contains(generators: list[BiPoly], polys: list[BiPoly]) -> bool:
    """Whether every polynomial in `polys` lies in the ideal of Q[x, y] spanned by `generators`."""
    if not generators:
        return all(h.is_zero() for h in polys)
    basis = sympy.groebner(
        [g.to_sympy().as_expr() for g in generators], SYM_X, SYM_Y, order="grevlex", domain="QQ"
    )
    return all(basis.contains(h.to_sympy().as_expr()) for h in polys)


def resultant_y(f: BiPoly, g: BiPoly, *, shear: int = 0) -> list[Fraction]:
    """
    Coefficients (lowest degree first) of Res_y(f, g) after the shear x -> x + shear*y.
    """
    if f.is_zero() or g.is_zero():
        msg = "Resultant of the zero polynomial"
        raise ZeroPolynomial(msg)
    if have_common_factor(f, g):
        msg = f"{f} and {g} share a factor; their resultant vanishes"
        raise CommonFactor(msg)
    F = shear_x(f, shear).to_sympy(SYM_Y, SYM_X)
    G = shear_x(g, shear).to_sympy(SYM_Y, SYM_X)
    res = sympy.Poly(F.resultant(G).as_expr(), SYM_X, domain="QQ")
    return [_to_fraction(c) for c in reversed(res.all_coeffs())]


def _is_y_general(f: BiPoly) -> bool:
    top = f.degree_y()
    if top == 0:
        return False
    return all(i == 0 for i, j in f.support() if j == top)


def _only_common_zero_at_origin(f: BiPoly, g: BiPoly) -> bool:
    f0 = _univariate_poly(f.at_x_zero())
    g0 = _univariate_poly(g.at_x_zero())
    common = sympy.gcd(f0, g0)
    return len(common.terms()) == 1


def intersection_multiplicity(
    f: BiPoly, g: BiPoly, *, shear_limit: int = DEFAULT_SHEAR_LIMIT
) -> int:
    """
    dim Q[[x,y]]/(f,g) as the order at x = 0 of a resultant in y.

    Shears x -> x + t*y, t = 0, 1, 2, ... until both polynomials are monic in y up to a
    constant and the line x = 0 meets their common zeros only at the origin.
    """
    if have_common_factor(f, g):
        msg = f"{f} and {g} share a factor; the intersection is not finite"
        raise CommonFactor(msg)
    for t in range(shear_limit + 1):
        F, G = shear_x(f, t), shear_x(g, t)
        if not (_is_y_general(F) and _is_y_general(G)):
            continue
        if not _only_common_zero_at_origin(F, G):
            continue
        coeffs = resultant_y(F, G)
        logger.debug("intersection of %s and %s via shear t=%s", f, g, t)
        return univariate_order(coeffs)
    msg = f"No shear t <= {shear_limit} makes ({f}, {g}) y-general"
    raise InvariantViolation(msg)


# endregion ---[ Division, gcd, resultants ]---
# region ---[ Parsing and serialization ]---

_TRANSFORMATIONS = (*standard_transformations, implicit_multiplication_application, convert_xor)


@typechecked
def parse_poly(source: str | list, *, coordinates: tuple[str, str] = ("x", "y")) -> BiPoly:
    """
    Read a polynomial from a JSON triple list [[i, j, "p/q"], ...] or an expression in the two
    coordinates (x, y unless renamed).
    """
    if isinstance(source, list):
        return poly_from_json(source)
    try:
        names = {coordinates[0]: SYM_X, coordinates[1]: SYM_Y}
        expr = parse_expr(source, local_dict=names, transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        msg = f"Cannot parse polynomial {source!r}: {e}"
        raise DocumentError(msg) from None
    expr = sympy.sympify(expr)
    extra = expr.free_symbols - {SYM_X, SYM_Y}
    if extra:
        msg = f"Polynomial {source!r} uses unknown variables {sorted(map(str, extra))}"
        raise DocumentError(msg)
    try:
        return BiPoly.from_sympy(sympy.Poly(sympy.expand(expr), SYM_X, SYM_Y, domain="QQ"))
    except (PolynomialError, CoercionFailed) as e:
        msg = f"{source!r} is not a polynomial in {coordinates[0]}, {coordinates[1]} over Q: {e}"
        raise DocumentError(msg) from None


def poly_from_json(triples: Iterable) -> BiPoly:
    terms: dict[TExponentPair, Fraction] = {}
    for item in triples:
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            msg = f"Polynomial term must be [i, j, \"p/q\"], got {item!r}"
            raise DocumentError(msg)
        i, j, c = item
        if not (isinstance(i, int) and isinstance(j, int)) or i < 0 or j < 0:
            msg = f"Exponents must be nonnegative integers, got {item!r}"
            raise DocumentError(msg)
        terms[(i, j)] = terms.get((i, j), Fraction(0)) + parse_rational(c)
    return BiPoly(terms)


def poly_to_json(f: BiPoly) -> list[list]:
    return [[i, j, format_rational(c)] for (i, j), c in f.items()]


# endregion ---[ Parsing and serialization ]---
