"""
Jumping numbers and monomial presentations of multiplier ideals.

Everything here runs on a `ValuationTable`. A formal monomial M in the element names belongs to
J(xi*C) iff xi_M > xi, where

    xi_M = min( min over rows D of (nu_D(M) + lambda_D) / nu_D(C),
                min over branches C_j of (m_j(M) + 1) / a_j ).

Membership of a monomial is a system of integer linear inequalities on its exponent vector:
nu_D(M) >= floor(xi*nu_D(C) - lambda_D) + 1 for every row and m_j >= floor(xi*a_j) for every
branch. Minimal generators are found by a depth-first search over exponent vectors that stops
a coordinate as soon as raising it cannot help any unsatisfied inequality.
"""

from __future__ import annotations

import logging
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .defaults import DEFAULT_THREADS
from .errors import InputError, InvariantViolation, NegativeExponent, UnknownElement
from .lattice import INFINITY, Slope
from .newton import translate, violated_ray
from .poly import BiPoly, exact_div_count, ideal_contains
from .resolution import Resolution, element_polynomial, newton_data_at
from .tree_functions import TreePoint, ValuationTable, log_discrepancy_propagated
from .util import ceil_fraction, format_rational

logger = logging.getLogger(__name__)

_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_#]*)(?:\^(\d+))?$")


# region ---[ Monomials ]---


@dataclass(frozen=True, slots=True)
class Monomial:
    """A formal monomial; exponents are kept sorted by name and never zero."""

    exponents: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, exponents: Mapping[str, int]) -> Monomial:
        for name, e in exponents.items():
            if e < 0:
                msg = f"Negative exponent {e} on {name}"
                raise NegativeExponent(msg)
        return cls(tuple(sorted((n, int(e)) for n, e in exponents.items() if e)))

    @classmethod
    def from_vector(cls, alphabet: tuple[str, ...], vector: tuple[int, ...]) -> Monomial:
        return cls.of(dict(zip(alphabet, vector, strict=True)))

    @classmethod
    def parse(cls, text: str) -> Monomial:
        """'1', 'x', 'x^2*y*z', 'x^2 y' ..."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        out: dict[str, int] = {}
        for token in re.split(r"[\s*]+", text):
            m = _FACTOR_RE.match(token)
            if not m:
                msg = f"Cannot read monomial factor {token!r} in {text!r}"
                raise InputError(msg)
            out[m.group(1)] = out.get(m.group(1), 0) + int(m.group(2) or 1)
        return cls.of(out)

    def as_dict(self) -> dict[str, int]:
        return dict(self.exponents)

    def power(self, name: str) -> int:
        return self.as_dict().get(name, 0)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    def vector(self, alphabet: tuple[str, ...]) -> tuple[int, ...]:
        d = self.as_dict()
        unknown = d.keys() - set(alphabet)
        if unknown:
            msg = f"Monomial {self} uses {sorted(unknown)}, outside the alphabet {list(alphabet)}"
            raise UnknownElement(msg)
        return tuple(d.get(n, 0) for n in alphabet)

    def divides(self, other: Monomial) -> bool:
        theirs = other.as_dict()
        return all(theirs.get(n, 0) >= e for n, e in self.exponents)

    def __mul__(self, other: Monomial) -> Monomial:
        out = self.as_dict()
        for n, e in other.exponents:
            out[n] = out.get(n, 0) + e
        return Monomial.of(out)

    def format(self, alphabet: tuple[str, ...] | None = None) -> str:
        if not self.exponents:
            return "1"
        d = self.as_dict()
        order = [n for n in (alphabet or ()) if n in d] + sorted(d.keys() - set(alphabet or ()))
        return "*".join(f"{n}^{d[n]}" if d[n] > 1 else n for n in order)

    def __str__(self) -> str:
        return self.format()


# endregion ---[ Monomials ]---
# region ---[ Linear systems ]---


@dataclass(frozen=True, slots=True)
class _Row:
    label: str
    weights: tuple[int, ...]
    lam: int
    curve: int


@dataclass(frozen=True, slots=True)
class _System:
    """The rows and branch conditions of a table, restricted to an alphabet."""

    alphabet: tuple[str, ...]
    rows: tuple[_Row, ...]
    branches: tuple[tuple[int, int, str], ...]  # (position in alphabet, a_j, name)

    def xi(self, vector: tuple[int, ...]) -> Slope:
        best = INFINITY
        for row in self.rows:
            nu = sum(w * e for w, e in zip(row.weights, vector, strict=True))
            best = min(best, Fraction(nu + row.lam, row.curve))
        for pos, mult, _ in self.branches:
            best = min(best, Fraction(vector[pos] + 1, mult))
        return best

    def thresholds(self, xi: Fraction) -> list[tuple[tuple[int, ...], int]]:
        """(weights, t) with membership iff <weights, e> >= t for all pairs."""
        out: list[tuple[tuple[int, ...], int]] = []
        n = len(self.alphabet)
        for row in self.rows:
            out.append((row.weights, math.floor(xi * row.curve - row.lam) + 1))
        for pos, mult, _ in self.branches:
            unit = tuple(1 if k == pos else 0 for k in range(n))
            out.append((unit, math.floor(xi * mult)))
        return out


def _system(table: ValuationTable, reduced: bool) -> _System:
    if reduced:
        alphabet = table.generating_names()
    else:
        alphabet = table.names
    rows = tuple(
        _Row(r.label, tuple(r.values[n] for n in alphabet), r.log_discrepancy, r.curve)
        for r in table.rows
    )
    branches: tuple[tuple[int, int, str], ...] = ()
    if not reduced:
        branches = tuple((alphabet.index(b.name), b.mult, b.name) for b in table.branches)
    return _System(alphabet, rows, branches)


def _use_reduced(table: ValuationTable, reduced: bool | None, below_one: bool) -> bool:
    if reduced is None:
        return table.reduced and below_one and bool(table.rows)
    if reduced and not (table.reduced and table.rows):
        msg = "The reduced alphabet needs a reduced curve with at least one exceptional row"
        raise InputError(msg)
    return reduced


def xi_of_monomial(table: ValuationTable, m: Monomial, *, reduced: bool = False) -> Fraction:
    system = _system(table, reduced)
    return system.xi(m.vector(system.alphabet))


def lct(table: ValuationTable) -> Fraction:
    return xi_of_monomial(table, Monomial())


# endregion ---[ Linear systems ]---
# region ---[ Minimal generators ]---


def _search(
    conditions: list[tuple[tuple[int, ...], int]],
    n: int,
    prefix: tuple[int, ...],
    deficits: list[int],
) -> Iterator[tuple[int, ...]]:
    if all(d <= 0 for d in deficits):
        yield prefix + (0,) * (n - len(prefix))
        return
    pos = len(prefix)
    if pos == n:
        return
    weights = [w[pos] for w, _ in conditions]
    top = max(
        (-(-d // w) for d, w in zip(deficits, weights, strict=True) if d > 0 and w > 0),
        default=0,
    )
    for e in range(top + 1):
        yield from _search(
            conditions,
            n,
            (*prefix, e),
            [d - e * w for d, w in zip(deficits, weights, strict=True)],
        )


def _satisfies(conditions: list[tuple[tuple[int, ...], int]], vector: tuple[int, ...]) -> bool:
    return all(sum(w * e for w, e in zip(ws, vector, strict=True)) >= t for ws, t in conditions)


def _is_minimal(conditions: list[tuple[tuple[int, ...], int]], vector: tuple[int, ...]) -> bool:
    for k, e in enumerate(vector):
        if e and _satisfies(conditions, (*vector[:k], e - 1, *vector[k + 1 :])):
            return False
    return True


def _minimal_vectors(system: _System, xi: Fraction, *, threads: int) -> list[tuple[int, ...]]:
    conditions = system.thresholds(xi)
    n = len(system.alphabet)
    start = [t for _, t in conditions]
    if n == 0:
        return [()] if all(t <= 0 for t in start) else []
    if all(t <= 0 for t in start):
        return [(0,) * n]

    weights0 = [w[0] for w, _ in conditions]
    top = max(
        (-(-t // w) for t, w in zip(start, weights0, strict=True) if t > 0 and w > 0),
        default=0,
    )

    def branch(e0: int) -> list[tuple[int, ...]]:
        deficits = [t - e0 * w for t, w in zip(start, weights0, strict=True)]
        return list(_search(conditions, n, (e0,), deficits))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(branch, e0) for e0 in range(top + 1)]
            parts = [f.result() for f in futures]
    else:
        parts = [branch(e0) for e0 in range(top + 1)]

    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    for part in parts:
        for v in part:
            if v not in seen and _is_minimal(conditions, v):
                seen.add(v)
                out.append(v)
    return out


def _sort_key(vector: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(vector), tuple(-e for e in vector))


# endregion ---[ Minimal generators ]---
# region ---[ Presentations ]---


@dataclass(frozen=True, slots=True)
class Generator:
    monomial: Monomial
    xi: Fraction
    values: dict[str, int]


@dataclass(frozen=True)
class IdealPresentation:
    """J(xi*C) as the formal monomial ideal generated by `generators`."""

    xi: Fraction
    alphabet: tuple[str, ...]
    generators: tuple[Generator, ...]
    reduced: bool = False
    table: ValuationTable | None = field(default=None, repr=False, compare=False)

    def monomials(self) -> list[Monomial]:
        return [g.monomial for g in self.generators]

    def contains(self, m: Monomial) -> bool:
        return any(g.monomial.divides(m) for g in self.generators)


@dataclass(frozen=True, slots=True)
class JumpingNumber:
    xi: Fraction
    witnesses: tuple[Monomial, ...]


def ideal_presentation(
    table: ValuationTable,
    xi: Fraction,
    *,
    reduced: bool | None = None,
    threads: int = DEFAULT_THREADS,
) -> IdealPresentation:
    """
    Minimal formal monomials M with xi_M > xi, each with its own xi_M.

    With the reduced alphabet (curve reduced and xi < 1 by default) only the exceptional rows
    and the generating elements are used.
    """
    xi = Fraction(xi)
    if xi <= 0:
        msg = f"xi must be positive, got {format_rational(xi)}"
        raise InputError(msg)
    use_reduced = _use_reduced(table, reduced, xi < 1)
    system = _system(table, use_reduced)
    vectors = sorted(_minimal_vectors(system, xi, threads=threads), key=_sort_key)
    generators = tuple(_generator(system, v) for v in vectors)
    for g in generators:
        if not xi < g.xi or (g.xi is not INFINITY and g.xi > xi + 1):
            msg = f"Generator {g.monomial} of J({format_rational(xi)} C) has xi_M = {g.xi}"
            raise InvariantViolation(msg)
    logger.debug("J(%s C): %s generators", format_rational(xi), len(generators))
    return IdealPresentation(xi, system.alphabet, generators, use_reduced, table)


def _generator(system: _System, vector: tuple[int, ...]) -> Generator:
    values = {
        row.label: sum(w * e for w, e in zip(row.weights, vector, strict=True))
        for row in system.rows
    }
    return Generator(Monomial.from_vector(system.alphabet, vector), system.xi(vector), values)


def jumping_data(
    table: ValuationTable,
    upper: Fraction,
    *,
    inclusive: bool = True,
    reduced: bool | None = None,
    threads: int = DEFAULT_THREADS,
) -> list[JumpingNumber]:
    """
    Jumping numbers in (0, upper], or (0, upper) with `inclusive=False`, with the generators
    that realize each of them.

    Walks up from 0: the next jumping number after xi is the smallest xi_M over the minimal
    generators of J(xi*C), and those generators attaining it are recorded as witnesses.
    """
    upper = Fraction(upper)
    if upper <= 0:
        msg = f"upper must be positive, got {format_rational(upper)}"
        raise InputError(msg)
    use_reduced = _use_reduced(table, reduced, upper < 1 or (upper == 1 and not inclusive))
    system = _system(table, use_reduced)

    out: list[JumpingNumber] = []
    xi = Fraction(0)
    while True:
        vectors = _minimal_vectors(system, xi, threads=threads)
        scored = [(system.xi(v), v) for v in vectors]
        nxt = min((s for s, _ in scored), default=INFINITY)
        if nxt is INFINITY or nxt > upper or (nxt == upper and not inclusive):
            break
        witnesses = tuple(
            Monomial.from_vector(system.alphabet, v)
            for s, v in sorted(scored, key=lambda t: _sort_key(t[1]))
            if s == nxt
        )
        out.append(JumpingNumber(nxt, witnesses))
        xi = nxt
    logger.info("%s jumping numbers up to %s", len(out), format_rational(upper))
    return out


def jumping_numbers(
    table: ValuationTable,
    upper: Fraction,
    *,
    inclusive: bool = True,
    reduced: bool | None = None,
    threads: int = DEFAULT_THREADS,
) -> list[Fraction]:
    data = jumping_data(table, upper, inclusive=inclusive, reduced=reduced, threads=threads)
    return [j.xi for j in data]


def enumerate_xi_values(
    table: ValuationTable, upper: Fraction, *, reduced: bool = False
) -> list[Fraction]:
    """
    Every xi_M <= upper for M in the exponent box, by direct enumeration.

    The box bounds the exponent of L by the largest ceil((upper + 1) * nu_D(C) / nu_D(L)) over
    the rows, and by ceil((upper + 1) * a_j) for a branch. Past it every row ratio exceeds
    upper + 1, so xi_M is unchanged or already above upper.
    """
    upper = Fraction(upper)
    system = _system(table, reduced)
    box: list[int] = []
    for k in range(len(system.alphabet)):
        bound = max(
            (
                ceil_fraction((upper + 1) * r.curve / r.weights[k])
                for r in system.rows
                if r.weights[k]
            ),
            default=0,
        )
        for pos, mult, _ in system.branches:
            if pos == k:
                bound = max(bound, ceil_fraction((upper + 1) * mult))
        box.append(bound)

    found: set[Fraction] = set()

    def walk(prefix: tuple[int, ...]) -> None:
        pos = len(prefix)
        if pos == len(box):
            value = system.xi(prefix)
            if value is not INFINITY and value <= upper:
                found.add(value)
            return
        for e in range(box[pos] + 1):
            corner = (*prefix, e) + (0,) * (len(box) - pos - 1)
            value = system.xi(corner)
            if value is not INFINITY and value > upper:
                break
            walk((*prefix, e))

    walk(())
    return sorted(found)


def shift_by_period(pres: IdealPresentation, k: int) -> IdealPresentation:
    """Multiply every generator by f_C^k; the result presents J((xi + k) C) in the full alphabet."""
    if k < 1:
        msg = f"Period shift must be a positive integer, got {k}"
        raise InputError(msg)
    if pres.table is None:
        msg = "Presentation carries no valuation table to shift by"
        raise InputError(msg)
    table = pres.table
    if pres.reduced:
        pres = ideal_presentation(table, pres.xi, reduced=False)
    f_c = Monomial.of({b.name: b.mult * k for b in table.branches})
    generators = tuple(
        Generator(
            g.monomial * f_c,
            g.xi + k,
            {label: v + k * table.row(label).curve for label, v in g.values.items()},
        )
        for g in pres.generators
    )
    return IdealPresentation(pres.xi + k, table.names, generators, False, table)


def same_ideal(a: list[Monomial], b: list[Monomial]) -> bool:
    """Whether two lists of formal monomials generate the same monomial ideal."""
    covered = all(any(g.divides(m) for g in b) for m in a)
    return covered and all(any(g.divides(m) for g in a) for m in b)


def polynomial_generators(resolution: Resolution, monomials: list[Monomial]) -> list[BiPoly]:
    """Substitute the element polynomials into formal monomials."""
    lifted: dict[str, BiPoly] = {}
    out: list[BiPoly] = []
    for m in monomials:
        h = BiPoly.constant(1)
        for name, e in m.exponents:
            if name not in lifted:
                lifted[name] = element_polynomial(resolution, name)
            h = h * lifted[name] ** e
        out.append(h)
    return out


def same_polynomial_ideal(resolution: Resolution, a: list[Monomial], b: list[Monomial]) -> bool:
    """
    Whether two formal presentations span the same ideal of Q[x, y] once the element
    polynomials are substituted.

    Formal monomials such as z^3 may be redundant in Q[x, y] and so absent from a hand-made
    list. With weighted homogeneous element polynomials the global comparison decides the
    local one too.
    """
    pa, pb = polynomial_generators(resolution, a), polynomial_generators(resolution, b)
    return ideal_contains(pa, pb) and ideal_contains(pb, pa)


# endregion ---[ Presentations ]---
# region ---[ Membership ]---


@dataclass(frozen=True, slots=True)
class MembershipResult:
    member: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.member


def monomial_values(table: ValuationTable, m: Monomial) -> dict[str, int]:
    """nu_D(M) for every row, and the exponent of every branch of C."""
    vector = m.vector(table.names)
    out = {
        row.label: sum(row.values[n] * e for n, e in zip(table.names, vector, strict=True))
        for row in table.rows
    }
    for b in table.branches:
        out[b.name] = m.power(b.name)
    return out


def membership_by_values(
    table: ValuationTable, values: Mapping[str, int], xi: Fraction
) -> MembershipResult:
    """
    h in J(xi*C) from its values: nu_D(h) for every row label and the power of every branch of
    C dividing h.
    """
    for row in table.rows:
        if row.label not in values:
            msg = f"No value given for row {row.label}"
            raise UnknownElement(msg)
        if not values[row.label] + row.log_discrepancy > xi * row.curve:
            return MembershipResult(False, row.label)
    for b in table.branches:
        if not values.get(b.name, 0) + 1 > xi * b.mult:
            return MembershipResult(False, b.name)
    return MembershipResult(True)


def monomial_membership(table: ValuationTable, m: Monomial, xi: Fraction) -> MembershipResult:
    return membership_by_values(table, monomial_values(table, m), xi)


def membership(resolution: Resolution, h: BiPoly, xi: Fraction) -> MembershipResult:
    """
    h in J(xi*C), node by node: the Newton polygon of the total transform of h, moved by the
    log-discrepancy vector of the cross, must lie in the interior of xi times the polygon of C.
    Points where a branch of C is a cross are decided by the branch condition.
    """
    xi = Fraction(xi)
    tree, ledger = resolution.tree, resolution.ledger
    for node in tree.curvetta_nodes():
        lam_r = log_discrepancy_propagated(tree, TreePoint(node.id, Fraction(0)))
        shifted = translate(newton_data_at(ledger, node.id, h), (lam_r, 1))
        ray = violated_ray(resolution.curve_polygon(node.id), xi, shifted)
        if ray is not None:
            return MembershipResult(False, _ray_label(node, ray))
    for f in resolution.curve.factors:
        if not exact_div_count(h, f.poly) + 1 > xi * f.mult:
            return MembershipResult(False, f.name)
    return MembershipResult(True)


def _ray_label(node, ray) -> str:
    if ray.b == 0:
        return node.r_label
    if ray.a == 0:
        return node.end.label
    for m in node.trunk:
        if m.ray == ray:
            return m.label
    return f"E{node.id}.{format_rational(Fraction(ray.b, ray.a))}"


# endregion ---[ Membership ]---
