from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Protocol

from .defaults import DEFAULT_CURVE_COLUMN, DEFAULT_JSON_INDENT, DEFAULT_SCHEMA
from .lattice import INFINITY, Slope
from .multiplier import IdealPresentation, MembershipResult
from .oracles import BlowupChain
from .resolution import FanTree, Resolution, render_tree
from .tree_functions import DecorationTable, ValuationTable
from .util import format_rational


class Formatter(Protocol):
    def resolution(
        self, resolution: Resolution, decorations: DecorationTable, table: ValuationTable
    ) -> str: ...
    def jumping(self, numbers: list[Fraction]) -> str: ...
    def ideals(self, presentations: list[IdealPresentation]) -> str: ...
    def member(self, result: MembershipResult, xi: Fraction) -> str: ...
    def blowup(self, chain: BlowupChain) -> str: ...
    def intersections(self, pairs: list[tuple[str, str, int]]) -> str: ...


def _slope(value: Slope) -> str:
    return "oo" if value is INFINITY else format_rational(value)


def _optional(value: Fraction | None) -> str | None:
    return None if value is None else format_rational(value)


# region ---[ Documents ]---


def tree_document(tree: FanTree) -> dict[str, Any]:
    nodes = []
    for node in tree.nodes:
        nodes.append(
            {
                "id": node.id,
                "parent": node.parent,
                "attach_slope": _optional(node.attach_slope),
                "center": _optional(node.center),
                "on": node.r_label,
                "terminal": node.terminal,
                "conjugate": node.conjugate,
                "trunk": [
                    {"slope": format_rational(m.slope), "label": m.label} for m in node.trunk
                ],
                "end_slope": _slope(node.end.slope),
                "curvetta": node.end.name if node.end.factor is None else None,
                "ends": [node.end.label] if node.end.factor is not None else [],
            }
        )
    return {"nodes": nodes, "branches": list(tree.factor_names)}


def decorations_document(decorations: DecorationTable) -> list[dict[str, Any]]:
    return [
        {
            "label": d.label,
            "node": d.point.node,
            "slope": _slope(d.point.slope),
            "delta": list(d.delta),
            "delta_plus": list(d.delta_plus),
            "index": d.index,
            "index_plus": d.index_plus,
            "exponent": _slope(d.exponent),
            "contact": _slope(d.contact),
            "lambda": d.log_discrepancy,
        }
        for d in decorations.rows
    ]


def table_document(table: ValuationTable) -> dict[str, Any]:
    return {
        "elements": [
            {"name": e.name, "kind": e.kind, "generating": e.generating} for e in table.elements
        ],
        "rows": [
            {
                "label": r.label,
                "lambda": r.log_discrepancy,
                "values": dict(r.values),
                "curve": r.curve,
            }
            for r in table.rows
        ],
        "branches": [{"name": b.name, "mult": b.mult} for b in table.branches],
        "notes": list(table.notes),
    }


def presentation_document(pres: IdealPresentation) -> dict[str, Any]:
    return {
        "xi": format_rational(pres.xi),
        "alphabet": list(pres.alphabet),
        "reduced": pres.reduced,
        "generators": [
            {"monomial": g.monomial.as_dict(), "xi_M": format_rational(g.xi)}
            for g in pres.generators
        ],
    }


# endregion ---[ Documents ]---


class JsonFormatter:
    def _dump(self, payload: dict[str, Any]) -> str:
        return json.dumps({"schema": DEFAULT_SCHEMA, **payload}, indent=DEFAULT_JSON_INDENT) + "\n"

    def resolution(
        self, resolution: Resolution, decorations: DecorationTable, table: ValuationTable
    ) -> str:
        return self._dump(
            {
                "tree": tree_document(resolution.tree),
                "decorations": decorations_document(decorations),
                "table": table_document(table),
            }
        )

    def jumping(self, numbers: list[Fraction]) -> str:
        return self._dump({"jumping_numbers": [format_rational(xi) for xi in numbers]})

    def ideals(self, presentations: list[IdealPresentation]) -> str:
        if len(presentations) == 1:
            return self._dump({"ideal": presentation_document(presentations[0])})
        return self._dump({"ideals": [presentation_document(p) for p in presentations]})

    def member(self, result: MembershipResult, xi: Fraction) -> str:
        return self._dump(
            {"xi": format_rational(xi), "member": result.member, "witness": result.witness}
        )

    def blowup(self, chain: BlowupChain) -> str:
        rupture = {d.name for d in chain.rupture_divisors()}
        return self._dump(
            {
                "divisors": [
                    {
                        "name": d.name,
                        "nu": d.curve,
                        "lambda": d.log_discrepancy,
                        "rupture": d.name in rupture,
                    }
                    for d in chain.divisors
                ],
                "lct": format_rational(chain.log_canonical_threshold()),
            }
        )

    def intersections(self, pairs: list[tuple[str, str, int]]) -> str:
        return self._dump({"intersections": [{"a": a, "b": b, "value": v} for a, b, v in pairs]})


class TextFormatter:
    def resolution(
        self, resolution: Resolution, decorations: DecorationTable, table: ValuationTable
    ) -> str:
        parts = [render_tree(resolution.tree)]
        if decorations.rows:
            lines = ["label   slope  index  exponent  contact  lambda"]
            for d in decorations.rows:
                lines.append(
                    f"{d.label:<5} {_slope(d.point.slope):>7} {d.index:>6} {_slope(d.exponent):>9}"
                    f" {_slope(d.contact):>8} {d.log_discrepancy:>7}"
                )
            parts.append("\n".join(lines) + "\n")
        parts.append(self.table(table))
        return "\n".join(parts)

    def table(self, table: ValuationTable) -> str:
        columns = [*table.names, DEFAULT_CURVE_COLUMN, "lambda"]
        width = max(len(c) for c in columns) + 2
        lines = [" " * 6 + "".join(f"{c:>{width}}" for c in columns)]
        for r in table.rows:
            cells = [*(r.values[n] for n in table.names), r.curve, r.log_discrepancy]
            lines.append(f"{r.label:<6}" + "".join(f"{c:>{width}}" for c in cells))
        lines.extend(f"note: {n}" for n in table.notes)
        return "\n".join(lines) + "\n"

    def jumping(self, numbers: list[Fraction]) -> str:
        return "".join(f"{format_rational(xi)}\n" for xi in numbers)

    def ideals(self, presentations: list[IdealPresentation]) -> str:
        return "".join(
            f"{format_rational(p.xi)}: "
            + ", ".join(m.format(p.alphabet) for m in p.monomials())
            + "\n"
            for p in presentations
        )

    def member(self, result: MembershipResult, xi: Fraction) -> str:
        if result:
            return "true\n"
        return f"false (fails on {result.witness})\n"

    def blowup(self, chain: BlowupChain) -> str:
        rupture = {d.name for d in chain.rupture_divisors()}
        lines = [
            f"{d.name} ({d.curve}, {d.log_discrepancy})"
            + ("  rupture" if d.name in rupture else "")
            for d in chain.divisors
        ]
        return "\n".join(lines) + "\n"

    def intersections(self, pairs: list[tuple[str, str, int]]) -> str:
        return "".join(f"({a} . {b}) = {v}\n" for a, b, v in pairs)
