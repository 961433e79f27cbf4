from __future__ import annotations

from typing import Any

from typeguard import typechecked

from ..core import InputSource
from ..errors import DocumentError, NoLedgerData
from ..resolution import Resolution
from ..tree_functions import BranchRow, Element, ValuationRow, ValuationTable

_KINDS = ("R", "curvetta", "branch")


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        msg = f"{what} must be an integer, got {value!r}"
        raise DocumentError(msg)
    return value


def _branches(doc: dict[str, Any]) -> tuple[BranchRow, ...]:
    out: list[BranchRow] = []
    for item in doc.get("branches", []):
        if isinstance(item, str):
            item = {"name": item}
        if not isinstance(item, dict) or not isinstance(item.get("name"), str):
            msg = f"Branch entry must be a name or {{'name': ..., 'mult': ...}}, got {item!r}"
            raise DocumentError(msg)
        out.append(BranchRow(item["name"], _int(item.get("mult", 1), f"mult of {item['name']}")))
    return tuple(out)


def _elements(doc: dict[str, Any], branches: tuple[BranchRow, ...]) -> tuple[Element, ...]:
    mults = {b.name: b.mult for b in branches}
    out: list[Element] = []
    for item in doc.get("elements", []):
        if isinstance(item, str):
            item = {"name": item}
        if not isinstance(item, dict) or not isinstance(item.get("name"), str):
            msg = f"Element entry must be a name or an object with 'name', got {item!r}"
            raise DocumentError(msg)
        name = item["name"]
        kind = item.get("kind", "branch" if name in mults else "curvetta")
        if kind not in _KINDS:
            msg = f"Element {name}: kind must be one of {list(_KINDS)}, got {kind!r}"
            raise DocumentError(msg)
        generating = item.get("generating", True)
        if not isinstance(generating, bool):
            msg = f"Element {name}: 'generating' must be true or false"
            raise DocumentError(msg)
        out.append(Element(name, kind, (), generating, mults.get(name, 0)))
    if not out:
        msg = "A table document needs a non-empty 'elements' list"
        raise DocumentError(msg)
    return tuple(out)


def _rows(doc: dict[str, Any], branches: tuple[BranchRow, ...]) -> tuple[ValuationRow, ...]:
    out: list[ValuationRow] = []
    for item in doc.get("rows", []):
        if not isinstance(item, dict) or not isinstance(item.get("values"), dict):
            msg = f"Row entry must be an object with 'label', 'lambda' and 'values', got {item!r}"
            raise DocumentError(msg)
        label = item.get("label")
        if not isinstance(label, str):
            msg = f"Row label must be a string, got {label!r}"
            raise DocumentError(msg)
        values = {name: _int(v, f"nu_{label}({name})") for name, v in item["values"].items()}
        curve = item.get("curve")
        if curve is None:
            curve = sum(b.mult * values.get(b.name, 0) for b in branches)
        lam = _int(item.get("lambda"), f"lambda of {label}")
        out.append(ValuationRow(label, lam, values, _int(curve, f"curve of {label}")))
    return tuple(out)


class TableSource(InputSource):
    """
    A raw valuation table: elements, rows of (lambda, values) and the branches of C with their
    multiplicities. The output of `fantree resolve` is accepted as well (its "table" member).
    """

    @typechecked
    def __init__(self, doc: dict[str, Any]) -> None:
        body = doc.get("table", doc)
        if not isinstance(body, dict):
            msg = "'table' must be an object"
            raise DocumentError(msg)
        branches = _branches(body)
        notes = body.get("notes", [])
        elements, rows = _elements(body, branches), _rows(body, branches)
        self._table = ValuationTable(elements, rows, branches, tuple(notes))

    def valuation_table(self) -> ValuationTable:
        return self._table

    def resolution(self) -> Resolution:
        msg = "A valuation table carries no polynomials; this command needs --curve"
        raise NoLedgerData(msg)
