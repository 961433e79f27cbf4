from __future__ import annotations

import logging
from typing import Any

from typeguard import typechecked

from ..core import InputSource
from ..defaults import DEFAULT_BRANCH_PREFIX, DEFAULT_DEPTH_LIMIT
from ..errors import DocumentError
from ..poly import BiPoly, parse_poly
from ..resolution import Curve, Factor, Resolution, resolve
from ..tree_functions import ValuationTable, build_valuation_table

logger = logging.getLogger(__name__)


def _coordinates(doc: dict[str, Any]) -> tuple[str, str]:
    coords = doc.get("coordinates", ["x", "y"])
    names_ok = isinstance(coords, list) and all(isinstance(c, str) for c in coords)
    if not (names_ok and len(coords) == 2):
        msg = f"'coordinates' must be a list of two names, got {coords!r}"
        raise DocumentError(msg)
    if coords[0] == coords[1]:
        msg = f"The two coordinates must differ, got {coords!r}"
        raise DocumentError(msg)
    return coords[0], coords[1]


def _factor(item: Any, k: int, coordinates: tuple[str, str]) -> Factor:
    if isinstance(item, (str, list)):
        item = {"poly": item}
    if not isinstance(item, dict) or "poly" not in item:
        msg = f"Factor {k} must be an object with a 'poly' field, got {item!r}"
        raise DocumentError(msg)
    mult = item.get("mult", 1)
    if isinstance(mult, bool) or not isinstance(mult, int):
        msg = f"Factor {k}: 'mult' must be an integer, got {mult!r}"
        raise DocumentError(msg)
    name = item.get("name", f"{DEFAULT_BRANCH_PREFIX}{k}")
    if not isinstance(name, str) or not name:
        msg = f"Factor {k}: 'name' must be a non-empty string"
        raise DocumentError(msg)
    return Factor(parse_poly(item["poly"], coordinates=coordinates), mult, name)


class CurveSource(InputSource):
    """
    A curve document: {"factors": [{"poly": ..., "mult": 1, "name": "C1"}, ...]}, with an
    optional "first_L" polynomial and optional "coordinates" names.
    """

    @typechecked
    def __init__(self, doc: dict[str, Any], *, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> None:
        factors = doc.get("factors")
        if not isinstance(factors, list) or not factors:
            msg = "A curve document needs a non-empty 'factors' list"
            raise DocumentError(msg)
        coordinates = _coordinates(doc)
        self.curve = Curve(
            tuple(_factor(item, k, coordinates) for k, item in enumerate(factors, start=1))
        )
        first_l = doc.get("first_L")
        self.first_l: BiPoly | None = None
        if first_l is not None:
            self.first_l = parse_poly(first_l, coordinates=coordinates)
        self._depth_limit = depth_limit
        self._resolution: Resolution | None = None
        self._table: ValuationTable | None = None

    def resolution(self) -> Resolution:
        if self._resolution is None:
            self._resolution = resolve(self.curve, self.first_l, depth_limit=self._depth_limit)
        return self._resolution

    def valuation_table(self) -> ValuationTable:
        if self._table is None:
            resolution = self.resolution()
            self._table = build_valuation_table(resolution.tree, resolution=resolution)
            logger.info("valuation table with %s rows", len(self._table.rows))
        return self._table
