from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Protocol

from .defaults import DEFAULT_SCHEMA
from .errors import DocumentError
from .resolution import Resolution
from .tree_functions import ValuationTable


class Writer(Protocol):
    def write(self, text: str) -> None: ...


class InputSource(Protocol):
    """One of the two input modes: a curve given by polynomials, or a raw valuation table."""

    def valuation_table(self) -> ValuationTable: ...
    def resolution(self) -> Resolution: ...


class StdoutWriter(Writer):
    def write(self, text: str) -> None:
        sys.stdout.write(text)


class StringWriter(Writer):
    """
    Collects written text into an internal buffer for tests and callers.

    The text is available through `text()`.
    """

    def __init__(self) -> None:
        self._parts: list[str] = []

    def write(self, text: str) -> None:  # Writer protocol
        self._parts.append(text)

    def text(self) -> str:
        return "".join(self._parts)


class FileWriter(Writer):
    """Buffers everything and writes the file once, on `close()`."""

    def __init__(self, path: str | Path) -> None:
        self._path = Path(path)
        self._buffer = StringWriter()

    def write(self, text: str) -> None:
        self._buffer.write(text)

    def close(self) -> None:
        self._path.write_text(self._buffer.text(), encoding="utf-8")


def load_document(path: str | Path) -> dict[str, Any]:
    """Read a JSON document and check its schema tag."""
    p = Path(path)
    try:
        raw = p.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"Cannot read {p}: {e.strerror}"
        raise DocumentError(msg) from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        msg = f"{p} is not valid JSON: {e}"
        raise DocumentError(msg) from None
    if not isinstance(doc, dict):
        msg = f"{p}: the top level must be an object"
        raise DocumentError(msg)
    schema = doc.get("schema", DEFAULT_SCHEMA)
    if schema != DEFAULT_SCHEMA:
        msg = f"{p}: unsupported schema {schema!r}, expected {DEFAULT_SCHEMA!r}"
        raise DocumentError(msg)
    return doc
