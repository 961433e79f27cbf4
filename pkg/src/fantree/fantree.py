from __future__ import annotations

import logging
import sys
from itertools import combinations
from pathlib import Path

from .adapters.curve import CurveSource
from .adapters.table import TableSource
from .cli_common import Context, parse_common_args
from .core import FileWriter, InputSource, StdoutWriter, Writer, load_document
from .errors import DocumentError, FanTreeError, UsageError
from .formatters import Formatter, JsonFormatter, TextFormatter
from .multiplier import Monomial, ideal_presentation, jumping_numbers, membership
from .oracles import blowup_resolve, howald_jumping_numbers, resultant_intersection
from .poly import BiPoly, parse_poly
from .resolution import Resolution, element_polynomial
from .tree_functions import build_decoration_table

logger = logging.getLogger(__name__)

_REDUCED = {"auto": None, "yes": True, "no": False}


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _source(ctx: Context) -> InputSource:
    if ctx.table is not None:
        return TableSource(load_document(ctx.table))
    assert ctx.curve is not None
    return CurveSource(load_document(ctx.curve), depth_limit=ctx.depth_limit)


def _test_function(ctx: Context, resolution: Resolution) -> BiPoly:
    """--poly is a document path, a monomial in the element names, or an expression in x, y."""
    assert ctx.poly is not None
    path = Path(ctx.poly)
    if path.suffix == ".json" or path.is_file():
        doc = load_document(path)
        if "poly" not in doc:
            msg = f"{path}: a polynomial document needs a 'poly' member"
            raise DocumentError(msg)
        return parse_poly(doc["poly"])
    try:
        m = Monomial.parse(ctx.poly)
    except FanTreeError:
        return parse_poly(ctx.poly)
    names = {name for name, _ in m.exponents}
    if not names or names <= {"x", "y"}:
        return parse_poly(ctx.poly)
    out = BiPoly.constant(1)
    for name, e in m.exponents:
        out = out * element_polynomial(resolution, name) ** e
    return out


def _run(ctx: Context, formatter: Formatter, writer: Writer) -> None:
    logger.info("fantree %s", ctx.command)
    source = _source(ctx)
    reduced = _REDUCED[ctx.reduced]
    if ctx.command == "resolve":
        resolution = source.resolution()
        decorations = build_decoration_table(resolution.tree)
        writer.write(formatter.resolution(resolution, decorations, source.valuation_table()))
    elif ctx.command == "jumping":
        numbers = jumping_numbers(
            source.valuation_table(), ctx.max, inclusive=False, reduced=reduced, threads=ctx.threads
        )
        writer.write(formatter.jumping(numbers))
    elif ctx.command == "ideal":
        table = source.valuation_table()
        if ctx.xi is not None:
            values = [ctx.xi]
        else:
            values = jumping_numbers(
                table, ctx.max, inclusive=False, reduced=reduced, threads=ctx.threads
            )
        presentations = [
            ideal_presentation(table, xi, reduced=reduced, threads=ctx.threads) for xi in values
        ]
        writer.write(formatter.ideals(presentations))
    elif ctx.command == "member":
        assert ctx.xi is not None
        resolution = source.resolution()
        result = membership(resolution, _test_function(ctx, resolution), ctx.xi)
        writer.write(formatter.member(result, ctx.xi))
    elif ctx.command == "oracle":
        assert isinstance(source, CurveSource)
        curve = source.curve
        if ctx.oracle_kind == "howald":
            numbers = howald_jumping_numbers(curve.equation(), ctx.max, inclusive=False)
            writer.write(formatter.jumping(numbers))
        elif ctx.oracle_kind == "blowup":
            writer.write(formatter.blowup(blowup_resolve(curve, depth_limit=ctx.depth_limit)))
        else:
            pairs = [
                (f.name, g.name, resultant_intersection(f.poly, g.poly))
                for f, g in combinations(curve.factors, 2)
            ]
            writer.write(formatter.intersections(pairs))


def main(*, argv: list[str] | None = None, writer: Writer | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        ctx: Context = parse_common_args(argv)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    _configure_logging(ctx.verbose)

    formatter: Formatter = JsonFormatter() if ctx.format == "json" else TextFormatter()
    file_writer = FileWriter(ctx.out) if ctx.out else None
    out_writer = file_writer or writer or StdoutWriter()

    try:
        _run(ctx, formatter, out_writer)
    except FanTreeError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    if file_writer is not None:
        file_writer.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
