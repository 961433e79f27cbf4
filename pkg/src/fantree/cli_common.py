from __future__ import annotations

import argparse
import textwrap
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, NoReturn

from fantree.defaults import (
    DEFAULT_DEPTH_LIMIT,
    DEFAULT_FORMAT,
    DEFAULT_FORMAT_CHOICES,
    DEFAULT_MAX,
    DEFAULT_ORACLE_CHOICES,
    DEFAULT_REDUCED,
    DEFAULT_REDUCED_CHOICES,
    DEFAULT_SCHEMA,
    DEFAULT_THREADS,
    DEFAULT_VERBOSE,
)
from fantree.errors import DocumentError, UsageError
from fantree.types import TPositiveRational
from fantree.util import parse_rational


class _Parser(argparse.ArgumentParser):
    """Raises `UsageError` where argparse would print usage and exit."""

    def error(self, message: str) -> NoReturn:
        msg = f"{self.prog}: {message}"
        raise UsageError(msg)


@dataclass(slots=True)
class Context:
    command: str = "resolve"
    curve: str | None = None
    table: str | None = None
    out: str | None = None
    max: TPositiveRational = Fraction(DEFAULT_MAX)
    xi: TPositiveRational | None = None
    poly: str | None = None
    format: Literal["json", "text"] = DEFAULT_FORMAT
    threads: int = DEFAULT_THREADS
    verbose: int = DEFAULT_VERBOSE
    oracle_kind: Literal["howald", "blowup", "intersection"] | None = None
    reduced: Literal["auto", "yes", "no"] = DEFAULT_REDUCED
    depth_limit: int = DEFAULT_DEPTH_LIMIT


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DocumentError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive_rational(text: str) -> TPositiveRational:
    value = _rational(text)
    if value <= 0:
        msg = f"must be positive, got {text}"
        raise argparse.ArgumentTypeError(msg)
    return value


def _output_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--format",
        type=str,
        choices=DEFAULT_FORMAT_CHOICES,
        default=DEFAULT_FORMAT,
        help="Output format: 'json' or 'text'.",
    )
    parent.add_argument(
        "--out", type=str, default=None, help="Write the output to FILE instead of stdout."
    )
    parent.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=DEFAULT_VERBOSE,
        help="Log progress to stderr (-v for milestones, -vv for every node and chart).",
    )
    parent.add_argument(
        "--depth-limit",
        type=int,
        dest="depth_limit",
        default=DEFAULT_DEPTH_LIMIT,
        help="Give up after this many successive charts above one point.",
    )
    return parent


def _input_flags(*, allow_table: bool) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_mutually_exclusive_group(required=True)
    group.add_argument("--curve", type=str, help="Curve document (JSON) with the factors of C.")
    if allow_table:
        group.add_argument(
            "--table",
            type=str,
            help="Valuation table document (JSON), e.g. the output of `fantree resolve`.",
        )
    return parent


def _engine_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--threads",
        type=int,
        default=DEFAULT_THREADS,
        help="Worker threads for the generator search. The output does not depend on it.",
    )
    parent.add_argument(
        "--reduced",
        type=str,
        choices=DEFAULT_REDUCED_CHOICES,
        default=DEFAULT_REDUCED,
        help="Use the reduced alphabet (exceptional rows only). 'auto' uses it for reduced curves below 1.",
    )
    return parent


def parse_common_args(argv: list[str] | None = None) -> Context:
    epilog = textwrap.dedent(
        f"""
        DOCUMENTS
        A curve document lists the factors of C: {{"factors": [{{"poly": "y^2 + x^3", "mult": 1, "name": "C1"}}]}},
        optionally with "first_L" (a polynomial c*y - phi(x)) and "coordinates" (two names).
        Polynomials are expressions or lists of [i, j, "p/q"] triples.
        Every document written carries "schema": "{DEFAULT_SCHEMA}"; rationals are "p/q" strings.

        EXIT CODES
        0 success, 1 invalid input, 2 the curve needs a non-rational center or runs too deep,
        3 an internal consistency check failed.
        """
    )

    parser = _Parser(
        prog="fantree",
        description="Resolves plane curve singularities by Newton modifications and computes multiplier ideals",
        add_help=True,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=epilog,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    output = _output_flags()
    engine = _engine_flags()

    sub.add_parser(
        "resolve",
        parents=[_input_flags(allow_table=False), output],
        help="Fan tree, decorations and valuation table of a curve.",
    )

    jumping = sub.add_parser(
        "jumping",
        parents=[_input_flags(allow_table=True), output, engine],
        help="Jumping numbers up to --max.",
    )
    jumping.add_argument(
        "--max",
        type=_positive_rational,
        default=Fraction(DEFAULT_MAX),
        help=f"Upper bound, not included. Defaults to {DEFAULT_MAX}.",
    )

    ideal = sub.add_parser(
        "ideal",
        parents=[_input_flags(allow_table=True), output, engine],
        help="Monomial presentation of J(xi*C); without --xi, one per jumping number up to --max.",
    )
    ideal.add_argument("--xi", type=_positive_rational, default=None, help="The coefficient xi.")
    ideal.add_argument(
        "--max",
        type=_positive_rational,
        default=Fraction(DEFAULT_MAX),
        help="Upper bound, not included, when --xi is not given.",
    )

    member = sub.add_parser(
        "member",
        parents=[_input_flags(allow_table=False), output],
        help="Whether a polynomial belongs to J(xi*C); reports the divisor that fails.",
    )
    member.add_argument("--xi", type=_positive_rational, required=True, help="The coefficient xi.")
    member.add_argument(
        "--poly",
        type=str,
        required=True,
        help="A JSON file with a 'poly' member, an expression in x, y, or a monomial in the element names.",
    )

    oracle = sub.add_parser(
        "oracle",
        parents=[_input_flags(allow_table=False), output],
        help="Cross-checks that do not use the fan tree.",
    )
    oracle.add_argument("oracle_kind", choices=DEFAULT_ORACLE_CHOICES, help="Which oracle to run.")
    oracle.add_argument(
        "--max",
        type=_positive_rational,
        default=Fraction(DEFAULT_MAX),
        help="Upper bound, not included, for the Howald jumping numbers.",
    )

    args = parser.parse_args(argv)
    return Context(
        command=args.command,
        curve=args.curve,
        table=getattr(args, "table", None),
        out=args.out,
        max=getattr(args, "max", Fraction(DEFAULT_MAX)),
        xi=getattr(args, "xi", None),
        poly=getattr(args, "poly", None),
        format=args.format,
        threads=getattr(args, "threads", DEFAULT_THREADS),
        verbose=args.verbose,
        oracle_kind=getattr(args, "oracle_kind", None),
        reduced=getattr(args, "reduced", DEFAULT_REDUCED),
        depth_limit=args.depth_limit,
    )
