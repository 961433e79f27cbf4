from __future__ import annotations


class FanTreeError(Exception):
    """Base class of every error the library raises on purpose."""

    exit_code = 1


class InputError(FanTreeError, ValueError):
    exit_code = 1


class ZeroVector(InputError): ...


class EmptySupport(InputError): ...


class VectorOutsideQuadrant(InputError): ...


class ZeroPolynomial(InputError): ...


class CommonFactor(InputError): ...


class RIsComponent(InputError): ...


class NotACross(InputError): ...


class UnknownElement(InputError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class DocumentError(InputError): ...


class NonRegularFan(InputError): ...


class DegenerateFaces(InputError): ...


class NotThroughOrigin(InputError): ...


class NoLedgerData(InputError): ...


class NegativeExponent(InputError): ...


class InvalidCone(InputError): ...


class InvalidFan(InputError): ...


class UsageError(InputError):
    """A command line that argparse refuses."""


class MathematicalLimitation(FanTreeError):
    exit_code = 2


class NonRationalCenter(MathematicalLimitation):
    def __init__(self, msg: str, *, node: int | None = None, degree: int = 0) -> None:
        super().__init__(msg)
        self.node = node
        self.degree = degree


class DepthExceeded(MathematicalLimitation): ...


class LiftFailed(MathematicalLimitation): ...


class InvariantViolation(FanTreeError):
    exit_code = 3
