"""Exception hierarchy with stable machine-readable error codes."""

from __future__ import annotations


class PadicError(Exception):
    """Base class for all library errors.

    ``code`` is a stable identifier suitable for machine consumption
    (the CLI emits it in its JSON error objects).
    """

    code = "PadicError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class DivisionByZero(PadicError):
    code = "DivisionByZero"


class NotAUnit(PadicError):
    code = "NotAUnit"


class ZeroArgument(PadicError):
    code = "ZeroArgument"


class OutsideLogDomain(PadicError):
    code = "OutsideLogDomain"


class OutsideExpDomain(PadicError):
    code = "OutsideExpDomain"


class ExponentOutsideDomain(PadicError):
    code = "ExponentOutsideDomain"


class DegreeOverflow(PadicError):
    code = "DegreeOverflow"


class BudgetExhausted(PadicError):
    code = "BudgetExhausted"


class ArgumentInZp(PadicError):
    code = "ArgumentInZp"


class ArgumentOutsideZp(PadicError):
    code = "ArgumentOutsideZp"


class ShiftConditionViolated(PadicError):
    code = "ShiftConditionViolated"


class EvenN(PadicError):
    code = "EvenN"


class ArgumentViolation(PadicError):
    code = "ArgumentViolation"


class EvaluationCapExceeded(PadicError):
    code = "EvaluationCapExceeded"


class PrecisionError(PadicError):
    code = "PrecisionError"


class ParseError(PadicError):
    code = "ParseError"
