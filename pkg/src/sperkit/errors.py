"""Exception hierarchy shared by every kernel.

The CLI maps these onto exit codes: parse problems exit 2, violated
preconditions exit 3, exceeded resource limits exit 4.
"""


class SperkitError(Exception):
    exit_code = 1


class ParseError(SperkitError):
    exit_code = 2

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class UnknownVariable(ParseError):
    def __init__(self, name: str, line: int = 1, column: int = 1):
        super().__init__(f"unknown variable {name!r}", line, column)
        self.name = name


class PreconditionError(SperkitError):
    exit_code = 3


class ZeroPolynomial(PreconditionError):
    pass


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


class NegativeRadicand(PreconditionError):
    pass


class NotClosed(PreconditionError):
    pass


class MissingAssignment(PreconditionError):
    pass


class DomainMismatch(PreconditionError):
    pass


class DomainNotContained(PreconditionError):
    pass


class InvalidSection(PreconditionError):
    pass


class VanishingSection(PreconditionError):
    pass


class NegativeSection(PreconditionError):
    pass


class PointNotInDomain(PreconditionError):
    pass


class ResourceLimit(SperkitError):
    exit_code = 4
