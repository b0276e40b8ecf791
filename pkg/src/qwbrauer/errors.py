"""Exception hierarchy.

Every error raised on bad user input derives from ``DomainError``; the CLI
maps those to exit code 1. ``InvariantViolation`` signals a bug and maps to
exit code 2.
"""


class DomainError(ValueError):
    """Invalid input or a request outside the mathematical domain."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed."""


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class NotAPole(DomainError):
    pass


class HigherOrderPole(DomainError):
    pass


class SpecializationPole(DomainError):
    pass


class InvalidShape(DomainError):
    pass


class ContextMismatch(DomainError):
    pass


class NodeOutOfDiagram(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class MoveAtWall(DomainError):
    pass


class NoMove(DomainError):
    pass


class WallMismatch(DomainError):
    pass


class DegenerateContents(DomainError):
    pass


class ConfigurationMismatch(DomainError):
    pass


class BranchMismatch(DomainError):
    pass


class NotABranch(DomainError):
    pass


class GenericRho(DomainError):
    pass


class PreconditionViolated(DomainError):
    pass


class BoundExceeded(DomainError):
    pass


class TooFewVariables(DomainError):
    pass
