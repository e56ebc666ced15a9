"""Exception hierarchy.

Class names are part of the CLI contract: domain errors are reported by
their class name verbatim.
"""

from __future__ import annotations


class GraphLinkError(Exception):
    """Base class for every domain error raised by graphlink."""

    @property
    def name(self) -> str:
        return type(self).__name__


# diagram core
class UnknownElement(GraphLinkError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class DuplicateIdentifier(GraphLinkError):
    pass


class InvalidDiagram(GraphLinkError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class DifferentComponents(GraphLinkError):
    pass


class SelfPathOnLeaf(GraphLinkError):
    pass


# parser
class ParseError(GraphLinkError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


# splice calculus
class SelfLinkingOfArrow(GraphLinkError):
    pass


class IncompatibleMultiplicities(GraphLinkError):
    def __init__(self, equations):
        # equations: list of (label, lhs, rhs)
        self.equations = list(equations)
        detail = ", ".join(f"{label}: {lhs} != {rhs}" for label, lhs, rhs in self.equations)
        super().__init__(f"splice equations violated ({detail})")


class NotAnInternalEdge(GraphLinkError):
    pass


class MoveCheckFailed(GraphLinkError):
    """A reduction or normalization step changed a linking invariant."""


# novikov engine
class DivisibilityViolation(GraphLinkError):
    pass


class NegativeFreeRank(GraphLinkError):
    pass


class ClassificationMismatch(GraphLinkError):
    pass


class EmptyMultilink(GraphLinkError):
    pass


# strata explorer
class BudgetExceeded(GraphLinkError):
    pass


class UnrealizableSignature(GraphLinkError):
    pass


class SignatureCollision(GraphLinkError):
    """Two multiplicity vectors with one vanishing pattern gave different modules."""
