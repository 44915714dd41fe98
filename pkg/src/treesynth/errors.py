"""Exception types shared across the package."""


class TreeSynthError(Exception):
    """Base class for every error this package raises on purpose."""


class InvalidInstance(TreeSynthError):
    """Instance-level data is malformed (empty terminals, bad values, ...)."""


class NotATree(TreeSynthError):
    """Edge list is not a tree: cycle, disconnection, self-loop, or duplicate edge."""


class NegativeLength(TreeSynthError):
    """An edge length is negative."""


class TerminalNotInTree(TreeSynthError):
    """A terminal does not appear among the tree nodes."""


class DuplicateRequirement(TreeSynthError):
    """The same unordered terminal pair carries two requirement entries."""


class SelfRequirement(TreeSynthError):
    """A requirement pairs a terminal with itself."""


class UnknownNode(TreeSynthError):
    """A node identifier is not known to the structure being queried."""


class UnknownEdge(TreeSynthError):
    """An edge is not part of the tree being queried."""


class UnknownTerminalPair(TreeSynthError):
    """A realization entry references a pair outside the terminal set."""


class EmptyOrFullCut(TreeSynthError):
    """A cut side must be a nonempty proper subset of the terminals."""


class SameNode(TreeSynthError):
    """Flow endpoints must differ."""


class NotANeighbor(TreeSynthError):
    """Split endpoints must currently neighbor the active node."""


class NoSplittablePair(TreeSynthError):
    """No neighbor pair admits a positive split; the input violates a precondition."""


class ResidualInnerDegree(TreeSynthError):
    """A non-terminal node still carries capacity after elimination."""


class PreconditionViolated(TreeSynthError):
    """Some tree edge has a cut requirement of 0 or 1, so the formula does not apply.

    Carries `violations`: a list of ((u, v), requirement) pairs in tree edge order.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        detail = ", ".join(
            f"{u}-{v} (cut requirement {r})" for (u, v), r in self.violations
        )
        super().__init__(
            f"every tree edge needs a cut requirement of at least 2; offending: {detail}"
        )


class SolverInternalError(TreeSynthError):
    """An internal cross-check failed; the result cannot be trusted."""


class ValueOne(TreeSynthError):
    """The closed-form star cost is undefined when some requirement maximum is 1."""


class TooLarge(TreeSynthError):
    """Input exceeds the size guard of an exhaustive routine."""


class ParseError(TreeSynthError):
    """An instance document is malformed."""
