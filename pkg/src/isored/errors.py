"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`IsoredError`.
The CLI maps the four broad families below onto its exit codes.
"""


class IsoredError(Exception):
    """Base class for all library errors."""


# -- parse / validation (CLI exit 2) ------------------------------------------

class ValidationError(IsoredError, ValueError):
    pass


class ParseError(ValidationError):
    """Malformed literal or document. ``line``/``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif column is not None:
            where = f" (column {column})"
        super().__init__(message + where)


class DuplicateEdge(ValidationError):
    pass


class BadVertexIndex(ValidationError):
    pass


class EmptySet(ValidationError):
    pass


class CycleInComplement(ValidationError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(
            "cycle %s avoids the kept set" % "->".join(str(v) for v in self.cycle)
        )


class LoopWeightIsLambda(ValidationError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} outside the kept set has loop weight l")


class NotLambda0Structural(ValidationError):
    pass


class ComplementNotSingleton(ValidationError):
    pass


class ComplementNotDisconnected(ValidationError):
    pass


class ZeroVectorInput(ValidationError):
    pass


# -- arithmetic ---------------------------------------------------------------

class DivisionByZeroFunction(IsoredError, ZeroDivisionError):
    pass


class PoleError(IsoredError, ZeroDivisionError):
    pass


class NearPoleError(PoleError):
    pass


class SingularComplement(IsoredError, ArithmeticError):
    """``M_cc - l*I`` has zero determinant as a rational function."""


class SingularComplementAtLambda0(IsoredError, ArithmeticError):
    pass


class SingularBasis(IsoredError, ArithmeticError):
    pass


class LoopWeightEqualsLambda0(IsoredError, ArithmeticError):
    pass


# -- spectral findings ----------------------------------------------------------

class NotAnEigenvalue(IsoredError):
    pass


class ChainTerminated(IsoredError):
    """No generalized eigenvector of the next rank exists."""

    def __init__(self, message, chain=None):
        self.chain = chain
        super().__init__(message)


class RuleInapplicable(IsoredError):
    pass


class HypothesisNotMet(IsoredError):
    """The reduced vectors do not satisfy the relation a reconstruction needs."""


# -- numerics (CLI exit 4) --------------------------------------------------------

class NumericFailure(IsoredError, ArithmeticError):
    pass
