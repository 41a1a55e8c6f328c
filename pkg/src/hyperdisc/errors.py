"""Exception hierarchy.

Every domain error derives from :class:`HyperdiscError`; the CLI maps these to
exit status 1, while :class:`ParseError` and I/O failures map to exit status 2.
"""


class HyperdiscError(ValueError):
    """Base class for all typed domain errors."""


# numtheory
class NotCoprime(HyperdiscError):
    pass


class InvalidModulus(HyperdiscError):
    pass


class InvalidInput(HyperdiscError):
    pass


# hypergraph
class ParseError(HyperdiscError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IndexOutOfRange(HyperdiscError, IndexError):
    pass


class InvalidHypergraph(HyperdiscError):
    pass


# builder
class WrongParity(HyperdiscError):
    pass


class WrongResidue(HyperdiscError):
    pass


class NonPositiveBlock(HyperdiscError):
    pass


class DispatchError(HyperdiscError):
    pass


class NotApplicable(HyperdiscError):
    pass


class AmplifierOverflow(HyperdiscError):
    pass


# solver
class TooLarge(HyperdiscError):
    pass


class InfeasibleVector(HyperdiscError):
    pass


class ResourceExhausted(HyperdiscError):
    """The search hit its node budget before reaching a verdict."""

    def __init__(self, message, nodes_explored=0):
        self.nodes_explored = nodes_explored
        super().__init__(message)


# matrixlab
class NotSquare(HyperdiscError):
    pass


class Inconsistent(HyperdiscError):
    pass


class NotZeroOne(HyperdiscError):
    pass
