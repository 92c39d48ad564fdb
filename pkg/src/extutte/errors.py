"""Exception hierarchy shared by every module of the package."""


class ExtutteError(Exception):
    """Base class for all errors raised by this package."""


# ring
class MissingAssignment(ExtutteError, KeyError):
    pass


class LaurentError(ExtutteError, ValueError):
    """A negative exponent appeared where Laurent terms are not allowed."""


class LaurentResidue(LaurentError):
    """Negative powers of v survived a computation that must cancel them."""


# exterior
class UnknownElement(ExtutteError, KeyError):
    pass


class DuplicateElement(ExtutteError, ValueError):
    pass


class GroundSetMismatch(ExtutteError, ValueError):
    pass


class GroundSetOverlap(ExtutteError, ValueError):
    pass


class RankMismatch(ExtutteError, ValueError):
    pass


class ZeroTensorError(ExtutteError, ValueError):
    pass


# matroid
class SymbolicCoordinates(ExtutteError, ValueError):
    """A chirotope was requested from an extensor with non-constant coordinates."""


class NonUnimodularKey(ExtutteError, ValueError):
    pass


# circuits
class ParseError(ExtutteError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DuplicateEdge(ParseError):
    pass


class UnknownVertex(ParseError):
    pass


class EmptyGraph(ExtutteError, ValueError):
    pass


class NonUnitR(ExtutteError, ValueError):
    pass


class DegenerateDenominator(ExtutteError, ZeroDivisionError):
    pass


class DivisionByZero(ExtutteError, ZeroDivisionError):
    """A negative exponent was evaluated at zero."""
