"""Exception hierarchy shared by all modules."""


class ZetaError(Exception):
    """Base class for every error raised by this package."""


class NotPrimePower(ZetaError, ValueError):
    pass


class BoundExceeded(ZetaError, ValueError):
    pass


class AxiomViolation(ZetaError):
    """A counting axiom failed; ``failures`` names each offending count."""

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = list(failures)


class PreconditionFailed(ZetaError):
    pass


class NotComposable(ZetaError, ValueError):
    pass


class SearchExhausted(ZetaError):
    pass


class InvalidPresentation(ZetaError, ValueError):
    pass


class ParseError(ZetaError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TypeRuleViolation(ParseError):
    pass


class DanglingReference(ParseError):
    pass


class ChamberInconsistent(ParseError):
    pass


class NonSquare(ZetaError, ValueError):
    pass


class DegreeBoundViolated(ZetaError):
    pass


class DivisionByZero(ZetaError, ZeroDivisionError):
    pass


class NotAUnit(ZetaError, ValueError):
    pass


class InvalidLength(ZetaError, ValueError):
    pass


class StabilizationFailure(ZetaError):
    pass
