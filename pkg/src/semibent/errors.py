"""Exception types raised across the package."""


class SemibentError(Exception):
    """Base class for all package errors."""


class NonPrimitivePolynomial(SemibentError, ValueError):
    pass


class UnsupportedDegree(SemibentError, ValueError):
    pass


class DlogOfZero(SemibentError, ValueError):
    pass


class LengthMismatch(SemibentError, ValueError):
    pass


class IndexOutOfRange(SemibentError, IndexError):
    pass


class BadPartition(SemibentError, ValueError):
    pass


class FieldMismatch(SemibentError, ValueError):
    pass


class ZeroCombination(SemibentError, ValueError):
    pass


class UnknownId(SemibentError, KeyError):
    pass


class BadParameters(SemibentError, ValueError):
    pass


class ConstructionFailed(SemibentError, RuntimeError):
    """An internal audit failed; indicates a bug rather than bad input."""


class SamePair(SemibentError, ValueError):
    pass


class UnknownLayout(SemibentError, KeyError):
    pass


class UnresolvedSetId(SemibentError, KeyError):
    pass


class RuleFails(SemibentError):
    """A layout rule could not be realised; ``witness`` says why."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BadOrder(SemibentError, ValueError):
    pass
