"""Exception types shared across the package."""


class GpfError(Exception):
    """Base class for all errors raised by gpfkit."""


class RingMismatchError(GpfError):
    """Operands live over different rings or free modules of different rank."""


class ParseError(GpfError):
    """Script could not be parsed; carries a 1-based source position."""

    def __init__(self, message, line, col):
        super().__init__("line %d, col %d: %s" % (line, col, message))
        self.line = line
        self.col = col


class VerificationError(GpfError):
    """A step or chain failed re-verification; carries the failed report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class HypothesisError(GpfError):
    """A construction hypothesis does not hold; carries index and evidence."""

    def __init__(self, message, index=None, evidence=None):
        super().__init__(message)
        self.index = index
        self.evidence = evidence


class IncompleteRegistryError(GpfError):
    """An associated-prime enumeration came back empty against a candidate
    registry while the module is nonzero, so no further progress is sound."""


class BudgetError(GpfError):
    """A size or iteration budget was exceeded (variable count, element
    count of a finite model, saturation steps)."""
