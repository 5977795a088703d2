"""Exception types raised by hyperlap.

Every error derives from :class:`HyperlapError`, which is itself a
``ValueError`` so callers that only care about bad input can catch that.
"""


class HyperlapError(ValueError):
    """Base class for all hyperlap errors."""


class EmptyEdgeError(HyperlapError):
    """A hyperedge has fewer than two distinct vertices."""


class NonpositiveWeightError(HyperlapError):
    pass


class IndexOutOfRangeError(HyperlapError, IndexError):
    pass


class SizeMismatchError(HyperlapError):
    """A vertex or edge function does not match the hypergraph it is used with."""


class InvalidPError(HyperlapError):
    pass


class SingularSystemError(HyperlapError):
    pass


class UnknownClassError(HyperlapError):
    pass


class EmptyEvalSetError(HyperlapError):
    pass


class ParseError(HyperlapError):
    """An input file is malformed."""


class NonBooleanAttributeError(ParseError):
    pass


class SubsetTooLargeError(HyperlapError):
    pass


class FormatVersionMismatchError(ParseError):
    pass
