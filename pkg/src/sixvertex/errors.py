"""Exception types shared across the package."""


class SixVertexError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SixVertexError):
    """Run configuration is internally inconsistent or incomplete."""


class SingularWeight(SixVertexError):
    """Vertex weight denominator sh(lambda + eta) vanished."""


class SingularParameters(SixVertexError):
    """A formula denominator fell below tolerance at the given parameters."""


class DegenerateParameters(SixVertexError):
    """Coincident rapidities where a determinant formula needs them distinct."""


class DivisionBySingularSeries(SixVertexError):
    """Jet division by a series whose constant term is (numerically) zero."""


class OrderExceeded(SixVertexError):
    """Requested derivative order exceeds the truncation order of a jet."""


class OrderingViolation(SixVertexError):
    """Index ordering constraint violated (e.g. the two flip rows must be ordered)."""


class IndexOutOfRange(SixVertexError):
    """A 1-based lattice index lies outside its valid window."""
