"""Exception types raised by the library."""


class ZeroState(ValueError):
    """All amplitudes are numerically zero; the state cannot be normalized."""


class InvalidParams(ValueError):
    """State parameters violate a validity constraint."""


class NegativeCoefficient(ValueError):
    """A generalized binomial coefficient was requested outside its
    nonnegative region; this indicates a caller bug, not a data error."""


class TruncationTooSmall(ValueError):
    """The requested Fock-space truncation drops too much probability mass."""


class IndexOutOfRange(IndexError):
    """Fock index outside the truncated basis."""


class QuadratureNotConverged(RuntimeError):
    """Successive quadrature refinements disagree beyond tolerance."""
