"""Exception hierarchy shared by all modules.

Two branches matter to callers (and fix the CLI exit codes): bad inputs
versus computations that started but could not be completed reliably.
"""


class HypsurfError(Exception):
    """Base class for everything raised deliberately by this package."""


class InvalidInput(HypsurfError):
    """Precondition violated by the caller (CLI exit code 2)."""


class NumericFailure(HypsurfError):
    """Numerically unresolvable situation, surfaced rather than guessed
    (CLI exit code 3)."""


# --- disk -----------------------------------------------------------------

class AmbiguousClass(NumericFailure):
    """Trace lies inside the classification tolerance band and the map is
    neither clearly parabolic nor the identity."""


class IdentityInput(InvalidInput):
    pass


class NotHyperbolic(InvalidInput):
    pass


class CoincidentPoints(InvalidInput):
    pass


class EmptySet(InvalidInput):
    pass


class NonpositiveLength(InvalidInput):
    pass


# --- words / groups --------------------------------------------------------

class IndexOutOfRange(InvalidInput):
    pass


class BudgetExceeded(InvalidInput):
    pass


class EmptySample(InvalidInput):
    pass


class CirclesOverlap(InvalidInput):
    pass


class NotAnAutomorphism(InvalidInput):
    pass


# --- signature --------------------------------------------------------------

class UnderdeterminedChi(InvalidInput):
    pass


class NoBoundary(InvalidInput):
    pass


class NonorientableDoubleUnsupported(InvalidInput):
    """Doubling a nonorientable signature is not modeled; the Euler
    characteristic of the double is still attached as ``chi_double``."""

    def __init__(self, message, chi_double):
        super().__init__(message)
        self.chi_double = chi_double


# --- pants -------------------------------------------------------------------

class NegativeLength(InvalidInput):
    pass


class NotHyperbolizable(InvalidInput):
    pass


class LengthCountMismatch(InvalidInput):
    pass


class LengthMismatch(NumericFailure):
    """Glued cuff slots disagree; carries the offending gluings."""

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = tuple(offending)


# --- boundary ----------------------------------------------------------------

class TooFewPoints(InvalidInput):
    pass


class OrderViolation(NumericFailure):
    """Sampled circle map is not cyclically order-consistent; carries the
    offending triple of (theta_in, theta_out) pairs."""

    def __init__(self, message, triple=()):
        super().__init__(message)
        self.triple = tuple(triple)
