"""Exception types shared across the library."""


class HilbTangentError(Exception):
    """Base class for all library errors."""


class AmbientMismatchError(HilbTangentError):
    """Operands live in different polynomial rings."""


class CoefficientError(HilbTangentError):
    """Bad coefficient arithmetic (division by a non-unit, bad literal, ...)."""


class ParseError(HilbTangentError):
    """Polynomial text could not be parsed."""


class SingularMatrixError(HilbTangentError):
    """A linear change of coordinates is not invertible."""


class UnassignedParameterError(HilbTangentError):
    """specialize() was called without a value for a coefficient parameter."""


class UnknownParameterError(HilbTangentError):
    """specialize() received a name that is neither a variable nor a parameter."""


class NotOrderIdealError(HilbTangentError):
    """A monomial set is not closed under division."""


class NotQuasiStableError(HilbTangentError):
    """Pommaret completion exceeded its degree bound."""


class InfiniteColengthError(HilbTangentError):
    """The complement of a monomial ideal is infinite."""


class HeadMismatchError(HilbTangentError):
    """Marked-set heads do not match the Pommaret basis."""


class TailOutsideNError(HilbTangentError):
    """A marked-polynomial tail has a monomial outside the order ideal."""


class NonTerminationError(HilbTangentError):
    """Reduction exceeded its step budget; signals an implementation bug."""


class NotABasisError(HilbTangentError):
    """An operation requiring a marked basis was given a mere marked set."""


class ModularDisagreementError(HilbTangentError):
    """Modular ranks did not reach consensus."""


class NotZeroDimensionalError(HilbTangentError):
    """An ideal expected to be zero-dimensional is not."""


class BaseMismatchError(HilbTangentError):
    """Dual-number marked sets do not share the same base marked set."""


class NotFlatError(HilbTangentError):
    """A dual-number marked set fails the marked-basis criterion."""


class DegenerateComplementError(HilbTangentError):
    """Linear forms fail to complement the span of the chosen form."""


class DiscriminantZeroError(HilbTangentError):
    """The smoothing construction needs a nonzero discriminant."""


class B4ZeroError(HilbTangentError):
    """The component decomposition needs b4 != 0."""


class PointInSupportError(HilbTangentError):
    """A point to adjoin lies in the support of the ideal."""


class DuplicatePointError(HilbTangentError):
    """The same point was supplied twice."""


class QuasiStableNotFoundError(HilbTangentError):
    """No quasi-stable initial ideal was found within the retry budget."""
