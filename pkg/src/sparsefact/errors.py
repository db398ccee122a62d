"""Exception types shared across the toolkit.

Two of these are non-fatal control-flow signals rather than errors proper:
Reject (a division/reconstruction candidate failed its cap or divisibility
check) and GuessInvalid (one enumeration state of the monic driver turned out
to be inconsistent).  Callers are expected to catch them and move on.
"""


class SparsefactError(Exception):
    """Base class for all toolkit errors."""


class NotPrime(SparsefactError):
    """Field characteristic is not a prime number."""


class CtxMismatch(SparsefactError):
    """Operands belong to different field contexts."""


class DivByZero(SparsefactError):
    """Inversion or division by the zero field element."""


class ShapeMismatch(SparsefactError):
    """Operands disagree on variable count or point dimension."""


class ZeroPolynomial(SparsefactError):
    """Operation undefined for the zero polynomial."""


class ZeroDegree(SparsefactError):
    """Polynomial does not depend on the variable being eliminated."""


class EmptyVector(SparsefactError):
    """Multiplicity vector must be nonempty."""


class EmptySupport(SparsefactError):
    """Support set must be nonempty."""


class FieldTooSmall(SparsefactError):
    """The field does not carry enough distinct points for the construction."""

    def __init__(self, required=None, message=None):
        self.required = required
        if message is None:
            message = "field too small"
            if required is not None:
                message += " (needs at least %d elements)" % required
        super().__init__(message)


class NotCoprime(SparsefactError):
    """Lifting requires coprime seed factors."""


class NotMonic(SparsefactError):
    """Operation requires a polynomial monic in y."""


class DegreeZero(SparsefactError):
    """Resultant requires both arguments to have positive degree."""


class BoundViolation(SparsefactError):
    """A proved inequality failed; signals an implementation bug."""


class NoFactorizationFound(SparsefactError):
    """Even the trivial factorization candidate failed; internal bug."""


class ParseError(SparsefactError):
    """Polynomial text did not match the input grammar."""


class Reject(SparsefactError):
    """Non-fatal: candidate not divisible or sparsity cap exceeded."""


class GuessInvalid(SparsefactError):
    """Non-fatal: discard this enumeration state of the monic driver."""
