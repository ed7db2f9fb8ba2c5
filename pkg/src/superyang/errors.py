"""Exception types shared across the package."""


class DivisionByZero(ZeroDivisionError):
    pass


class EvaluationPole(ArithmeticError):
    """A substitution hit a pole that survives cancellation."""


class WrongSpaceKind(ValueError):
    pass


class NotInHook(ValueError):
    """The partition is not contained in the (m, n)-hook."""


class NonCyclic(ValueError):
    """The space of highest vectors is not one-dimensional."""

    def __init__(self, dim, message=None):
        self.dim = dim
        super().__init__(message or f"highest-vector space has dimension {dim}, expected 1")


class VerificationFailure(AssertionError):
    """An identity that should hold exactly does not."""


class NotScalar(VerificationFailure):
    pass


class Inconsistent(VerificationFailure):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"consistency condition fails at i={index}")


class RelationViolation(ValueError):
    pass


class IrrationalRoots(ValueError):
    pass


class NoSolution(ValueError):
    """The weight admits no Drinfeld polynomials of the required form."""


class DegreeMismatch(ValueError):
    pass


class ResourceBound(RuntimeError):
    """A computation exceeds a configured size cap."""
