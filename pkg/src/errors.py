"""Exception types shared across cstar-flow."""


class CStarFlowError(ValueError):
    """Base class for invalid input to a cstar-flow operation."""


class DimensionMismatch(CStarFlowError):
    """Operands have incompatible dimensions."""


class ShapeMismatch(CStarFlowError):
    """A collection of matrices does not share one shape."""


class SpaceMismatch(CStarFlowError):
    """Module elements or maps belong to different module spaces."""


class NonFiniteEntries(CStarFlowError):
    """A matrix contains NaN or infinite entries."""


class NotHermitian(CStarFlowError):
    """A matrix required to be Hermitian is not (within tolerance)."""


class NotUnitary(CStarFlowError):
    """A matrix required to be unitary is not (within tolerance)."""


class NotFull(CStarFlowError):
    """A module space whose inner products do not span the algebra."""


class PreconditionViolated(CStarFlowError):
    """An operation was called outside its contract."""


class NoConvergence(RuntimeError):
    """An iterative routine ran out of sweeps."""
