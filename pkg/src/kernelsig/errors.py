"""Exception types raised across the package."""


class KernelSigError(Exception):
    """Base class for all package errors."""


class InvalidSpec(KernelSigError, ValueError):
    pass


class DerivativeUnavailable(KernelSigError):
    pass


class DuplicatePoints(KernelSigError, ValueError):
    pass


class SolveFailed(KernelSigError):
    pass


class SingularPoint(KernelSigError):
    """The gradient of the signature function vanished and stayed small
    after every perturbation retry."""

    def __init__(self, point, grad_norm):
        self.point = point
        self.grad_norm = grad_norm
        super().__init__(f"gradient vanishes at {list(point)} (|grad u| = {grad_norm:.3g})")


class InsufficientProbes(KernelSigError, ValueError):
    pass


class DimensionUnsupported(KernelSigError, ValueError):
    pass


class InvalidCount(KernelSigError, ValueError):
    pass


class IllConditionedWarning(UserWarning):
    """Issued when the density system is close to singular."""
