"""Radial kernels and their closed-form derivatives.

Three families are supported:

* ``gauss``      -- ``G(x) = exp(-|x|^2)``
* ``laplace``    -- ``L(x) = exp(-|x|)`` (value only, not differentiable at 0)
* ``laplace-r``  -- ``L_r(x) = exp(-sqrt(|x|^2 + r))``

A bandwidth ``delta`` rescales the argument, ``K_delta(v) = K(delta * v)``,
so gradients pick up a factor ``delta`` and Hessians ``delta**2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DerivativeUnavailable, InvalidSpec

GAUSS = "gauss"
LAPLACE = "laplace"
REG_LAPLACE = "laplace-r"
FAMILIES = (GAUSS, LAPLACE, REG_LAPLACE)

_ALIASES = {
    "gauss": GAUSS,
    "gaussian": GAUSS,
    "laplace": LAPLACE,
    "laplace-r": REG_LAPLACE,
    "laplace_r": REG_LAPLACE,
    "regularizedlaplace": REG_LAPLACE,
    "regularized-laplace": REG_LAPLACE,
}

DEFAULT_R = 1e-6


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus bandwidth.

    ``r`` is only meaningful for the regularized Laplace kernel.
    """

    family: str = GAUSS
    r: float = DEFAULT_R
    delta: float = 1.0

    def __post_init__(self):
        fam = _ALIASES.get(str(self.family).lower())
        if fam is None:
            raise InvalidSpec(f"unknown kernel family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if not np.isfinite(self.delta) or self.delta <= 0:
            raise InvalidSpec(f"bandwidth must be positive, got {self.delta}")
        if fam == REG_LAPLACE and not (np.isfinite(self.r) and self.r > 0):
            raise InvalidSpec(f"regularized Laplace needs r > 0, got {self.r}")

    @property
    def differentiable(self) -> bool:
        return self.family != LAPLACE

    @property
    def peak(self) -> float:
        """Kernel value at the origin."""
        if self.family == REG_LAPLACE:
            return float(np.exp(-np.sqrt(self.r)))
        return 1.0

    @classmethod
    def gauss(cls, delta=1.0):
        return cls(GAUSS, delta=delta)

    @classmethod
    def laplace(cls, delta=1.0):
        return cls(LAPLACE, delta=delta)

    @classmethod
    def laplace_r(cls, r=DEFAULT_R, delta=1.0):
        return cls(REG_LAPLACE, r=r, delta=delta)


def radial_eval(spec: KernelSpec, v, order: int = 0):
    """Vectorized kernel evaluation over displacements ``v`` of shape ``(..., d)``.

    Returns a tuple ``(value, grad, hess)`` with shapes ``(...)``,
    ``(..., d)`` and ``(..., d, d)``; entries beyond ``order`` are ``None``.
    """
    if order not in (0, 1, 2):
        raise ValueError(f"derivative order must be 0, 1 or 2, got {order}")
    if order > 0 and not spec.differentiable:
        raise DerivativeUnavailable(
            "the Laplace kernel is not differentiable at 0; use the regularized "
            "Laplace kernel ('laplace-r') for derivatives"
        )
    v = np.asarray(v, dtype=float)
    dl = spec.delta
    y = dl * v
    sq = np.einsum("...i,...i->...", y, y)
    eye = np.eye(v.shape[-1])

    grad = hess = None
    if spec.family == GAUSS:
        val = np.exp(-sq)
        if order >= 1:
            grad = (-2.0 * dl) * y * val[..., None]
        if order >= 2:
            outer = y[..., :, None] * y[..., None, :]
            hess = dl * dl * (4.0 * outer - 2.0 * eye) * val[..., None, None]
    elif spec.family == LAPLACE:
        val = np.exp(-np.sqrt(sq))
    else:
        s = np.sqrt(sq + spec.r)
        val = np.exp(-s)
        if order >= 1:
            grad = -dl * y * (val / s)[..., None]
        if order >= 2:
            outer = y[..., :, None] * y[..., None, :]
            s_ = s[..., None, None]
            hess = dl * dl * val[..., None, None] * (
                outer / s_**2 + outer / s_**3 - eye / s_
            )
    if hess is not None:
        hess = 0.5 * (hess + np.swapaxes(hess, -1, -2))
    return val, grad, hess


def kernel_eval(spec: KernelSpec, v, order: int = 0):
    """Evaluate a kernel at a single displacement ``v``.

    Returns ``value`` for ``order=0``, ``(value, gradient)`` for ``order=1``
    and ``(value, gradient, hessian)`` for ``order=2``.
    """
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.ndim != 1:
        raise ValueError("kernel_eval takes a single displacement vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("displacement must be finite")
    val, grad, hess = radial_eval(spec, v, order)
    val = float(val)
    if order == 0:
        return val
    if order == 1:
        return val, grad
    return val, grad, hess
