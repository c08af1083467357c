"""The signature function ``u(x) = (1/m) sum_k lam_k K(x - x_k)`` and the
geometry it implies: normals, shape operator and principal curvatures."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .density import DensitySolution, PointCloud, as_cloud, build_kernel_matrix, solve_density
from .errors import SingularPoint
from .kernels import KernelSpec, radial_eval

MAX_RETRIES = 8


class SignatureModel:
    """Evaluable signature function of a point cloud.

    Build one with :meth:`fit`, or directly from a cloud, kernel and a
    precomputed :class:`DensitySolution`.
    """

    def __init__(self, cloud: PointCloud, spec: KernelSpec, density: DensitySolution):
        cloud = as_cloud(cloud)
        if density.lam.shape != (cloud.m,):
            raise ValueError(
                f"density has {density.lam.size} coefficients for {cloud.m} points"
            )
        self.cloud = cloud
        self.spec = spec
        self.density = density
        scale = cloud.diameter()
        scale = scale if scale > 0 else 1.0
        self.grad_floor = 1e-12 * (1.0 + scale)
        self.grad_scale = 1e-6 * scale
        self.perturb_size = 1e-3 * scale

    @classmethod
    def fit(cls, points, spec: KernelSpec | None = None, alpha: float = 0.0,
            method="auto", ridge="scaled"):
        cloud = as_cloud(points)
        spec = KernelSpec() if spec is None else spec
        M = build_kernel_matrix(cloud, spec)
        return cls(cloud, spec, solve_density(M, alpha, cloud.m, method=method, ridge=ridge))

    @property
    def lam(self) -> np.ndarray:
        return self.density.lam

    @property
    def alpha(self) -> float:
        return self.density.alpha

    @property
    def d(self) -> int:
        return self.cloud.d

    def scaled(self, c: float) -> "SignatureModel":
        """Copy with every coefficient multiplied by ``c``."""
        dens = self.density
        lam = dens.lam * c
        lam.setflags(write=False)
        return SignatureModel(self.cloud, self.spec, replace(dens, lam=lam))

    # -- evaluation -------------------------------------------------------

    def evaluate_many(self, X, order: int = 0):
        """Evaluate ``u`` (and derivatives up to ``order``) at points ``X`` of shape (n, d)."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.d:
            raise ValueError(f"query points must have shape (n, {self.d})")
        w = self.lam / self.cloud.m
        u = np.empty(len(X))
        g = np.empty((len(X), self.d)) if order >= 1 else None
        H = np.empty((len(X), self.d, self.d)) if order >= 2 else None
        # chunk to bound the (n, m, d, d) intermediate
        step = max(1, 4_000_000 // (self.cloud.m * self.d * self.d))
        for s in range(0, len(X), step):
            diff = X[s:s + step, None, :] - self.cloud.points[None, :, :]
            val, grad, hess = radial_eval(self.spec, diff, order)
            u[s:s + step] = val @ w
            if order >= 1:
                g[s:s + step] = np.einsum("nmi,m->ni", grad, w)
            if order >= 2:
                H[s:s + step] = np.einsum("nmij,m->nij", hess, w)
        return u, g, H

    def evaluate(self, x, order: int = 0):
        """Evaluate at a single point; returns ``u``, ``(u, grad)`` or ``(u, grad, hess)``."""
        x = np.asarray(x, dtype=float).reshape(1, -1)
        if not np.all(np.isfinite(x)):
            raise ValueError("query point must be finite")
        u, g, H = self.evaluate_many(x, order)
        if order == 0:
            return float(u[0])
        if order == 1:
            return float(u[0]), g[0]
        return float(u[0]), g[0], H[0]

    def __call__(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            return self.evaluate(X)
        return self.evaluate_many(X)[0]

    # -- geometry ---------------------------------------------------------

    def _eval1(self, x, order):
        u, g, H = self.evaluate_many(x.reshape(1, -1), order)
        return u[0], g[0], (H[0] if H is not None else None)

    def singular_tolerance(self, hess) -> float:
        """Gradients below this are treated as vanishing.

        The bound compares the gradient with what the local Hessian would
        produce over a displacement of ``grad_scale``; solver noise on a
        ridge of ``u`` (a flat piece of the cloud) stays under it.
        """
        return max(self.grad_floor, float(np.linalg.norm(hess, 2)) * self.grad_scale)

    def _regular_point(self, x, order, rng):
        """Evaluate at ``x``, nudging it off a critical point of ``u`` if needed."""
        x = np.asarray(x, dtype=float)
        u, g, H = self._eval1(x, 2)
        gn = float(np.linalg.norm(g))
        if gn >= self.singular_tolerance(H):
            return x, u, g, H, None
        if rng is None:
            rng = np.random.default_rng(0)
        hnorm = float(np.linalg.norm(H, 2))
        for _ in range(MAX_RETRIES):
            w = rng.standard_normal(self.d)
            offset = self.perturb_size * w / np.linalg.norm(w)
            u, g, H = self._eval1(x + offset, 2)
            gn = float(np.linalg.norm(g))
            # accept once the nudge produced a gradient of the size the curvature predicts
            if gn >= max(self.singular_tolerance(H), 0.25 * hnorm * self.perturb_size):
                return x + offset, u, g, H, offset
        raise SingularPoint(x, gn)

    def normal_at(self, x, rng=None) -> np.ndarray:
        """Implied unit normal ``-grad u / |grad u|``."""
        _, _, g, _, _ = self._regular_point(x, 1, rng)
        return -g / np.linalg.norm(g)

    def curvatures_at(self, x, rng=None) -> "GeometryReport":
        return geometry_report(self, x, rng)


@dataclass(frozen=True)
class GeometryReport:
    query: np.ndarray
    u: float
    gradient: np.ndarray
    hessian: np.ndarray
    normal: np.ndarray
    curvatures: np.ndarray
    regularized: bool = False
    offset: np.ndarray | None = None

    @property
    def shape_operator(self) -> np.ndarray:
        """Jacobian of the normal field in the form ``(H - H nu nu^T) / |grad u|``."""
        return jacobian_of_normal(self.gradient, self.hessian)


def jacobian_of_normal(grad, hess) -> np.ndarray:
    g = np.linalg.norm(grad)
    nu = -grad / g
    return (hess - np.outer(hess @ nu, nu)) / g


def tangent_basis(nu) -> np.ndarray:
    """Orthonormal basis (as columns) of the complement of the unit vector ``nu``."""
    d = nu.size
    # Householder reflector mapping e_k to nu; its other columns span nu^perp
    k = int(np.argmax(np.abs(nu)))
    e = np.zeros(d)
    e[k] = 1.0
    v = nu - e if nu[k] < 0 else nu + e
    Q = np.eye(d) - 2.0 * np.outer(v, v) / (v @ v)
    return np.delete(Q, k, axis=1)


def _order_curvatures(k):
    k = np.asarray(k, dtype=float)
    idx = np.lexsort((-k, -np.abs(k)))
    return k[idx]


def principal_curvatures(grad, hess) -> tuple[np.ndarray, np.ndarray]:
    """Normal and principal curvatures from ``grad u`` and ``D^2 u``.

    Curvatures are the tangential eigenvalues of ``-P H P / |grad u|``
    (``P`` the tangent projector), which makes the unit circle with its
    outward normal come out at +1.
    """
    g = float(np.linalg.norm(grad))
    nu = -np.asarray(grad) / g
    T = tangent_basis(nu)
    S = -(T.T @ hess @ T) / g
    k = np.linalg.eigvalsh(0.5 * (S + S.T)) if S.size else np.empty(0)
    return nu, _order_curvatures(k)


def geometry_report(model: SignatureModel, x, rng=None) -> GeometryReport:
    x = np.asarray(x, dtype=float)
    _, u, g, H, offset = model._regular_point(x, 2, rng)
    nu, k = principal_curvatures(g, H)
    return GeometryReport(x, u, g, H, nu, k, offset is not None, offset)
