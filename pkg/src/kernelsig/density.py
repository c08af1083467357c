"""Kernel matrix assembly and the density system ``(m*alpha*I + M) lam = m*1``."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la
from scipy.spatial.distance import pdist

from .errors import DuplicatePoints, IllConditionedWarning, SolveFailed
from .kernels import KernelSpec, radial_eval

SPD = "SPDFactorization"
EIGEN = "TruncatedEigen"

# condition numbers above this switch the solve to the truncated eigen path
COND_LIMIT = 1e-2 / np.finfo(float).eps
EIG_CUTOFF = 1e-14


class PointCloud:
    """An ordered set of ``m`` distinct points in ``R^d``.

    The order carries no meaning for the fitting algorithms; generators and
    the noise model use it to define consecutive gaps.
    """

    def __init__(self, points, closed=None, check=True):
        pts = np.array(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"points must be an (m, d) array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        if check and pts.shape[0] > 1 and pdist(pts).min() <= 0.0:
            raise DuplicatePoints("point cloud contains coincident points")
        pts.setflags(write=False)
        self.points = pts
        self.closed = closed

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.m

    def __repr__(self):
        return f"PointCloud(m={self.m}, d={self.d})"

    def diameter(self) -> float:
        """Length of the bounding-box diagonal (cheap proxy for the diameter)."""
        span = self.points.max(axis=0) - self.points.min(axis=0)
        return float(np.linalg.norm(span))

    def gaps(self) -> np.ndarray:
        """Distances between consecutive points, with the closing edge if closed."""
        p = self.points
        g = np.linalg.norm(np.diff(p, axis=0), axis=1)
        if self.closed and self.m > 1:
            g = np.append(g, np.linalg.norm(p[0] - p[-1]))
        return g

    def h_max(self) -> float:
        g = self.gaps()
        return float(g.max()) if g.size else 0.0

    def permuted(self, perm):
        return PointCloud(self.points[np.asarray(perm)], closed=None, check=False)


def as_cloud(points) -> PointCloud:
    return points if isinstance(points, PointCloud) else PointCloud(points)


def build_kernel_matrix(cloud, spec: KernelSpec) -> np.ndarray:
    """Return the symmetric matrix ``M[i, k] = K(x_i - x_k)``."""
    cloud = as_cloud(cloud)
    p = cloud.points
    if cloud.m > 1 and pdist(p).min() <= 0.0:
        raise DuplicatePoints("point cloud contains coincident points")
    M, _, _ = radial_eval(spec, p[:, None, :] - p[None, :, :])
    M = 0.5 * (M + M.T)
    np.fill_diagonal(M, spec.peak)
    return M


@dataclass(frozen=True)
class DensitySolution:
    """Coefficients of the signature function plus solver diagnostics.

    ``ridge`` records how ``alpha`` entered the system: ``"scaled"`` means
    ``(m*alpha*I + M)``, ``"plain"`` means ``(alpha*I + M)``.
    """

    lam: np.ndarray
    alpha: float
    condition_estimate: float
    solver_path: str
    residual: float
    ill_conditioned: bool = False
    notes: tuple = field(default=())
    ridge: str = "scaled"

    @property
    def m(self) -> int:
        return self.lam.size

    @property
    def effective_alpha(self) -> float:
        """The ``alpha`` for which ``u(x_i) = 1 - alpha * lam_i`` holds."""
        return self.alpha if self.ridge == "scaled" else self.alpha / self.m


def residual_bound(m, lam) -> float:
    return 1e-9 * m * max(1.0, float(np.max(np.abs(lam))))


def _eigen_solve(A, rhs):
    w, V = la.eigh(A)
    keep = w > EIG_CUTOFF * w[-1]
    return V[:, keep] @ ((V[:, keep].T @ rhs) / w[keep])


def solve_density(M, alpha: float = 0.0, m: int | None = None, method: str = "auto",
                  ridge: str = "scaled") -> DensitySolution:
    """Solve ``(m*alpha*I + M) lam = m*1``.

    With ``ridge='plain'`` the diagonal shift is ``alpha`` instead of
    ``m*alpha``; the sector and graph benchmarks use this form.

    ``method='auto'`` tries a Cholesky factorization and falls back to a
    truncated symmetric eigendecomposition when the factorization fails or
    the condition estimate exceeds ``COND_LIMIT``. ``'cholesky'`` and
    ``'eigen'`` force one path.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("kernel matrix must be square")
    if not np.allclose(M, M.T, rtol=0, atol=1e-14 * max(1.0, np.abs(M).max())):
        raise ValueError("kernel matrix must be symmetric")
    if alpha < 0 or not np.isfinite(alpha):
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if method not in ("auto", "cholesky", "eigen"):
        raise ValueError(f"unknown method {method!r}")
    if ridge not in ("scaled", "plain"):
        raise ValueError(f"unknown ridge convention {ridge!r}")
    n = M.shape[0]
    m = n if m is None else int(m)
    A = M + (m * alpha if ridge == "scaled" else alpha) * np.eye(n)
    rhs = np.full(n, float(m))

    w = la.eigvalsh(A)
    cond = float(w[-1] / w[0]) if w[0] > 0 else np.inf
    ill = not (cond <= COND_LIMIT)
    notes = []

    lam = None
    path = SPD
    if method == "cholesky" or (method == "auto" and not ill):
        try:
            lam = la.cho_solve(la.cho_factor(A, lower=True), rhs)
        except la.LinAlgError:
            if method == "cholesky":
                raise SolveFailed("Cholesky factorization failed")
            notes.append("cholesky failed")
    if lam is None:
        path = EIGEN
        lam = _eigen_solve(A, rhs)

    res = float(np.max(np.abs(A @ lam - rhs)))
    if path == EIGEN and res > residual_bound(n, lam):
        raise SolveFailed(
            f"truncated eigen solve residual {res:.3g} exceeds {residual_bound(n, lam):.3g}"
        )
    if ill:
        warnings.warn(
            f"density system is ill-conditioned (condition estimate {cond:.3g}); "
            f"solved via {path}",
            IllConditionedWarning,
            stacklevel=2,
        )
    lam.setflags(write=False)
    return DensitySolution(lam, float(alpha), cond, path, res, ill, tuple(notes), ridge)
