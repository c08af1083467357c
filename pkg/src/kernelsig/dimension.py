"""Local intrinsic dimension from the rank of implied normals near a point.

Close to a manifold of codimension ``c`` the level sets of the signature
function wrap around it, so normals sampled in a small ball turn quickly in
the ``c`` transverse directions and hardly at all along the manifold. The
numerical rank ``r`` of the matrix of sampled normals therefore estimates
the codimension, and ``d - r`` the dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientProbes


@dataclass(frozen=True)
class DimensionEstimate:
    base_point: np.ndarray
    singular_values: np.ndarray
    numerical_rank: int
    estimated_dimension: int
    probes: int
    radius: float
    threshold: float
    normals: np.ndarray | None = None

    @property
    def ratio(self) -> float:
        """Second singular value relative to the first."""
        s = self.singular_values
        return float(s[1] / s[0]) if s.size > 1 and s[0] > 0 else 0.0


def probe_points(p, probes, radius, rng):
    p = np.asarray(p, dtype=float)
    w = rng.standard_normal((probes, p.size))
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    rho = radius * rng.uniform(0.0, 1.0, probes)
    return p + rho[:, None] * w


def numerical_rank(sv, threshold):
    sv = np.asarray(sv)
    if sv.size == 0 or sv[0] <= 0:
        return 0
    return int(np.count_nonzero(sv >= threshold * sv[0]))


def estimate_local_dimension(model, p, probes=15, radius=0.01, threshold=0.1, seed=0):
    """Estimate the local dimension of the sampled manifold near ``p``.

    Parameters
    ----------
    model : SignatureModel
    p : array_like, shape (d,)
        Base point, usually a data point.
    probes : int
        Number of random points at which normals are computed; at least ``d``.
    radius : float
        Probe distances are uniform on ``[0, radius]``.
    threshold : float
        Singular values below ``threshold * sigma_1`` do not count toward the rank.
    seed : int or numpy Generator

    Returns
    -------
    DimensionEstimate
    """
    p = np.asarray(p, dtype=float)
    d = p.size
    if probes < d:
        raise InsufficientProbes(f"need at least {d} probes in R^{d}, got {probes}")
    if radius <= 0:
        raise ValueError("probe radius must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    pts = probe_points(p, probes, radius, rng)
    N = np.column_stack([model.normal_at(q, rng=rng) for q in pts])
    sv = np.linalg.svd(N, compute_uv=False)
    r = numerical_rank(sv, threshold)
    return DimensionEstimate(p, sv, r, d - r, probes, float(radius), float(threshold), N)
