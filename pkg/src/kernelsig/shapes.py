"""Point-cloud generators for the test shapes, and the displacement noise model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import PointCloud
from .errors import InvalidCount


def gen_circle(n: int, radius: float = 1.0, center=(0.0, 0.0)) -> PointCloud:
    """``n`` points at angles ``2*pi*k/n`` on a circle (closed shape)."""
    if n < 3:
        raise InvalidCount(f"a circle needs at least 3 points, got {n}")
    t = 2.0 * np.pi * np.arange(n) / n
    pts = np.asarray(center, float) + radius * np.column_stack([np.cos(t), np.sin(t)])
    return PointCloud(pts, closed=True)


def gen_square(n: int, side: float = 2.0, center=(0.0, 0.0)) -> PointCloud:
    """``n`` points equally spaced along the boundary of an axis-aligned square.

    Starts at the lower-left corner and runs counter-clockwise; corners are
    always included, which is why ``n`` must be a multiple of 4.
    """
    if n < 4 or n % 4:
        raise InvalidCount(f"square point count must be a positive multiple of 4, got {n}")
    per = n // 4
    s = np.arange(per) / per * side
    h = side / 2.0
    edges = [
        np.column_stack([-h + s, np.full(per, -h)]),
        np.column_stack([np.full(per, h), -h + s]),
        np.column_stack([h - s, np.full(per, h)]),
        np.column_stack([np.full(per, -h), h - s]),
    ]
    return PointCloud(np.vstack(edges) + np.asarray(center, float), closed=True)


def gen_sector(n: int, aperture: float = np.pi / 16, radius: float = 1.0):
    """Arc of the circle centred on angle 0; also returns the middle-quarter mask.

    The mask selects points whose angle lies within ``aperture/8`` of the
    middle, i.e. the central quarter of the arc.
    """
    if n < 2:
        raise InvalidCount(f"a sector needs at least 2 points, got {n}")
    t = -aperture / 2 + np.arange(n) * aperture / (n - 1)
    pts = radius * np.column_stack([np.cos(t), np.sin(t)])
    mask = np.abs(t) <= aperture / 8 * (1 + 1e-12)
    return PointCloud(pts, closed=False), mask


def graph_function(x):
    x = np.asarray(x, dtype=float)
    return -1.0 + x**2 + np.abs(x) ** 2.5


def gen_graph(n: int = 51, half_width: float = 0.25) -> PointCloud:
    """Samples of ``y = -1 + x^2 + |x|^2.5`` at ``n`` uniform ``x`` in ``[-w, w]``."""
    if n < 2:
        raise InvalidCount(f"a graph needs at least 2 points, got {n}")
    x = np.linspace(-half_width, half_width, n)
    if n % 2:
        x[n // 2] = 0.0
    return PointCloud(np.column_stack([x, graph_function(x)]), closed=False)


def sphere_points(m: int, rng) -> np.ndarray:
    """Uniform points on the unit sphere via a uniform height and uniform angle."""
    z = rng.uniform(-1.0, 1.0, m)
    theta = rng.uniform(0.0, 2.0 * np.pi, m)
    rho = np.sqrt(1.0 - z * z)
    return np.column_stack([rho * np.cos(theta), rho * np.sin(theta), z])


def gen_sphere_sample(m: int, seed: int = 0) -> PointCloud:
    return PointCloud(sphere_points(m, np.random.default_rng(seed)))


# the folded curve: straight pieces and half circles, traversed in order.
# ("seg", start, end) or ("arc", center, radius, start_angle, end_angle)
FOLD_PIECES = (
    ("seg", (0.0, 0.0), (2.0, 0.0)),
    ("arc", (2.0, 0.25), 0.25, -np.pi / 2, np.pi / 2),
    ("seg", (2.0, 0.5), (0.0, 0.5)),
    ("arc", (0.0, 0.75), 0.25, -np.pi / 2, -3 * np.pi / 2),
    ("seg", (0.0, 1.0), (2.0, 1.0)),
    ("arc", (2.0, 0.25), 0.75, np.pi / 2, -np.pi / 2),
    ("seg", (2.0, -0.5), (0.0, -0.5)),
    ("arc", (0.0, -0.25), 0.25, -np.pi / 2, -3 * np.pi / 2),
)


def _piece_length(piece):
    if piece[0] == "seg":
        return float(np.hypot(*np.subtract(piece[2], piece[1])))
    return abs(piece[4] - piece[3]) * piece[2]


def folded_curve_length() -> float:
    return sum(_piece_length(p) for p in FOLD_PIECES)


def folded_curve_at(s) -> np.ndarray:
    """Planar point(s) on the folded curve at arc length ``s`` (wraps around)."""
    s = np.mod(np.atleast_1d(np.asarray(s, dtype=float)), folded_curve_length())
    out = np.empty((s.size, 2))
    start = 0.0
    for piece in FOLD_PIECES:
        ln = _piece_length(piece)
        sel = (s >= start) & (s < start + ln)
        t = (s[sel] - start) / ln
        if piece[0] == "seg":
            a, b = np.asarray(piece[1]), np.asarray(piece[2])
            out[sel] = a + t[:, None] * (b - a)
        else:
            c, r, a0, a1 = piece[1:]
            ang = a0 + t * (a1 - a0)
            out[sel] = np.asarray(c) + r * np.column_stack([np.cos(ang), np.sin(ang)])
        start += ln
    return out


def gen_folded_curve(n: int = 54, ambient: int = 3) -> PointCloud:
    """Closed folded curve sampled at ``n`` points equally spaced in arc length.

    With ``ambient=3`` the curve lies in the xz-plane of ``R^3``; with
    ``ambient=2`` the planar coordinates are returned.
    """
    if n < 3:
        raise InvalidCount(f"folded curve needs at least 3 points, got {n}")
    xz = folded_curve_at(np.arange(n) * folded_curve_length() / n)
    if ambient == 2:
        return PointCloud(xz, closed=True)
    if ambient != 3:
        raise ValueError("ambient dimension must be 2 or 3")
    return PointCloud(np.column_stack([xz[:, 0], np.zeros(n), xz[:, 1]]), closed=True)


def gen_extruded_surface(n_curve: int = 54, n_y: int = 7, half_width: float = 0.5) -> PointCloud:
    """The folded curve swept along ``y`` in ``[-half_width, half_width]``."""
    if n_y < 1:
        raise InvalidCount("need at least one copy of the curve")
    curve = gen_folded_curve(n_curve, ambient=3).points
    ys = np.linspace(-half_width, half_width, n_y) if n_y > 1 else np.zeros(1)
    copies = []
    for y in ys:
        c = curve.copy()
        c[:, 1] = y
        copies.append(c)
    return PointCloud(np.vstack(copies))


@dataclass(frozen=True)
class NoiseSpec:
    percent: float
    seed: int = 0


def add_noise(cloud: PointCloud, spec: NoiseSpec) -> PointCloud:
    """Displace every point by ``rho * omega``.

    ``rho`` is uniform on ``[0, percent * h_max]`` and ``omega`` uniform on the
    unit sphere, where ``h_max`` is the largest gap between consecutive points.
    """
    if spec.percent < 0:
        raise ValueError("noise percent must be nonnegative")
    if spec.percent == 0:
        return cloud
    rng = np.random.default_rng(spec.seed)
    m, d = cloud.points.shape
    omega = rng.standard_normal((m, d))
    omega /= np.linalg.norm(omega, axis=1, keepdims=True)
    rho = rng.uniform(0.0, spec.percent * cloud.h_max(), m)
    return PointCloud(cloud.points + rho[:, None] * omega, closed=cloud.closed)
