"""Level lines of a planar signature function by marching squares."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionUnsupported


def auto_iso_value(model) -> float:
    """Mean of the signature function over the data points."""
    return float(np.mean(model.evaluate_many(model.cloud.points)[0]))


def default_iso_value(model) -> float:
    """1 for exact interpolation, the data mean once ``alpha > 0``."""
    return 1.0 if model.alpha == 0 else auto_iso_value(model)


@dataclass(frozen=True)
class Polyline:
    points: np.ndarray
    closed: bool

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class IsolineSet:
    iso_value: float
    polylines: list
    grid: tuple  # (nx, ny, (xmin, xmax, ymin, ymax))
    max_residual: float = 0.0
    values: np.ndarray | None = field(default=None, repr=False)

    @property
    def closed_count(self) -> int:
        return sum(p.closed for p in self.polylines)

    def vertices(self) -> np.ndarray:
        if not self.polylines:
            return np.empty((0, 2))
        return np.vstack([p.points for p in self.polylines])


def grid_box(cloud, margin, kernel_width=1.0):
    """Bounding box padded by ``margin`` times its diagonal on every side.

    A single point has no extent; its box is sized from the kernel width.
    """
    lo = cloud.points.min(axis=0)
    hi = cloud.points.max(axis=0)
    diam = cloud.diameter()
    if diam == 0.0:
        diam = 10.0 * kernel_width
    pad = margin * diam
    return lo[0] - pad, hi[0] + pad, lo[1] - pad, hi[1] + pad


# corner order: 0=(i,j) 1=(i+1,j) 2=(i+1,j+1) 3=(i,j+1)
# edges: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c3-c2), 3 left (c0-c3)
_CORNER_EDGES = {0: (0, 3), 1: (0, 1), 2: (1, 2), 3: (2, 3)}


def _cell_segments(above, center_above):
    """Pairs of crossed edges for one cell given which corners lie above the iso value."""
    n = sum(above)
    if n in (0, 4):
        return []
    if n in (1, 3):
        odd = [k for k in range(4) if above[k] == (n == 1)][0]
        return [_CORNER_EDGES[odd]]
    if above[0] == above[1]:
        return [(1, 3)]
    if above[1] == above[2]:
        return [(0, 2)]
    # saddle: corners 0,2 agree and 1,3 agree
    if center_above == above[0]:
        # 0 and 2 are joined through the centre, so 1 and 3 are cut off
        return [_CORNER_EDGES[1], _CORNER_EDGES[3]]
    return [_CORNER_EDGES[0], _CORNER_EDGES[2]]


def _edge_key(i, j, e):
    # horizontal edges ('h', i, j) join (i,j)-(i+1,j); vertical ('v', i, j) join (i,j)-(i,j+1)
    if e == 0:
        return ("h", i, j)
    if e == 1:
        return ("v", i + 1, j)
    if e == 2:
        return ("h", i, j + 1)
    return ("v", i, j)


def _chain(segments):
    """Join segments (pairs of edge keys) into maximal chains."""
    adj = {}
    for a, b in segments:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen_edges = set()
    chains = []

    def walk(start):
        path = [start]
        prev, cur = None, start
        while True:
            nxt = [n for n in adj[cur] if frozenset((cur, n)) not in seen_edges]
            if not nxt:
                return path, False
            n = nxt[0]
            seen_edges.add(frozenset((cur, n)))
            if n == start:
                return path + [n], True
            path.append(n)
            prev, cur = cur, n

    # open chains start at degree-1 nodes
    for node, nbrs in adj.items():
        if len(nbrs) == 1 and frozenset((node, nbrs[0])) not in seen_edges:
            chains.append(walk(node))
    for node, nbrs in adj.items():
        for n in nbrs:
            if frozenset((node, n)) not in seen_edges:
                chains.append(walk(node))
    return chains


def marching_squares(F, xs, ys, center_value=None):
    """Zero level lines of the grid samples ``F[j, i] = f(xs[i], ys[j])``.

    ``center_value(x, y)`` resolves saddle cells; without it saddles are
    resolved by the average of the four corners.
    """
    ny, nx = F.shape
    above = F >= 0
    a00 = above[:-1, :-1]
    mixed = ~((a00 == above[:-1, 1:]) & (a00 == above[1:, 1:]) & (a00 == above[1:, :-1]))

    def crossing(key):
        kind, i, j = key
        if kind == "h":
            f0, f1 = F[j, i], F[j, i + 1]
            t = f0 / (f0 - f1) if f0 != f1 else 0.5
            return xs[i] + t * (xs[i + 1] - xs[i]), ys[j]
        f0, f1 = F[j, i], F[j + 1, i]
        t = f0 / (f0 - f1) if f0 != f1 else 0.5
        return xs[i], ys[j] + t * (ys[j + 1] - ys[j])

    segments = []
    for j, i in zip(*np.nonzero(mixed)):
        corners = (above[j, i], above[j, i + 1], above[j + 1, i + 1], above[j + 1, i])
        center = None
        if corners[0] == corners[2] and corners[1] == corners[3] and corners[0] != corners[1]:
            if center_value is not None:
                cx = 0.5 * (xs[i] + xs[i + 1])
                cy = 0.5 * (ys[j] + ys[j + 1])
                center = center_value(cx, cy) >= 0
            else:
                center = F[j:j + 2, i:i + 2].mean() >= 0
        for ea, eb in _cell_segments(corners, center):
            segments.append((_edge_key(i, j, ea), _edge_key(i, j, eb)))

    out = []
    for keys, closed in _chain(segments):
        pts = np.array([crossing(k) for k in keys])
        out.append(Polyline(pts, closed))
    return out


def extract_isolines(model, iso=None, nx: int = 200, ny: int = 200, margin: float = 0.2,
                     box=None) -> IsolineSet:
    """Level lines ``{u = iso}`` of a planar model on a regular grid.

    ``iso`` may be a number, ``"auto"`` (mean over the data) or ``None``
    (1 when ``alpha == 0``, otherwise the data mean). The grid covers the
    cloud's bounding box padded by ``margin`` times its diagonal, unless an
    explicit ``box=(xmin, xmax, ymin, ymax)`` is given.
    """
    if model.d != 2:
        raise DimensionUnsupported(f"level lines are only extracted in 2-D, cloud has d={model.d}")
    if nx < 8 or ny < 8:
        raise ValueError("grid needs at least 8 nodes per axis")
    if iso is None:
        iso = default_iso_value(model)
    elif isinstance(iso, str):
        if iso != "auto":
            raise ValueError(f"iso must be a number or 'auto', got {iso!r}")
        iso = auto_iso_value(model)
    iso = float(iso)

    x0, x1, y0, y1 = box if box is not None else grid_box(model.cloud, margin, 1.0 / model.spec.delta)
    xs = np.linspace(x0, x1, nx)
    ys = np.linspace(y0, y1, ny)
    X, Y = np.meshgrid(xs, ys)
    U = model.evaluate_many(np.column_stack([X.ravel(), Y.ravel()]))[0].reshape(ny, nx)

    lines = marching_squares(U - iso, xs, ys, center_value=lambda x, y: model.evaluate((x, y)) - iso)
    resid = 0.0
    if lines:
        verts = np.vstack([p.points for p in lines])
        resid = float(np.max(np.abs(model.evaluate_many(verts)[0] - iso)))
    return IsolineSet(iso, lines, (nx, ny, (x0, x1, y0, y1)), resid, U)
