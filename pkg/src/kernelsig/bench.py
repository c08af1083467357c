"""Benchmark suites for the sector, circle, sphere, graph and dimension experiments.

Every suite returns a :class:`Table`; nothing is cached between runs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .dimension import estimate_local_dimension
from .errors import IllConditionedWarning
from .kernels import KernelSpec
from .shapes import (
    NoiseSpec,
    add_noise,
    gen_circle,
    gen_extruded_surface,
    gen_folded_curve,
    gen_graph,
    gen_sector,
    sphere_points,
)
from .signature import SignatureModel

SECTOR_SIZES = (32, 64, 128, 256)
SECTOR_ALPHAS = (0.0, 1e-10)
# r used for the regularized Laplace rows of the sector table
SECTOR_LAPLACE_R = 1e-5
GRAPH_ALPHAS = (0.0, 1e-10, 0.01, 0.05, 0.1)
GRAPH_NOISE = (0.0, 0.05, 0.1, 0.5)
# the folded fold gap is 0.5, so the kernel bump is narrowed for dimension work
DIMENSION_DELTA = 3.0


@dataclass
class Table:
    name: str
    columns: list
    rows: list

    def to_csv(self) -> str:
        out = [",".join(self.columns)]
        for row in self.rows:
            out.append(",".join(_fmt(v, csv=True) for v in row))
        return "\n".join(out) + "\n"

    def to_markdown(self) -> str:
        out = [f"### {self.name}", "", "| " + " | ".join(self.columns) + " |",
               "|" + "---|" * len(self.columns)]
        for row in self.rows:
            out.append("| " + " | ".join(_fmt(v) for v in row) + " |")
        return "\n".join(out) + "\n"

    def column(self, name):
        k = self.columns.index(name)
        return [r[k] for r in self.rows]


def _fmt(v, csv=False):
    if isinstance(v, (float, np.floating)):
        return f"{v:.17g}" if csv else f"{v:.4g}"
    return str(v)


def _quiet_fit(*args, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IllConditionedWarning)
        return SignatureModel.fit(*args, **kw)


def angle_deg(a, b) -> float:
    c = abs(float(np.dot(a, b))) / (np.linalg.norm(a) * np.linalg.norm(b))
    return float(np.degrees(np.arccos(min(1.0, c))))


def sector_error(spec, alpha, n, ridge="plain") -> float:
    """Average relative curvature error over the middle quarter of the sector."""
    cloud, mask = gen_sector(n)
    model = _quiet_fit(cloud, spec, alpha, ridge=ridge)
    k = np.array([model.curvatures_at(p).curvatures[0] for p in cloud.points[mask]])
    return float(np.mean(np.abs(k - 1.0)))


def sector_suite(sizes=SECTOR_SIZES, laplace_r=SECTOR_LAPLACE_R) -> Table:
    rows = []
    for label, spec in (("Gauss", KernelSpec.gauss()), ("Laplace", KernelSpec.laplace_r(laplace_r))):
        for alpha in SECTOR_ALPHAS:
            rows.append([label, alpha] + [sector_error(spec, alpha, n) for n in sizes])
    return Table("sector: mean relative curvature error (middle quarter)",
                 ["kernel", "alpha"] + [f"N={n}" for n in sizes], rows)


def circle_suite(n=30) -> Table:
    cloud = gen_circle(n)
    rows = []
    for label, spec in (("Gauss", KernelSpec.gauss()), ("Laplace", KernelSpec.laplace_r())):
        for alpha in (0.0, 1e-10):
            model = _quiet_fit(cloud, spec, alpha)
            reps = [model.curvatures_at(p) for p in cloud.points]
            u = model.evaluate_many(cloud.points)[0]
            ang = max(angle_deg(r.normal, p) for r, p in zip(reps, cloud.points))
            k = np.array([r.curvatures[0] for r in reps])
            rows.append([label, alpha, float(np.max(np.abs(u - 1))), ang,
                         float(k.min()), float(k.max())])
    return Table("circle: 30 regular points",
                 ["kernel", "alpha", "max|u-1|", "max normal angle (deg)", "min kappa", "max kappa"],
                 rows)


def sphere_case(seed, m=80, n_eval=32):
    """Fit ``m`` random sphere points and measure errors at ``n_eval`` fresh points."""
    rng = np.random.default_rng(seed)
    cloud = sphere_points(m, rng)
    query = sphere_points(n_eval, rng)
    model = _quiet_fit(cloud, KernelSpec.gauss(), 0.0)
    reps = [model.curvatures_at(q) for q in query]
    u_err = float(np.max(np.abs(model.evaluate_many(query)[0] - 1.0)))
    ang = max(angle_deg(r.normal, q) for r, q in zip(reps, query))
    # outer normal: the sign must agree too
    sign_ok = all(float(r.normal @ q) > 0 for r, q in zip(reps, query))
    k_err = max(float(np.max(np.abs(r.curvatures - 1.0))) for r in reps)
    return u_err, ang, k_err, sign_ok


def sphere_suite(seeds=range(5)) -> Table:
    rows = [[s, *sphere_case(s)] for s in seeds]
    return Table("sphere: 80 samples, 32 fresh evaluation points",
                 ["seed", "max|u-1|", "max normal angle (deg)", "max|kappa-1|", "outward"], rows)


def graph_suite(seed=0, alphas=GRAPH_ALPHAS, noise=GRAPH_NOISE, n=51) -> Table:
    origin = np.array([0.0, -1.0])
    clean = gen_graph(n)
    rows = []
    for k, pct in enumerate(noise):
        cloud = add_noise(clean, NoiseSpec(pct, seed + k))
        for alpha in alphas:
            model = _quiet_fit(cloud, KernelSpec.gauss(), alpha, ridge="plain")
            rep = model.curvatures_at(origin)
            rows.append([pct, alpha, float(rep.normal[0]), float(rep.normal[1]),
                         float(rep.curvatures[0])])
    return Table("graph: implied normal and curvature at the origin",
                 ["noise", "alpha", "normal_x", "normal_y", "curvature"], rows)


def folded_base_points(cloud):
    """Four data points on the two central straight folds, left to right, bottom to top."""
    p = cloud.points
    picks = []
    for z in (0.0, 0.5):
        for x in (0.75, 1.25):
            on = np.nonzero(np.abs(p[:, 2] - z) < 1e-9)[0]
            picks.append(int(on[np.argmin(np.abs(p[on, 0] - x))]))
    return p[picks]


def dimension_case(seed, n_curve=54, n_y=7, delta=DIMENSION_DELTA, probes=15, radius=0.01,
                   threshold=0.1):
    curve = gen_folded_curve(n_curve)
    surface = gen_extruded_surface(n_curve, n_y)
    spec = KernelSpec.gauss(delta)
    mc = _quiet_fit(curve, spec, 0.0)
    ms = _quiet_fit(surface, spec, 0.0)
    rng = np.random.default_rng(seed)
    out = []
    for p in folded_base_points(curve):
        ec = estimate_local_dimension(mc, p, probes, radius, threshold, rng)
        es = estimate_local_dimension(ms, p, probes, radius, threshold, rng)
        out.append((p, ec, es))
    return out


def dimension_suite(seed=0, **kw) -> Table:
    rows = []
    for k, (p, ec, es) in enumerate(dimension_case(seed, **kw), start=1):
        rows.append([k, *ec.singular_values, ec.estimated_dimension,
                     *es.singular_values, es.estimated_dimension])
    cols = ["point", "curve sv1", "curve sv2", "curve sv3", "curve dim",
            "surface sv1", "surface sv2", "surface sv3", "surface dim"]
    return Table(f"local dimension (seed {seed})", cols, rows)


SUITES = {
    "sector": lambda seed: sector_suite(),
    "circle": lambda seed: circle_suite(),
    "sphere": lambda seed: sphere_suite(range(seed, seed + 5)),
    "graph": lambda seed: graph_suite(seed),
    "dimension": lambda seed: dimension_suite(seed),
}
