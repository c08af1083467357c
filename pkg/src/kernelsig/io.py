"""File formats: point-cloud CSV, JSON model files, polyline CSV and SVG."""

from __future__ import annotations

import io as _io
import json
from pathlib import Path

import numpy as np

from .density import DensitySolution, PointCloud
from .kernels import KernelSpec
from .signature import SignatureModel

MODEL_FORMAT = "kernelsig-model"
MODEL_VERSION = 1


def _open_text(target, mode):
    if hasattr(target, "write") or hasattr(target, "read"):
        return target, False
    return open(target, mode, newline=""), True


def cloud_to_csv(cloud: PointCloud) -> str:
    buf = _io.StringIO()
    np.savetxt(buf, cloud.points, fmt="%.17g", delimiter=",", header=f"d={cloud.d}")
    return buf.getvalue()


def write_cloud(cloud: PointCloud, target) -> None:
    fh, owned = _open_text(target, "w")
    try:
        fh.write(cloud_to_csv(cloud))
    finally:
        if owned:
            fh.close()


def read_cloud(source) -> PointCloud:
    """Read a cloud CSV; ``#`` lines are comments, an optional ``# d=<d>`` is checked."""
    fh, owned = _open_text(source, "r")
    try:
        text = fh.read()
    finally:
        if owned:
            fh.close()
    declared = None
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#") and "d=" in line:
            declared = int(line.split("d=", 1)[1].split()[0])
            break
    rows = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ValueError("cloud file has no points")
    pts = np.loadtxt(rows, delimiter=",", ndmin=2)
    if declared is not None and pts.shape[1] != declared:
        raise ValueError(f"header declares d={declared} but rows have {pts.shape[1]} columns")
    return PointCloud(pts)


def model_to_dict(model: SignatureModel) -> dict:
    dens = model.density
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "cloud": {
            "d": model.cloud.d,
            "m": model.cloud.m,
            "points": model.cloud.points.ravel().tolist(),
        },
        "kernel": {"family": model.spec.family, "r": model.spec.r, "delta": model.spec.delta},
        "alpha": dens.alpha,
        "ridge": dens.ridge,
        "lambda": dens.lam.tolist(),
        "solver": {
            "path": dens.solver_path,
            "condition_estimate": dens.condition_estimate,
            "residual": dens.residual,
            "ill_conditioned": dens.ill_conditioned,
            "notes": list(dens.notes),
        },
    }


def model_from_dict(data: dict) -> SignatureModel:
    if data.get("format") != MODEL_FORMAT:
        raise ValueError("not a model file")
    if data.get("version") != MODEL_VERSION:
        raise ValueError(f"unsupported model file version {data.get('version')}")
    c = data["cloud"]
    pts = np.asarray(c["points"], dtype=float).reshape(c["m"], c["d"])
    k = data["kernel"]
    spec = KernelSpec(k["family"], r=k["r"], delta=k["delta"])
    lam = np.asarray(data["lambda"], dtype=float)
    lam.setflags(write=False)
    s = data.get("solver", {})
    cond = s.get("condition_estimate", float("nan"))
    dens = DensitySolution(
        lam,
        float(data["alpha"]),
        float("inf") if cond is None else float(cond),
        s.get("path", ""),
        float(s.get("residual", float("nan"))),
        bool(s.get("ill_conditioned", False)),
        tuple(s.get("notes", ())),
        data.get("ridge", "scaled"),
    )
    return SignatureModel(PointCloud(pts, check=False), spec, dens)


def save_model(model: SignatureModel, path) -> None:
    d = model_to_dict(model)
    if not np.isfinite(d["solver"]["condition_estimate"]):
        d["solver"]["condition_estimate"] = None
    Path(path).write_text(json.dumps(d, indent=1) + "\n")


def load_model(path) -> SignatureModel:
    return model_from_dict(json.loads(Path(path).read_text()))


def isolines_to_csv(isoset) -> str:
    lines = ["polyline_id,x,y"]
    for k, pl in enumerate(isoset.polylines):
        for x, y in pl.points:
            lines.append(f"{k},{x:.17g},{y:.17g}")
    return "\n".join(lines) + "\n"


def isolines_to_svg(isoset, cloud=None, normals=None, size=600, arrow=0.1) -> str:
    """Render polylines (red), data points (white discs) and optional normal arrows.

    ``normals`` is an ``(m, 2)`` array of unit vectors drawn at the cloud points.
    """
    x0, x1, y0, y1 = isoset.grid[2]
    w, h = x1 - x0, y1 - y0
    sc = size / max(w, h)
    W, H = w * sc, h * sc

    def tx(p):
        return (p[0] - x0) * sc, (y1 - p[1]) * sc

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W:.1f}" height="{H:.1f}" '
        f'viewBox="0 0 {W:.3f} {H:.3f}">',
        f'<rect x="0" y="0" width="{W:.3f}" height="{H:.3f}" fill="#404040"/>',
    ]
    for pl in isoset.polylines:
        pts = [tx(p) for p in pl.points]
        d = "M " + " L ".join(f"{a:.3f} {b:.3f}" for a, b in pts)
        if pl.closed:
            d += " Z"
        out.append(f'<path d="{d}" fill="none" stroke="red" stroke-width="1.5"/>')
    if cloud is not None:
        if normals is not None:
            for p, n in zip(cloud.points, normals):
                a, b = tx(p)
                c, e = tx(p + arrow * np.asarray(n))
                out.append(
                    f'<line x1="{a:.3f}" y1="{b:.3f}" x2="{c:.3f}" y2="{e:.3f}" '
                    'stroke="#4da6ff" stroke-width="1"/>'
                )
        for p in cloud.points:
            a, b = tx(p)
            out.append(f'<circle cx="{a:.3f}" cy="{b:.3f}" r="3" fill="white" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
