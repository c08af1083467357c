"""Kernel signature functions of point clouds and the geometry they imply."""

from .density import DensitySolution, PointCloud, build_kernel_matrix, solve_density
from .dimension import DimensionEstimate, estimate_local_dimension
from .errors import (
    DerivativeUnavailable,
    DimensionUnsupported,
    DuplicatePoints,
    IllConditionedWarning,
    InsufficientProbes,
    InvalidCount,
    InvalidSpec,
    SingularPoint,
    SolveFailed,
)
from .isoline import IsolineSet, auto_iso_value, extract_isolines
from .kernels import KernelSpec, kernel_eval
from .shapes import (
    NoiseSpec,
    add_noise,
    gen_circle,
    gen_extruded_surface,
    gen_folded_curve,
    gen_graph,
    gen_sector,
    gen_sphere_sample,
    gen_square,
)
from .signature import GeometryReport, SignatureModel

__version__ = "0.1.0"
