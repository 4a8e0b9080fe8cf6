"""Generalized Stieltjes transform of index rho and its contour inverse.

Modules
-------
branchfn     principal-branch powers, gamma/beta, Gauss 2F1
quadrature   tanh-sinh quadrature on intervals, half lines and circles
transform    forward transform, inverse formulas, discontinuity, Abel forms
kernelcheck  numerical certification of the delta-function kernel
catalog      closed-form transform pairs
cli          ``gst`` command-line front end
"""

from .errors import (
    DomainError,
    EvaluationError,
    GSTError,
    NonConvergence,
    PoleError,
    ResidualImaginaryError,
    SeriesTruncationError,
)
from .quadrature import ContourSpec, QuadConfig, QuadResult
from .transform import (
    CutPlaneFunction,
    SourceFunction,
    TransformParams,
    discontinuity,
    forward_gst,
    inverse_gst,
)
from .catalog import pair_point_mass, pair_power, pair_power_hyper, parse_pair

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "EvaluationError",
    "GSTError",
    "NonConvergence",
    "PoleError",
    "ResidualImaginaryError",
    "SeriesTruncationError",
    "ContourSpec",
    "QuadConfig",
    "QuadResult",
    "CutPlaneFunction",
    "SourceFunction",
    "TransformParams",
    "discontinuity",
    "forward_gst",
    "inverse_gst",
    "pair_point_mass",
    "pair_power",
    "pair_power_hyper",
    "parse_pair",
]
