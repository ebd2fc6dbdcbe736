"""Elastic rigid-obstacle scattering in two dimensions.

Forward Nystrom solver for the Helmholtz-decomposed Navier problem, an
analytic disk solution for validation, and regularized Newton reconstructions
from phased or phaseless (reference-ball) far-field data.
"""
from .estimators import FarFieldSimulator, PhasedReconstructor, PhaselessReconstructor
from .forward import FarField, far_field, near_field, solve
from .geometry import CircleBoundary, ShapeUpdate, StarCurve, builtin_shape, curve_l2_error
from .inverse import (IterationTrace, ReconstructionConfig, inject_noise, run_algorithm_I, run_algorithm_II,
                      synthesize_data)
from .medium import ElasticMedium, IncidentWave, ModeFlags

__version__ = "0.1.0"

__all__ = [
    "CircleBoundary", "ElasticMedium", "FarField", "FarFieldSimulator", "IncidentWave", "IterationTrace",
    "ModeFlags", "PhasedReconstructor", "PhaselessReconstructor", "ReconstructionConfig", "ShapeUpdate",
    "StarCurve", "builtin_shape", "curve_l2_error", "far_field", "inject_noise", "near_field",
    "run_algorithm_I", "run_algorithm_II", "solve", "synthesize_data",
]
