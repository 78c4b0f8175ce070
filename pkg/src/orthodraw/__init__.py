"""Orthogonal graph drawing via SAT-guided shape search.

The package splits the problem in two: find a direction label for every
edge such that enough cycles use all four directions (shape search, via an
in-package CDCL SAT solver with edge subdivision on failure), then turn a
drawable shape into integer grid coordinates and measure the result.
"""

from .graph import Graph, generate_random_deg4, hard_family
from .layout import Drawing, assign_coordinates
from .metrics import MetricsReport, compute_metrics, normalize_external
from .pipeline import PipelineConfig, RunReport, run_sm
from .shape import Shape, is_cycle_complete, validate_shape

__all__ = [
    "Graph",
    "Shape",
    "Drawing",
    "MetricsReport",
    "PipelineConfig",
    "RunReport",
    "assign_coordinates",
    "compute_metrics",
    "generate_random_deg4",
    "hard_family",
    "is_cycle_complete",
    "normalize_external",
    "run_sm",
    "validate_shape",
]

__version__ = "0.1.0"
