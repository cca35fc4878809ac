# file: pipeline/errors.py
"""
Exception hierarchy for the plate engine.

Every error raised on purpose by the engine derives from PlateAnalysisError,
so callers can separate physical/numerical findings from programming bugs.
"""

from typing import Optional


class PlateAnalysisError(Exception):
    """Base class for all engine errors."""


class MaterialRangeError(PlateAnalysisError, ValueError):
    """Temperature or moisture outside the tabulated range (no extrapolation)."""


class InvalidMaterialError(PlateAnalysisError, ValueError):
    """Lamina constants that do not describe a stable orthotropic material."""


class GeometryError(PlateAnalysisError, ValueError):
    """Invalid mesh, degenerate element or cutout outside the plate."""


class SingularSystemError(PlateAnalysisError, RuntimeError):
    """Factorization of a constrained system failed."""


class SolverError(PlateAnalysisError, RuntimeError):
    """Eigen-solver failure: no convergence, residual bound or empty spectrum."""


class InstabilityError(SolverError):
    """
    K + K_R is indefinite: the hygrothermal preload alone buckles the plate.

    Attributes:
        eigenvalue: the offending (negative) eigenvalue of (K + K_R, M)
    """

    def __init__(self, message: str, eigenvalue: Optional[float] = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue
