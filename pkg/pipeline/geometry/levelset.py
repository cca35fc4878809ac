# file: pipeline/geometry/levelset.py
"""
Nodal level sets of a single circular or elliptical cutout.

Sign convention: φ > 0 on the material side, φ < 0 inside the cutout.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from core.config import NO_CUTOUT_SURROGATE_DIAGONALS
from pipeline.errors import GeometryError
from pipeline.geometry.mesh import StructuredMesh


class CutoutKind(str, Enum):
    NONE = "none"
    CIRCLE = "circle"
    ELLIPSE = "ellipse"


@dataclass(frozen=True)
class CutoutSpec:
    """
    Cutout geometry. For an ellipse, semi-axis `d` lies at `theta` degrees
    from the plate x axis and `e` is perpendicular to it.
    """

    kind: CutoutKind = CutoutKind.NONE
    center: Tuple[float, float] = (0.0, 0.0)
    radius: float = 0.0
    d: float = 0.0
    e: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", CutoutKind(self.kind))
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if self.kind is CutoutKind.CIRCLE and self.radius <= 0.0:
            raise GeometryError(f"circle radius must be positive, got {self.radius}")
        if self.kind is CutoutKind.ELLIPSE and (self.d <= 0.0 or self.e <= 0.0):
            raise GeometryError(f"ellipse semi-axes must be positive, got d={self.d}, e={self.e}")

    @classmethod
    def none(cls) -> "CutoutSpec":
        return cls()

    @classmethod
    def circle(cls, center: Tuple[float, float], radius: float) -> "CutoutSpec":
        return cls(kind=CutoutKind.CIRCLE, center=center, radius=radius)

    @classmethod
    def ellipse(cls, center: Tuple[float, float], d: float, e: float, theta: float = 0.0) -> "CutoutSpec":
        return cls(kind=CutoutKind.ELLIPSE, center=center, d=d, e=e, theta=theta)

    @property
    def is_none(self) -> bool:
        return self.kind is CutoutKind.NONE

    def half_extents(self) -> Tuple[float, float]:
        """Half widths of the axis-aligned bounding box."""
        if self.kind is CutoutKind.CIRCLE:
            return self.radius, self.radius
        if self.kind is CutoutKind.ELLIPSE:
            t = np.radians(self.theta)
            c, s = np.cos(t), np.sin(t)
            return float(np.hypot(self.d * c, self.e * s)), float(np.hypot(self.d * s, self.e * c))
        return 0.0, 0.0

    def area(self) -> float:
        if self.kind is CutoutKind.CIRCLE:
            return float(np.pi * self.radius ** 2)
        if self.kind is CutoutKind.ELLIPSE:
            return float(np.pi * self.d * self.e)
        return 0.0

    def check_inside(self, a: float, b: float) -> None:
        """
        Raises:
            GeometryError: if the cutout touches or leaves the plate
        """
        if self.is_none:
            return
        xc, yc = self.center
        hx, hy = self.half_extents()
        if not (xc - hx > 0.0 and xc + hx < a and yc - hy > 0.0 and yc + hy < b):
            raise GeometryError(
                f"{self.kind.value} cutout at ({xc:g}, {yc:g}) does not lie strictly inside "
                f"the {a:g} × {b:g} plate"
            )


@dataclass(frozen=True, eq=False)
class LevelSetField:
    phi: np.ndarray
    cutout: CutoutSpec


def circle_level_set(mesh: StructuredMesh, center: Tuple[float, float], r_c: float) -> LevelSetField:
    """Signed distance to the circle boundary."""
    cutout = CutoutSpec.circle(center, r_c)
    phi = np.linalg.norm(mesh.nodes - np.asarray(cutout.center), axis=1) - r_c
    return LevelSetField(phi=phi, cutout=cutout)


def ellipse_level_set(
    mesh: StructuredMesh, center: Tuple[float, float], d: float, e: float, theta_cut: float
) -> LevelSetField:
    """
    φ = sqrt(a1·dx² + a2·dx·dy + a3·dy²) − 1 with
    a1 = (c/d)² + (s/e)², a2 = 2cs(1/d² − 1/e²), a3 = (s/d)² + (c/e)².

    This is the rotated-ellipse quadratic form; it reduces to ‖x − x_c‖/r − 1
    for d = e = r at any orientation.
    """
    cutout = CutoutSpec.ellipse(center, d, e, theta_cut)
    t = np.radians(theta_cut)
    c, s = np.cos(t), np.sin(t)
    a1 = (c / d) ** 2 + (s / e) ** 2
    a2 = 2.0 * c * s * (1.0 / d ** 2 - 1.0 / e ** 2)
    a3 = (s / d) ** 2 + (c / e) ** 2

    dx = mesh.nodes[:, 0] - cutout.center[0]
    dy = mesh.nodes[:, 1] - cutout.center[1]
    quadratic = a1 * dx * dx + a2 * dx * dy + a3 * dy * dy
    phi = np.sqrt(np.maximum(quadratic, 0.0)) - 1.0
    return LevelSetField(phi=phi, cutout=cutout)


def cutout_level_set(mesh: StructuredMesh, cutout: CutoutSpec) -> LevelSetField:
    """
    Dispatch on the cutout kind. Without a cutout every node gets a finite
    positive surrogate so that all elements classify as standard.
    """
    cutout.check_inside(mesh.a, mesh.b)
    if cutout.kind is CutoutKind.CIRCLE:
        return circle_level_set(mesh, cutout.center, cutout.radius)
    if cutout.kind is CutoutKind.ELLIPSE:
        return ellipse_level_set(mesh, cutout.center, cutout.d, cutout.e, cutout.theta)
    surrogate = NO_CUTOUT_SURROGATE_DIAGONALS * mesh.diagonal
    return LevelSetField(phi=np.full(mesh.n_nodes, surrogate), cutout=cutout)
