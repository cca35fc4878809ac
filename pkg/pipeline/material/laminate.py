# file: pipeline/material/laminate.py
"""
Laminate stacking and through-thickness integration.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np

from core.config import (
    BASELINE_MOISTURE_PCT,
    BASELINE_TEMPERATURE_K,
    MOISTURE_PERCENT_TO_FRACTION,
    SHEAR_CORRECTION,
)
from pipeline.errors import GeometryError, InvalidMaterialError
from pipeline.material.lamina import (
    MaterialTable,
    properties_at,
    reduced_stiffness,
    transform_to_laminate_axes,
)

logger = logging.getLogger("hygro_xfem")


@dataclass(frozen=True)
class Ply:
    angle: float        # degrees from the plate x axis
    thickness: float    # m
    material: str


@dataclass(frozen=True)
class LaminateStack:
    """Plies ordered from z = -h/2 upwards."""

    plies: Tuple[Ply, ...]

    def __post_init__(self):
        if not self.plies:
            raise GeometryError("laminate needs at least one ply")
        for ply in self.plies:
            if ply.thickness <= 0.0:
                raise GeometryError(f"ply thickness must be positive, got {ply.thickness}")

    @classmethod
    def from_layup(
        cls,
        angles: Sequence[float],
        h: float,
        material: str,
        thicknesses: Optional[Sequence[float]] = None,
    ) -> "LaminateStack":
        """
        Build a stack from ply angles; equal ply thicknesses unless given.

        Args:
            angles: ply angles in degrees, bottom to top
            h: total thickness (m)
            material: material id shared by every ply
            thicknesses: optional per-ply thicknesses; must sum to h
        """
        if h <= 0.0:
            raise GeometryError(f"plate thickness must be positive, got {h}")
        if not angles:
            raise GeometryError("layup is empty")
        if thicknesses is None:
            thicknesses = [h / len(angles)] * len(angles)
        if len(thicknesses) != len(angles):
            raise GeometryError("one thickness per ply is required")
        if not np.isclose(sum(thicknesses), h, rtol=1e-12, atol=0.0):
            raise GeometryError(f"ply thicknesses sum to {sum(thicknesses)}, expected {h}")
        return cls(tuple(Ply(float(a), float(t), material) for a, t in zip(angles, thicknesses)))

    @property
    def h(self) -> float:
        return float(sum(ply.thickness for ply in self.plies))

    @property
    def interfaces(self) -> np.ndarray:
        """z coordinates of the ply interfaces, -h/2 ... +h/2."""
        z = np.concatenate([[0.0], np.cumsum([ply.thickness for ply in self.plies])])
        return z - 0.5 * self.h

    @property
    def angles(self) -> Tuple[float, ...]:
        return tuple(ply.angle for ply in self.plies)

    @property
    def materials(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(ply.material for ply in self.plies))

    def is_symmetric(self) -> bool:
        n = len(self.plies)
        return all(
            self.plies[k].angle == self.plies[n - 1 - k].angle
            and self.plies[k].material == self.plies[n - 1 - k].material
            and np.isclose(self.plies[k].thickness, self.plies[n - 1 - k].thickness)
            for k in range(n // 2)
        )


def parse_layup(text: str) -> Tuple[float, ...]:
    """'0/90/90/0' -> (0.0, 90.0, 90.0, 0.0); brackets and a trailing 's' are not expanded."""
    cleaned = text.strip().strip("()[]")
    if not cleaned:
        raise ValueError("layup is empty")
    try:
        return tuple(float(part.strip().rstrip("°")) for part in cleaned.split("/"))
    except ValueError as e:
        raise ValueError(f"unparseable layup '{text}': {e}") from e


class ModuliBasis(str, Enum):
    """Which lamina properties the section stiffness is built from."""

    DEGRADED = "degraded"      # table values at (T, C)
    REFERENCE = "reference"    # baseline values; only the expansion strain acts


@dataclass(frozen=True)
class Environment:
    temperature: float = BASELINE_TEMPERATURE_K
    moisture: float = BASELINE_MOISTURE_PCT
    moduli: ModuliBasis = ModuliBasis.DEGRADED

    @property
    def delta_t(self) -> float:
        return self.temperature - BASELINE_TEMPERATURE_K

    @property
    def delta_c(self) -> float:
        """Moisture rise as a fraction."""
        return (self.moisture - BASELINE_MOISTURE_PCT) * MOISTURE_PERCENT_TO_FRACTION

    @property
    def is_baseline(self) -> bool:
        return self.delta_t == 0.0 and self.delta_c == 0.0


@dataclass(frozen=True, eq=False)
class LaminateIntegrals:
    """
    Section stiffness, inertia and hygrothermal resultants of a laminate.

    A, B, D: 3×3 membrane, coupling and bending stiffness
    As: 2×2 transverse shear stiffness (shear-corrected)
    p, I: translational and rotary inertia per unit area
    N_hygro, M_hygro: hygrothermal force and moment resultants
    """

    A: np.ndarray
    B: np.ndarray
    D: np.ndarray
    As: np.ndarray
    p: float
    I: float
    N_hygro: np.ndarray
    M_hygro: np.ndarray

    @property
    def has_hygro_load(self) -> bool:
        return bool(np.any(self.N_hygro != 0.0) or np.any(self.M_hygro != 0.0))


def laminate_integrals(
    stack: LaminateStack,
    environment: Environment,
    tables: Mapping[str, MaterialTable],
    shear_correction: float = SHEAR_CORRECTION,
) -> LaminateIntegrals:
    """
    Integrate ply stiffness, density and expansion through the thickness.

    Args:
        stack: laminate stack
        environment: uniform (T, C) of the plate and the moduli basis
        tables: material id -> MaterialTable
        shear_correction: factor applied to the transverse shear stiffness

    Returns:
        LaminateIntegrals

    Raises:
        MaterialRangeError: environment outside a ply's table
        InvalidMaterialError: unknown material id
    """
    A = np.zeros((3, 3))
    B = np.zeros((3, 3))
    D = np.zeros((3, 3))
    As = np.zeros((2, 2))
    N_hygro = np.zeros(3)
    M_hygro = np.zeros(3)
    p = 0.0
    I = 0.0

    z = stack.interfaces
    for k, ply in enumerate(stack.plies):
        table = tables.get(ply.material)
        if table is None:
            raise InvalidMaterialError(f"no material table for '{ply.material}'")

        if environment.moduli is ModuliBasis.REFERENCE:
            properties_at(table, environment.temperature, environment.moisture)
            props = properties_at(table, *table.baseline)
        else:
            props = properties_at(table, environment.temperature, environment.moisture)
        ply_stiffness = transform_to_laminate_axes(reduced_stiffness(props), props, ply.angle)
        free_strain = (
            ply_stiffness.alpha_xy * environment.delta_t
            + ply_stiffness.beta_xy * environment.delta_c
        )

        z0, z1 = z[k], z[k + 1]
        dz1 = z1 - z0
        dz2 = 0.5 * (z1 ** 2 - z0 ** 2)
        dz3 = (z1 ** 3 - z0 ** 3) / 3.0

        Qbar = ply_stiffness.Qbar
        A += Qbar * dz1
        B += Qbar * dz2
        D += Qbar * dz3
        As += shear_correction * ply_stiffness.Qsbar * dz1

        stress_free = Qbar @ free_strain
        N_hygro += stress_free * dz1
        M_hygro += stress_free * dz2

        p += props.rho * dz1
        I += props.rho * dz3

    logger.debug(
        f"Laminate integrals: {len(stack.plies)} plies, h={stack.h:.4g}, "
        f"ΔT={environment.delta_t:g}, ΔC={environment.delta_c:g}, moduli={environment.moduli.value}"
    )
    return LaminateIntegrals(A=A, B=B, D=D, As=As, p=p, I=I, N_hygro=N_hygro, M_hygro=M_hygro)
