# file: pipeline/material/lamina.py
"""
Single-ply constitutive data: environment-dependent property lookup,
plane-stress reduced stiffness and rotation into laminate axes.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Sequence, Tuple

import numpy as np

from core.config import BASELINE_MOISTURE_PCT, BASELINE_TEMPERATURE_K
from pipeline.errors import InvalidMaterialError, MaterialRangeError

logger = logging.getLogger("hygro_xfem")

# (environment value, E1, E2, G12), moduli in Pa
TableRow = Tuple[float, float, float, float]


@dataclass(frozen=True)
class LaminaProperties:
    """Elastic, expansion and inertia constants of one ply at a fixed environment."""

    E1: float
    E2: float
    G12: float
    G13: float
    G23: float
    nu12: float
    alpha1: float
    alpha2: float
    beta1m: float
    beta2m: float
    rho: float

    def __post_init__(self):
        for name in ("E1", "E2", "G12", "G13", "G23", "rho"):
            if not getattr(self, name) > 0.0:
                raise InvalidMaterialError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0.0 <= self.nu12 < 0.5:
            raise InvalidMaterialError(f"nu12 must lie in [0, 0.5), got {self.nu12}")
        if self.nu21 >= 0.5:
            raise InvalidMaterialError(f"nu21 = nu12*E2/E1 = {self.nu21:.4g} must be below 0.5")
        if 1.0 - self.nu12 * self.nu21 <= 0.0:
            raise InvalidMaterialError(f"1 - nu12*nu21 = {1.0 - self.nu12 * self.nu21:.4g} is not positive")

    @property
    def nu21(self) -> float:
        return self.nu12 * self.E2 / self.E1


@dataclass(frozen=True)
class MaterialTable:
    """
    Environment table of one ply material.

    Moisture rows are keyed by C in percent, temperature rows by T in kelvin.
    The first row of each table is the baseline state and both must agree.
    G13 and G23 follow G12 through fixed ratios.
    """

    moisture_rows: Tuple[TableRow, ...]
    temperature_rows: Tuple[TableRow, ...]
    nu12: float
    alpha1: float
    alpha2: float
    beta1m: float
    beta2m: float
    rho: float = 1.0
    g13_ratio: float = 1.0
    g23_ratio: float = 0.5
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        for label, rows in (("moisture", self.moisture_rows), ("temperature", self.temperature_rows)):
            if not rows:
                raise InvalidMaterialError(f"{label} table is empty")
            keys = [row[0] for row in rows]
            if any(b <= a for a, b in zip(keys, keys[1:])):
                raise InvalidMaterialError(f"{label} rows must be strictly increasing, got {keys}")
            for row in rows:
                if min(row[1:]) <= 0.0:
                    raise InvalidMaterialError(f"{label} row {row} has a non-positive modulus")

        base_c = self.moisture_rows[0]
        base_t = self.temperature_rows[0]
        if not np.allclose(base_c[1:], base_t[1:], rtol=1e-12, atol=0.0):
            raise InvalidMaterialError(
                f"baseline rows disagree: moisture {base_c[1:]} vs temperature {base_t[1:]}"
            )
        if self.g13_ratio <= 0.0 or self.g23_ratio <= 0.0:
            raise InvalidMaterialError("shear modulus ratios must be positive")

    @classmethod
    def isotropic(cls, E: float, nu: float, rho: float = 1.0, name: str = "isotropic") -> "MaterialTable":
        """Single-row table of an isotropic material without expansion."""
        G = E / (2.0 * (1.0 + nu))
        return cls(
            moisture_rows=((BASELINE_MOISTURE_PCT, E, E, G),),
            temperature_rows=((BASELINE_TEMPERATURE_K, E, E, G),),
            nu12=nu,
            alpha1=0.0,
            alpha2=0.0,
            beta1m=0.0,
            beta2m=0.0,
            rho=rho,
            g13_ratio=1.0,
            g23_ratio=1.0,
            name=name,
        )

    @property
    def temperature_range(self) -> Tuple[float, float]:
        return self.temperature_rows[0][0], self.temperature_rows[-1][0]

    @property
    def moisture_range(self) -> Tuple[float, float]:
        return self.moisture_rows[0][0], self.moisture_rows[-1][0]

    @property
    def baseline(self) -> Tuple[float, float]:
        """(T, C) of the undegraded state."""
        return self.temperature_rows[0][0], self.moisture_rows[0][0]

    def with_density(self, rho: float) -> "MaterialTable":
        return replace(self, rho=rho)


@dataclass(frozen=True, eq=False)
class PlaneStressStiffness:
    Q: np.ndarray
    Qs: np.ndarray


@dataclass(frozen=True, eq=False)
class TransformedStiffness:
    """Ply stiffness and expansion vectors referred to the laminate axes."""

    Qbar: np.ndarray
    Qsbar: np.ndarray
    alpha_xy: np.ndarray
    beta_xy: np.ndarray


def _column_at(rows: Sequence[TableRow], value: float) -> np.ndarray:
    table = np.asarray(rows, dtype=float)
    if table.shape[0] == 1:
        return table[0, 1:].copy()
    return np.array([np.interp(value, table[:, 0], table[:, j]) for j in range(1, 4)])


def properties_at(table: MaterialTable, temperature: float, moisture: float) -> LaminaProperties:
    """
    Lamina properties at (T, C).

    Each table is interpolated piecewise-linearly; temperature and moisture
    degradations are added to the baseline moduli independently.

    Args:
        table: material table
        temperature: T in kelvin
        moisture: C in percent

    Returns:
        LaminaProperties with moduli in Pa

    Raises:
        MaterialRangeError: if T or C lies outside the tabulated range
    """
    t_lo, t_hi = table.temperature_range
    c_lo, c_hi = table.moisture_range
    if not t_lo <= temperature <= t_hi:
        raise MaterialRangeError(f"T = {temperature} K outside tabulated range [{t_lo}, {t_hi}]")
    if not c_lo <= moisture <= c_hi:
        raise MaterialRangeError(f"C = {moisture} % outside tabulated range [{c_lo}, {c_hi}]")

    baseline = np.asarray(table.temperature_rows[0][1:], dtype=float)
    by_temperature = _column_at(table.temperature_rows, temperature)
    by_moisture = _column_at(table.moisture_rows, moisture)
    E1, E2, G12 = baseline + (by_temperature - baseline) + (by_moisture - baseline)

    return LaminaProperties(
        E1=float(E1),
        E2=float(E2),
        G12=float(G12),
        G13=float(table.g13_ratio * G12),
        G23=float(table.g23_ratio * G12),
        nu12=table.nu12,
        alpha1=table.alpha1,
        alpha2=table.alpha2,
        beta1m=table.beta1m,
        beta2m=table.beta2m,
        rho=table.rho,
    )


def reduced_stiffness(p: LaminaProperties) -> PlaneStressStiffness:
    """Plane-stress Q in fibre axes; Qs carries no shear correction."""
    denom = 1.0 - p.nu12 * p.nu21
    if denom <= 0.0:
        raise InvalidMaterialError(f"1 - nu12*nu21 = {denom:.4g} is not positive")

    Q11 = p.E1 / denom
    Q22 = p.E2 / denom
    Q12 = p.nu12 * Q22
    Q = np.array([
        [Q11, Q12, 0.0],
        [Q12, Q22, 0.0],
        [0.0, 0.0, p.G12],
    ])
    Qs = np.diag([p.G13, p.G23])
    return PlaneStressStiffness(Q=Q, Qs=Qs)


def strain_rotation(theta_deg: float) -> np.ndarray:
    """Maps plate-axis engineering strains to fibre-axis strains for a ply at θ."""
    t = np.radians(theta_deg)
    c, s = np.cos(t), np.sin(t)
    return np.array([
        [c * c, s * s, c * s],
        [s * s, c * c, -c * s],
        [-2.0 * c * s, 2.0 * c * s, c * c - s * s],
    ])


def transform_to_laminate_axes(
    q: PlaneStressStiffness, p: LaminaProperties, theta: float
) -> TransformedStiffness:
    t = np.radians(theta)
    c, s = np.cos(t), np.sin(t)

    T = strain_rotation(theta)
    Qbar = T.T @ q.Q @ T

    R = np.array([[c, s], [-s, c]])
    Qsbar = R.T @ q.Qs @ R

    # fibre-axis strains back to plate axes
    T_inv = strain_rotation(-theta)
    alpha_xy = T_inv @ np.array([p.alpha1, p.alpha2, 0.0])
    beta_xy = T_inv @ np.array([p.beta1m, p.beta2m, 0.0])

    return TransformedStiffness(
        Qbar=0.5 * (Qbar + Qbar.T),
        Qsbar=0.5 * (Qsbar + Qsbar.T),
        alpha_xy=alpha_xy,
        beta_xy=beta_xy,
    )
