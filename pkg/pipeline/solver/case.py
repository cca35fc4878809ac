# file: pipeline/solver/case.py
"""
AnalysisCase: one fully specified plate analysis.
"""

from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.materials import get_material_table
from core.config import DEFAULT_EIGENCOUNT, DEFAULT_MATERIAL
from pipeline.geometry.levelset import CutoutSpec
from pipeline.material.lamina import MaterialTable, properties_at
from pipeline.material.laminate import Environment, LaminateStack, ModuliBasis
from pipeline.solver.boundary import BoundaryCondition


class SolveMode(str, Enum):
    STATIC = "static"
    VIBRATION = "vibration"
    BUCKLING = "buckling"


class LoadPattern(str, Enum):
    """Unit compressive reference load for buckling."""

    UNIAXIAL_X = "uniaxial_x"
    UNIAXIAL_Y = "uniaxial_y"
    BIAXIAL = "biaxial"

    @property
    def uniform_resultants(self) -> Tuple[float, float, float]:
        """(Nxx, Nyy, Nxy) of the load on a plate without a cutout."""
        return {
            LoadPattern.UNIAXIAL_X: (-1.0, 0.0, 0.0),
            LoadPattern.UNIAXIAL_Y: (0.0, -1.0, 0.0),
            LoadPattern.BIAXIAL: (-1.0, -1.0, 0.0),
        }[self]


class AnalysisCase(BaseModel):
    model_config = ConfigDict(frozen=True, use_enum_values=False)

    case_id: str = "case"
    a: float = Field(gt=0)
    b: float = Field(gt=0)
    h: float = Field(gt=0)
    layup: Tuple[float, ...] = Field(min_length=1)
    ply_thicknesses: Optional[Tuple[float, ...]] = None
    material: str = DEFAULT_MATERIAL
    material_file: Optional[str] = None
    cutout: CutoutSpec = CutoutSpec()
    nx: int = Field(default=30, ge=1)
    ny: int = Field(default=30, ge=1)
    temperature: float = 300.0
    moisture: float = 0.0
    moduli: ModuliBasis = ModuliBasis.DEGRADED
    bc: BoundaryCondition = BoundaryCondition.SSSS
    mode: SolveMode = SolveMode.VIBRATION
    eigencount: int = Field(default=DEFAULT_EIGENCOUNT, ge=1)
    load: LoadPattern = LoadPattern.UNIAXIAL_X
    rho: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _check_case(self) -> "AnalysisCase":
        table = self.material_table()
        # raises MaterialRangeError (a ValueError) outside the table
        properties_at(table, self.temperature, self.moisture)
        self.cutout.check_inside(self.a, self.b)
        self.stack()
        return self

    def material_table(self) -> MaterialTable:
        table = get_material_table(self.material, self.material_file)
        if self.rho is not None:
            table = table.with_density(self.rho)
        return table

    def tables(self):
        return {self.material: self.material_table()}

    def stack(self) -> LaminateStack:
        return LaminateStack.from_layup(self.layup, self.h, self.material, self.ply_thicknesses)

    def environment(self) -> Environment:
        return Environment(temperature=self.temperature, moisture=self.moisture, moduli=self.moduli)

    def reference_case(self) -> "AnalysisCase":
        """Same plate, no cutout, baseline environment, buckling: the Λ⁺ normalizer."""
        base_t, base_c = self.material_table().baseline
        return self.model_copy(update={
            "case_id": "reference",
            "cutout": CutoutSpec(),
            "temperature": base_t,
            "moisture": base_c,
            "moduli": ModuliBasis.DEGRADED,
            "mode": SolveMode.BUCKLING,
            "eigencount": 1,
        })

    def is_reference(self) -> bool:
        base_t, base_c = self.material_table().baseline
        return self.cutout.is_none and self.temperature == base_t and self.moisture == base_c
