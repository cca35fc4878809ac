from itertools import product
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from core.config import DEFAULT_EIGENCOUNT, DEFAULT_LAYUP, DEFAULT_MATERIAL, DEFAULT_MESH
from pipeline.errors import PlateAnalysisError
from pipeline.geometry.levelset import CutoutKind, CutoutSpec
from pipeline.material.laminate import ModuliBasis, parse_layup
from pipeline.solver.boundary import BoundaryCondition
from pipeline.solver.case import AnalysisCase, LoadPattern, SolveMode

# keys whose value is a single string and must not be swept
UNSWEPT_KEYS = {"material", "material_file"}


class RunConfig(BaseModel):
    """
    One run configuration. Scalar fields hold a single analysis point; keys
    listed in `sweep` vary over the given values (the scalar field then
    holds the first of them).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = Field(default=1.0, gt=0)
    b: Optional[float] = Field(default=None, gt=0)
    a_over_b: Optional[float] = Field(default=None, gt=0)
    h: Optional[float] = Field(default=None, gt=0)
    a_over_h: Optional[float] = Field(default=None, gt=0)
    nx: int = Field(default=DEFAULT_MESH[0], ge=1)
    ny: int = Field(default=DEFAULT_MESH[1], ge=1)
    layup: Tuple[float, ...] = parse_layup(DEFAULT_LAYUP)
    material: str = DEFAULT_MATERIAL
    material_file: Optional[str] = None
    cutout: Optional[CutoutKind] = None
    r_over_a: float = Field(default=0.0, ge=0)
    d_over_a: float = Field(default=0.0, ge=0)
    d_over_e: float = Field(default=1.0, gt=0)
    psi: float = 0.0
    xc_over_a: float = 0.5
    yc_over_b: float = 0.5
    T: float = 300.0
    C: float = 0.0
    moduli: ModuliBasis = ModuliBasis.DEGRADED
    bc: BoundaryCondition = BoundaryCondition.SSSS
    mode: SolveMode = SolveMode.VIBRATION
    eigencount: int = Field(default=DEFAULT_EIGENCOUNT, ge=1)
    load: LoadPattern = LoadPattern.UNIAXIAL_X
    rho: Optional[float] = Field(default=None, gt=0)

    case_id: str = "case"
    sweep: Dict[str, Tuple[Any, ...]] = Field(default_factory=dict)

    @field_validator("layup", mode="before")
    @classmethod
    def _parse_layup(cls, value):
        if isinstance(value, str):
            return parse_layup(value)
        if isinstance(value, (int, float)):
            return (float(value),)
        return value

    @field_validator("bc", mode="before")
    @classmethod
    def _upper_bc(cls, value):
        return value.upper() if isinstance(value, str) else value

    @field_validator("mode", "load", "cutout", "moduli", mode="before")
    @classmethod
    def _lower_words(cls, value):
        return value.lower() if isinstance(value, str) else value

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunConfig":
        if self.b is not None and self.a_over_b is not None:
            raise ValueError("give either b or a_over_b, not both")
        if (self.h is None) == (self.a_over_h is None):
            raise ValueError("give exactly one of h or a_over_h")
        for key, values in self.sweep.items():
            if key not in type(self).model_fields or key in ("sweep", "case_id"):
                raise ValueError(f"'{key}' cannot be swept")
            if key in UNSWEPT_KEYS:
                raise ValueError(f"'{key}' cannot be swept")
            if not values:
                raise ValueError(f"empty sweep range for '{key}'")
        return self

    # ── geometry ──────────────────────────────────────────────────────────

    @property
    def plate_b(self) -> float:
        if self.b is not None:
            return self.b
        if self.a_over_b is not None:
            return self.a / self.a_over_b
        return self.a

    @property
    def plate_h(self) -> float:
        return self.h if self.h is not None else self.a / self.a_over_h

    def cutout_spec(self) -> CutoutSpec:
        kind = self.cutout
        if kind is None:
            if self.r_over_a > 0.0:
                kind = CutoutKind.CIRCLE
            elif self.d_over_a > 0.0:
                kind = CutoutKind.ELLIPSE
            else:
                kind = CutoutKind.NONE
        center = (self.xc_over_a * self.a, self.yc_over_b * self.plate_b)
        if kind is CutoutKind.CIRCLE and self.r_over_a > 0.0:
            return CutoutSpec.circle(center, self.r_over_a * self.a)
        if kind is CutoutKind.ELLIPSE and self.d_over_a > 0.0:
            d = self.d_over_a * self.a
            return CutoutSpec.ellipse(center, d, d / self.d_over_e, self.psi)
        # r/a = 0 (or d/a = 0) means a plate without cutout
        return CutoutSpec.none()

    def to_case(self) -> AnalysisCase:
        """
        The single analysis point this config describes.

        Raises:
            PlateAnalysisError: the geometry or material error behind a
                rejected case
        """
        try:
            return self._build_case()
        except ValidationError as e:
            for error in e.errors():
                cause = (error.get("ctx") or {}).get("error")
                if isinstance(cause, PlateAnalysisError):
                    raise cause from e
            raise

    def _build_case(self) -> AnalysisCase:
        return AnalysisCase(
            case_id=self.case_id,
            a=self.a,
            b=self.plate_b,
            h=self.plate_h,
            layup=self.layup,
            material=self.material,
            material_file=self.material_file,
            cutout=self.cutout_spec(),
            nx=self.nx,
            ny=self.ny,
            temperature=self.T,
            moisture=self.C,
            moduli=self.moduli,
            bc=self.bc,
            mode=self.mode,
            eigencount=self.eigencount,
            load=self.load,
            rho=self.rho,
        )

    # ── sweeps ────────────────────────────────────────────────────────────

    @property
    def is_sweep(self) -> bool:
        return bool(self.sweep)

    def point(self, overrides: Dict[str, Any], case_id: str) -> "RunConfig":
        data = self.model_dump(exclude={"sweep"})
        data.update(overrides)
        data["case_id"] = case_id
        return RunConfig.model_validate(data)

    def plan(self, prefix: str = "case") -> "SweepPlan":
        return SweepPlan.from_config(self, prefix)


class SweepPlan(BaseModel):
    """Cartesian product of the swept keys, in order of their first appearance."""

    model_config = ConfigDict(frozen=True)

    base: RunConfig
    keys: Tuple[str, ...]
    combinations: Tuple[Tuple[Any, ...], ...]
    prefix: str = "case"

    @classmethod
    def from_config(cls, config: RunConfig, prefix: str = "case") -> "SweepPlan":
        keys = tuple(config.sweep.keys())
        combinations = tuple(product(*(config.sweep[k] for k in keys))) if keys else ((),)
        return cls(base=config, keys=keys, combinations=combinations, prefix=prefix)

    def __len__(self) -> int:
        return len(self.combinations)

    def case_ids(self) -> List[str]:
        width = max(4, len(str(len(self))))
        return [f"{self.prefix}_{i + 1:0{width}d}" for i in range(len(self))]

    def points(self) -> List[RunConfig]:
        return [
            self.base.point(dict(zip(self.keys, combo)), case_id)
            for combo, case_id in zip(self.combinations, self.case_ids())
        ]
