# file: pipeline/solver/model.py
"""
EnrichedModel: mesh, level set, classification, subcells, quadrature plan
and dof map of one plate geometry.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List

from pipeline.geometry.levelset import CutoutSpec, LevelSetField, cutout_level_set
from pipeline.geometry.mesh import StructuredMesh, build_mesh
from pipeline.geometry.quadrature import QuadraturePlan, material_area, quadrature_plan
from pipeline.geometry.subcells import ElementClassification, SubTriangle, classify_elements, triangulate
from pipeline.solver.dofs import GlobalDofMap, build_dof_map

logger = logging.getLogger("hygro_xfem")


@dataclass(frozen=True, eq=False)
class EnrichedModel:
    mesh: StructuredMesh
    level_set: LevelSetField
    classification: ElementClassification
    triangulation: Dict[int, List[SubTriangle]]
    plan: QuadraturePlan
    dofs: GlobalDofMap

    @property
    def cutout(self) -> CutoutSpec:
        return self.level_set.cutout

    def material_area(self) -> float:
        return material_area(self.mesh, self.plan)

    def summary(self) -> Dict[str, int]:
        summary = dict(self.classification.counts())
        summary["active_dofs"] = self.dofs.n_active
        summary["enriched_dofs"] = self.dofs.n_enriched_dofs
        return summary


def build_model(
    a: float,
    b: float,
    nx: int,
    ny: int,
    cutout: CutoutSpec,
    triangle_points: int = 3,
) -> EnrichedModel:
    mesh = build_mesh(a, b, nx, ny)
    level_set = cutout_level_set(mesh, cutout)
    classification = classify_elements(mesh, level_set)
    triangulation = triangulate(mesh, classification)
    plan = quadrature_plan(classification, triangulation, triangle_points=triangle_points)
    dofs = build_dof_map(mesh, classification, plan)

    model = EnrichedModel(
        mesh=mesh,
        level_set=level_set,
        classification=classification,
        triangulation=triangulation,
        plan=plan,
        dofs=dofs,
    )
    logger.info(f"Model {nx}×{ny}, cutout={cutout.kind.value}: {model.summary()}")
    return model
