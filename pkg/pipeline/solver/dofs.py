# file: pipeline/solver/dofs.py
"""
Global numbering of standard and Heaviside-enriched dofs.

Every node of a Split element is in the enrichment set. A void-side node
(φ < 0) carries its five dofs as enriched dofs and loses its standard ones;
a material-side node keeps its standard dofs, its enriched dofs coinciding
with them. Nodes whose whole support is void are eliminated.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from pipeline.elements.quad4 import DOFS_PER_NODE
from pipeline.geometry.mesh import StructuredMesh
from pipeline.geometry.quadrature import QuadraturePlan
from pipeline.geometry.subcells import ElementClassification, ElementKind

logger = logging.getLogger("hygro_xfem")


@dataclass(frozen=True, eq=False)
class GlobalDofMap:
    standard: np.ndarray           # (n_nodes, 5) active id or -1
    enriched: np.ndarray           # (n_nodes, 5) active id or -1
    eliminated_nodes: np.ndarray   # (n_nodes,) bool
    n_active: int
    mesh: StructuredMesh

    @property
    def n_enriched_dofs(self) -> int:
        return int(np.count_nonzero(self.enriched >= 0))

    def has_active_enrichment(self, e: int) -> bool:
        return bool(np.any(self.enriched[self.mesh.elements[e]] >= 0))

    def element_dofs(self, e: int) -> np.ndarray:
        """Global ids of the element's local dofs (20, or 40 with enrichment); -1 marks eliminated."""
        conn = self.mesh.elements[e]
        ids = self.standard[conn].ravel()
        if self.has_active_enrichment(e):
            ids = np.concatenate([ids, self.enriched[conn].ravel()])
        return ids

    def node_dofs(self, nodes: np.ndarray, fields) -> np.ndarray:
        """Active ids (standard and enriched) of the given fields at the given nodes."""
        nodes = np.asarray(nodes, dtype=int)
        fields = list(fields)
        ids = np.concatenate([
            self.standard[np.ix_(nodes, fields)].ravel(),
            self.enriched[np.ix_(nodes, fields)].ravel(),
        ])
        return np.unique(ids[ids >= 0])


def build_dof_map(
    mesh: StructuredMesh,
    classification: ElementClassification,
    plan: Optional[QuadraturePlan] = None,
) -> GlobalDofMap:
    """
    Mark enriched and eliminated nodes and number the active dofs node by node.

    Without a plan, a node is eliminated when all its incident elements are
    Void; with one, when none of them carries a quadrature point.
    """
    if plan is None:
        supported = classification.kinds != ElementKind.VOID
    else:
        supported = np.array([not q.is_empty for q in plan.elements])

    node_support = np.zeros(mesh.n_nodes, dtype=bool)
    node_support[mesh.elements[supported].ravel()] = True
    eliminated = ~node_support

    enriched_nodes = classification.enriched_nodes
    void_side = classification.phi < 0.0

    has_standard = ~eliminated & ~(enriched_nodes & void_side)
    has_enriched = ~eliminated & enriched_nodes & void_side

    # node-major: 5 standard slots then 5 enriched slots per node
    mask = np.concatenate([
        np.repeat(has_standard[:, None], DOFS_PER_NODE, axis=1),
        np.repeat(has_enriched[:, None], DOFS_PER_NODE, axis=1),
    ], axis=1)
    ids = np.full(mask.shape, -1, dtype=int)
    ids[mask] = np.arange(int(mask.sum()))

    dof_map = GlobalDofMap(
        standard=ids[:, :DOFS_PER_NODE],
        enriched=ids[:, DOFS_PER_NODE:],
        eliminated_nodes=eliminated,
        n_active=int(mask.sum()),
        mesh=mesh,
    )
    logger.debug(
        f"Dof map: {dof_map.n_active} active, {dof_map.n_enriched_dofs} enriched, "
        f"{int(eliminated.sum())} nodes eliminated"
    )
    return dof_map
