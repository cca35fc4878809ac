# file: pipeline/solver/boundary.py
"""
Edge constraints applied by elimination.

SSSS: u0 = w0 = βy = 0 on x = 0, a and v0 = w0 = βx = 0 on y = 0, b.
CCCC: all five dofs fixed on every edge.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from pipeline.elements.quad4 import BX, BY, U, V, W
from pipeline.solver.assembly import GlobalSystem
from pipeline.solver.model import EnrichedModel


class BoundaryCondition(str, Enum):
    SSSS = "SSSS"
    CCCC = "CCCC"


# fields fixed on the edges normal to x ("x0", "xa") and to y ("y0", "yb")
EDGE_FIELDS: Dict[BoundaryCondition, Dict[str, Tuple[int, ...]]] = {
    BoundaryCondition.SSSS: {"x": (U, W, BY), "y": (V, W, BX)},
    BoundaryCondition.CCCC: {"x": (U, V, W, BX, BY), "y": (U, V, W, BX, BY)},
}
TRANSVERSE_FIELDS = (W, BX, BY)


def _edge_fields(bc: BoundaryCondition, transverse_only: bool) -> Dict[str, Tuple[int, ...]]:
    fields = EDGE_FIELDS[BoundaryCondition(bc)]
    if not transverse_only:
        return fields
    return {axis: tuple(f for f in fs if f in TRANSVERSE_FIELDS) for axis, fs in fields.items()}


def constrained_dofs(model: EnrichedModel, bc: BoundaryCondition, transverse_only: bool = False) -> np.ndarray:
    """
    Active ids fixed by `bc`, standard and enriched dofs of edge nodes alike.

    Args:
        transverse_only: keep only the w0, βx, βy constraints
    """
    mesh, dofs = model.mesh, model.dofs
    fields = _edge_fields(bc, transverse_only)
    fixed = [
        dofs.node_dofs(mesh.boundary_nodes("x0"), fields["x"]),
        dofs.node_dofs(mesh.boundary_nodes("xa"), fields["x"]),
        dofs.node_dofs(mesh.boundary_nodes("y0"), fields["y"]),
        dofs.node_dofs(mesh.boundary_nodes("yb"), fields["y"]),
    ]
    return np.unique(np.concatenate(fixed))


@dataclass(eq=False)
class ConstrainedSystem:
    """Matrices restricted to the free dofs; `free` lists their active ids."""

    free: np.ndarray
    n_active: int
    K: csr_matrix
    M: Optional[csr_matrix] = None
    f_T: Optional[np.ndarray] = None
    extra: Dict[str, csr_matrix] = field(default_factory=dict)

    @property
    def n_free(self) -> int:
        return int(self.free.size)

    def restrict(self, matrix: csr_matrix) -> csr_matrix:
        return matrix[self.free][:, self.free].tocsr()

    def restrict_vector(self, vector: np.ndarray) -> np.ndarray:
        return np.asarray(vector)[self.free]

    def expand(self, x: np.ndarray) -> np.ndarray:
        """Free-dof vector(s) back onto all active dofs, zeros at fixed ones."""
        x = np.asarray(x)
        full = np.zeros((self.n_active,) + x.shape[1:], dtype=x.dtype)
        full[self.free] = x
        return full


def eliminate(n_active: int, fixed: Iterable[int]) -> np.ndarray:
    """Free ids after removing `fixed` from 0..n_active-1."""
    keep = np.ones(n_active, dtype=bool)
    keep[np.asarray(list(fixed), dtype=int)] = False
    return np.flatnonzero(keep)


def apply_boundary_conditions(
    system: GlobalSystem, model: EnrichedModel, bc: BoundaryCondition
) -> ConstrainedSystem:
    """
    Delete constrained rows and columns of K, M and f_T.

    Args:
        system: assembled global system
        model: model providing the edge nodes and dof map
        bc: SSSS or CCCC
    """
    free = eliminate(system.n_dofs, constrained_dofs(model, bc))
    constrained = ConstrainedSystem(free=free, n_active=system.n_dofs, K=csr_matrix((0, 0)))
    constrained.K = constrained.restrict(system.K)
    constrained.M = constrained.restrict(system.M)
    constrained.f_T = constrained.restrict_vector(system.f_T)
    return constrained
