# file: pipeline/solver/assembly.py
"""
Sparse assembly of K, M, f_T and geometric stiffness, and recovery of
in-plane stress resultants at the quadrature points.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix

from pipeline.elements.enrichment import enrich_operators
from pipeline.elements.quad4 import (
    ElementOperators,
    element_geometric_stiffness,
    element_hygrothermal_load,
    element_mass,
    element_operators,
    element_resultants,
    element_stiffness,
)
from pipeline.geometry.subcells import ElementKind
from pipeline.material.laminate import LaminateIntegrals
from pipeline.solver.model import EnrichedModel

logger = logging.getLogger("hygro_xfem")

# uniform (3,) state or per-element (p, 3) arrays at the stiffness points
ResultantField = Union[np.ndarray, Dict[int, np.ndarray]]


@dataclass(eq=False)
class GlobalSystem:
    K: csr_matrix
    M: csr_matrix
    f_T: np.ndarray
    K_R: Optional[csr_matrix] = None
    K_G: Optional[csr_matrix] = None

    @property
    def n_dofs(self) -> int:
        return self.K.shape[0]


class OperatorCache:
    """
    Element operators per quadrature rule. Uncut elements of a structured
    mesh share their geometry, so they share operators.
    """

    def __init__(self, model: EnrichedModel):
        self.model = model
        self._shared: Dict[Tuple, ElementOperators] = {}

    def shared_key(self, e: int, rule_name: str) -> Optional[Tuple]:
        if self.model.classification.kinds[e] == ElementKind.SPLIT:
            return None
        if self.model.dofs.has_active_enrichment(e):
            return None
        coords = self.model.mesh.element_coords(e)
        return (rule_name,) + tuple(np.round(coords - coords[0], 12).ravel())

    def get(self, e: int, rule_name: str = "stiffness") -> ElementOperators:
        key = self.shared_key(e, rule_name)
        if key is not None and key in self._shared:
            return self._shared[key]

        rule = getattr(self.model.plan[e], rule_name)
        ops = element_operators(self.model.mesh.element_coords(e), rule.points, rule.weights, rule.indicator)
        if self.model.dofs.has_active_enrichment(e):
            ops = enrich_operators(ops, rule.indicator)

        if key is not None:
            self._shared[key] = ops
        return ops


class _Triplets:
    def __init__(self):
        self.rows: List[np.ndarray] = []
        self.cols: List[np.ndarray] = []
        self.vals: List[np.ndarray] = []

    def add(self, ids: np.ndarray, matrix: np.ndarray) -> None:
        keep = np.flatnonzero(ids >= 0)
        g = ids[keep]
        block = matrix[np.ix_(keep, keep)]
        self.rows.append(np.repeat(g, g.size))
        self.cols.append(np.tile(g, g.size))
        self.vals.append(block.ravel())

    def to_csr(self, n: int) -> csr_matrix:
        if not self.vals:
            return csr_matrix((n, n))
        matrix = coo_matrix(
            (np.concatenate(self.vals), (np.concatenate(self.rows), np.concatenate(self.cols))),
            shape=(n, n),
        ).tocsr()
        matrix.sum_duplicates()
        return matrix


def element_system(
    model: EnrichedModel, integrals: LaminateIntegrals, e: int, cache: Optional[OperatorCache] = None
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(global ids, Ke, Me, fTe) of one element."""
    cache = cache or OperatorCache(model)
    ops = cache.get(e, "stiffness")
    mass_ops = cache.get(e, "mass")
    Ke = element_stiffness(integrals, ops)
    Me = element_mass(integrals.p, integrals.I, mass_ops)
    fe = element_hygrothermal_load(integrals.N_hygro, integrals.M_hygro, ops)
    return model.dofs.element_dofs(e), Ke, Me, fe


def assemble(model: EnrichedModel, integrals: LaminateIntegrals) -> GlobalSystem:
    """
    Scatter-add element stiffness, mass and hygrothermal load.

    Args:
        model: enriched model
        integrals: laminate section properties at the case environment

    Returns:
        GlobalSystem over the active dofs
    """
    n = model.dofs.n_active
    cache = OperatorCache(model)
    stiffness, mass = _Triplets(), _Triplets()
    f_T = np.zeros(n)

    shared: Dict[Tuple, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
    for e in range(model.mesh.n_elements):
        if model.plan[e].is_empty:
            continue
        key = cache.shared_key(e, "element")
        if key is not None and key in shared:
            Ke, Me, fe = shared[key]
            ids = model.dofs.element_dofs(e)
        else:
            ids, Ke, Me, fe = element_system(model, integrals, e, cache)
            if key is not None:
                shared[key] = (Ke, Me, fe)

        stiffness.add(ids, Ke)
        mass.add(ids, Me)
        keep = ids >= 0
        np.add.at(f_T, ids[keep], fe[keep])

    system = GlobalSystem(K=stiffness.to_csr(n), M=mass.to_csr(n), f_T=f_T)
    logger.debug(f"Assembled K, M: {n} dofs, nnz(K)={system.K.nnz}")
    return system


def assemble_geometric(model: EnrichedModel, resultants: ResultantField) -> csr_matrix:
    """
    Global ∫ ∇w0ᵀ [N] ∇w0 dΩ for a uniform or per-point resultant field.
    """
    n = model.dofs.n_active
    cache = OperatorCache(model)
    triplets = _Triplets()
    uniform = not isinstance(resultants, dict)

    shared: Dict[Tuple, np.ndarray] = {}
    for e in range(model.mesh.n_elements):
        if model.plan[e].is_empty:
            continue
        ids = model.dofs.element_dofs(e)
        key = cache.shared_key(e, "geometric") if uniform else None
        if key is not None and key in shared:
            KGe = shared[key]
        else:
            field = resultants if uniform else resultants[e]
            KGe = element_geometric_stiffness(field, cache.get(e, "stiffness"))
            if key is not None:
                shared[key] = KGe
        triplets.add(ids, KGe)
    return triplets.to_csr(n)


def recover_resultants(
    model: EnrichedModel,
    integrals: LaminateIntegrals,
    delta: np.ndarray,
    hygro: bool = True,
) -> Dict[int, np.ndarray]:
    """
    N = A εp + B εb − N_hygro at every material quadrature point.

    Args:
        delta: (n_active,) displacement vector
        hygro: subtract the hygrothermal resultants (False for a purely
            mechanical load state)

    Returns:
        element id -> (p, 3) array of (Nxx, Nyy, Nxy)
    """
    cache = OperatorCache(model)
    delta = np.asarray(delta, dtype=float)
    field: Dict[int, np.ndarray] = {}
    for e in range(model.mesh.n_elements):
        if model.plan[e].is_empty:
            continue
        ids = model.dofs.element_dofs(e)
        de = np.zeros(ids.size)
        keep = ids >= 0
        de[keep] = delta[ids[keep]]
        field[e] = element_resultants(integrals, cache.get(e, "stiffness"), de, hygro=hygro)
    return field
