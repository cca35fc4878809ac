# file: pipeline/solver/analysis.py
"""
Static, vibration and buckling solves of an AnalysisCase.

    M δ̈ + [K + K_R + K_G] δ = f_T

K_R comes from the hygrothermal pre-stress (static solve K δ = f_T), K_G
from a unit compressive in-plane load.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import scipy.linalg as la
from scipy.sparse import csr_matrix, issparse
from scipy.sparse.linalg import splu

from core.config import DENSE_SOLVER_LIMIT, STATIC_RESIDUAL_TOL
from pipeline.elements.enrichment import nodal_field
from pipeline.elements.quad4 import U, V, W
from pipeline.errors import InstabilityError, SingularSystemError
from pipeline.material.lamina import properties_at
from pipeline.material.laminate import LaminateIntegrals, laminate_integrals
from pipeline.solver.assembly import (
    GlobalSystem,
    ResultantField,
    assemble,
    assemble_geometric,
    recover_resultants,
)
from pipeline.solver.boundary import (
    ConstrainedSystem,
    apply_boundary_conditions,
    constrained_dofs,
    eliminate,
)
from pipeline.solver.case import AnalysisCase, LoadPattern, SolveMode
from pipeline.solver.eigen import generalized_symmetric_eig
from pipeline.solver.model import EnrichedModel, build_model

logger = logging.getLogger("hygro_xfem")


def static_solve(K, f: np.ndarray, tol: float = STATIC_RESIDUAL_TOL) -> np.ndarray:
    """
    Solve K δ = f for symmetric positive-definite K.

    Cholesky below the dense limit, sparse LU above; one step of iterative
    refinement when the residual exceeds `tol`.

    Raises:
        SingularSystemError: factorization failed
    """
    f = np.asarray(f, dtype=float)
    n = f.shape[0]
    if n == 0 or not np.any(f):
        return np.zeros(n)

    if n < DENSE_SOLVER_LIMIT:
        dense = K.toarray() if issparse(K) else np.asarray(K, dtype=float)
        try:
            factor = la.cho_factor(dense)
        except la.LinAlgError as e:
            raise SingularSystemError(f"Cholesky factorization failed ({n} dofs): {e}") from e

        def solve(rhs):
            return la.cho_solve(factor, rhs)
    else:
        try:
            lu = splu(csr_matrix(K).tocsc())
        except RuntimeError as e:
            raise SingularSystemError(f"sparse factorization failed ({n} dofs): {e}") from e
        solve = lu.solve

    x = solve(f)
    scale = np.linalg.norm(f)
    residual = np.linalg.norm(f - K @ x)
    if residual > tol * scale:
        x = x + solve(f - K @ x)
        residual = np.linalg.norm(f - K @ x)
        if residual > tol * scale:
            logger.warning(f"Static residual {residual / scale:.2e} above {tol:.0e} after refinement")
    logger.debug(f"Static solve: {n} dofs, relative residual {residual / scale:.2e}")
    return x


@dataclass
class PreparedCase:
    """Everything a solve mode needs before its own final step."""

    case: AnalysisCase
    model: EnrichedModel
    integrals: LaminateIntegrals
    system: GlobalSystem
    constrained: ConstrainedSystem
    hygro_displacement: Optional[np.ndarray] = None

    @property
    def K_total(self):
        if self.system.K_R is None:
            return self.constrained.K
        return (self.constrained.K + self.constrained.restrict(self.system.K_R)).tocsr()


def prepare_case(case: AnalysisCase, model: Optional[EnrichedModel] = None) -> PreparedCase:
    """Build the model, assemble, constrain and add the hygrothermal pre-stress."""
    if model is None:
        model = build_model(case.a, case.b, case.nx, case.ny, case.cutout)
    integrals = laminate_integrals(case.stack(), case.environment(), case.tables())
    system = assemble(model, integrals)
    constrained = apply_boundary_conditions(system, model, case.bc)

    prepared = PreparedCase(case=case, model=model, integrals=integrals, system=system, constrained=constrained)
    if integrals.has_hygro_load:
        delta = constrained.expand(static_solve(constrained.K, constrained.f_T))
        residual_state = recover_resultants(model, integrals, delta, hygro=True)
        system.K_R = assemble_geometric(model, residual_state)
        prepared.hygro_displacement = delta
    return prepared


def reference_load_resultants(prepared: PreparedCase) -> ResultantField:
    """
    In-plane resultants of the unit compressive reference load.

    Uniform without a cutout. With one, a static solve under unit edge
    tractions: u0 = 0 on x = 0 and v0 = 0 at the origin (uniaxial_x),
    mirrored for uniaxial_y, u0 = 0 on x = 0 with v0 = 0 on y = 0 for
    biaxial; transverse constraints follow the case.
    """
    case, model = prepared.case, prepared.model
    pattern = LoadPattern(case.load)
    if model.cutout.is_none:
        return np.array(pattern.uniform_resultants)

    mesh, dofs = model.mesh, model.dofs
    origin = np.array([mesh.node_id(0, 0)])
    f = np.zeros(dofs.n_active)

    def edge_weights(n_seg: int, length: float) -> np.ndarray:
        w = np.full(n_seg + 1, length / n_seg)
        w[[0, -1]] *= 0.5
        return w

    fixed: List[np.ndarray] = [constrained_dofs(model, case.bc, transverse_only=True)]
    if pattern in (LoadPattern.UNIAXIAL_X, LoadPattern.BIAXIAL):
        ids = dofs.standard[mesh.boundary_nodes("xa"), U]
        np.add.at(f, ids[ids >= 0], -edge_weights(mesh.ny, mesh.b)[ids >= 0])
        fixed.append(dofs.node_dofs(mesh.boundary_nodes("x0"), [U]))
    if pattern in (LoadPattern.UNIAXIAL_Y, LoadPattern.BIAXIAL):
        ids = dofs.standard[mesh.boundary_nodes("yb"), V]
        np.add.at(f, ids[ids >= 0], -edge_weights(mesh.nx, mesh.a)[ids >= 0])
        fixed.append(dofs.node_dofs(mesh.boundary_nodes("y0"), [V]))
    if pattern is LoadPattern.UNIAXIAL_X:
        fixed.append(dofs.node_dofs(origin, [V]))
    elif pattern is LoadPattern.UNIAXIAL_Y:
        fixed.append(dofs.node_dofs(origin, [U]))

    free = eliminate(dofs.n_active, np.concatenate(fixed))
    K = prepared.system.K[free][:, free].tocsr()
    delta = np.zeros(dofs.n_active)
    delta[free] = static_solve(K, f[free])
    return recover_resultants(model, prepared.integrals, delta, hygro=False)


def baseline_transverse_modulus(case: AnalysisCase) -> float:
    """E2 of the (first) ply material at its undegraded state."""
    table = case.material_table()
    return properties_at(table, *table.baseline).E2


def nondimensional_frequency(omega: np.ndarray, case: AnalysisCase) -> np.ndarray:
    """Ω = ω (a²/h) √(ρ/E2), E2 and ρ at the baseline state."""
    table = case.material_table()
    return np.asarray(omega) * case.a ** 2 / case.h * np.sqrt(table.rho / baseline_transverse_modulus(case))


def case_columns(case: AnalysisCase) -> Dict[str, Any]:
    """Case-describing CSV columns shared by every row of a case."""
    cutout = case.cutout
    return {
        "case_id": case.case_id,
        "a": case.a,
        "b": case.b,
        "h": case.h,
        "layup": "/".join(f"{angle:g}" for angle in case.layup),
        "cutout_kind": cutout.kind.value,
        "cutout_r": cutout.radius,
        "cutout_d": cutout.d,
        "cutout_e": cutout.e,
        "cutout_psi": cutout.theta,
        "T": case.temperature,
        "C": case.moisture,
        "bc": case.bc.value,
        "mode": case.mode.value,
    }


@dataclass
class AnalysisResult:
    """
    Outcome of one case.

    values: ω in rad/s (vibration), λ (buckling) or max |w0| (static)
    nondimensional: Ω, λ/Λ⁺ or max |w0| / h
    modes: (n_active, k) eigenvectors or the static displacement as one column
    """

    case: AnalysisCase
    values: np.ndarray
    nondimensional: np.ndarray
    model: Optional[EnrichedModel] = None
    modes: Optional[np.ndarray] = None
    reference_load: Optional[float] = None
    elapsed: float = 0.0
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def mode(self) -> SolveMode:
        return SolveMode(self.case.mode)

    def mode_shape(self, index: int = 0, field_index: int = W) -> np.ndarray:
        """Nodal values of one field of one mode (w0 by default)."""
        if self.modes is None or self.model is None:
            raise ValueError("result carries no mode shapes")
        return nodal_field(self.model, self.modes[:, index], field_index)

    def rows(self) -> List[Dict[str, Any]]:
        """One CSV row per reported value."""
        base = case_columns(self.case)
        return [
            {**base, "index": i + 1, "raw_value": float(raw), "nondim_value": float(nd), "error": ""}
            for i, (raw, nd) in enumerate(zip(self.values, self.nondimensional))
        ]


def solve_static(case: AnalysisCase, model: Optional[EnrichedModel] = None) -> AnalysisResult:
    """K δ = f_T under the case's hygrothermal load."""
    start = time.time()
    prepared = prepare_case(case, model)
    delta = prepared.hygro_displacement
    if delta is None:
        delta = np.zeros(prepared.model.dofs.n_active)

    w = nodal_field(prepared.model, delta, W)
    peak = float(np.max(np.abs(w)))
    return AnalysisResult(
        case=case,
        values=np.array([peak]),
        nondimensional=np.array([peak / case.h]),
        model=prepared.model,
        modes=delta[:, None],
        elapsed=time.time() - start,
    )


def _check_stability(prepared: PreparedCase) -> None:
    """Lowest eigenvalue of (K + K_R, M) must be positive."""
    if prepared.system.K_R is None:
        return
    lowest = generalized_symmetric_eig(prepared.K_total, prepared.constrained.M, 1).values[0]
    if lowest < 0.0:
        raise InstabilityError(
            f"hygrothermal preload buckles case '{prepared.case.case_id}' "
            f"(lowest eigenvalue of K + K_R: {lowest:.6e})",
            eigenvalue=float(lowest),
        )


def solve_vibration(case: AnalysisCase, model: Optional[EnrichedModel] = None) -> AnalysisResult:
    """
    Smallest ω of [(K + K_R) − ω² M] δ = 0.

    Raises:
        InstabilityError: a negative ω² (K + K_R indefinite)
    """
    start = time.time()
    prepared = prepare_case(case, model)
    eig = generalized_symmetric_eig(prepared.K_total, prepared.constrained.M, case.eigencount)

    if eig.values[0] < 0.0:
        raise InstabilityError(
            f"hygrothermal preload buckles case '{case.case_id}' (ω² = {eig.values[0]:.6e})",
            eigenvalue=float(eig.values[0]),
        )

    omega = np.sqrt(eig.values)
    result = AnalysisResult(
        case=case,
        values=omega,
        nondimensional=nondimensional_frequency(omega, case),
        model=prepared.model,
        modes=prepared.constrained.expand(eig.vectors),
        elapsed=time.time() - start,
        extras={"branch": eig.branch},
    )
    logger.info(f"Case '{case.case_id}': Ω1 = {result.nondimensional[0]:.4f} ({result.elapsed:.2f}s)")
    return result


def critical_loads(case: AnalysisCase, model: Optional[EnrichedModel] = None):
    """Buckling multipliers λ of the case before normalization, with the eigen result."""
    prepared = prepare_case(case, model)
    _check_stability(prepared)

    reference = reference_load_resultants(prepared)
    # K_G = −K_geo(N_unit) is positive semi-definite for a compressive load
    K_G = -prepared.constrained.restrict(assemble_geometric(prepared.model, reference))
    eig = generalized_symmetric_eig(prepared.K_total, K_G, case.eigencount, mode="buckling")
    return prepared, eig


def solve_buckling(case: AnalysisCase, model: Optional[EnrichedModel] = None) -> AnalysisResult:
    """
    Smallest positive λ of [(K + K_R) − λ K_G] δ = 0, normalized by the
    critical load of the same plate without cutout at the baseline state.

    Raises:
        InstabilityError: K + K_R indefinite
        SolverError: no positive eigenvalue
    """
    from pipeline.models import ReferenceCache

    start = time.time()
    prepared, eig = critical_loads(case, model)
    lam = eig.values

    if case.is_reference():
        reference = float(lam[0])
        ReferenceCache.store(case.reference_case(), reference)
    else:
        reference = ReferenceCache.get_reference_load(case.reference_case())

    result = AnalysisResult(
        case=case,
        values=lam,
        nondimensional=lam / reference,
        model=prepared.model,
        modes=prepared.constrained.expand(eig.vectors),
        reference_load=reference,
        elapsed=time.time() - start,
        extras={"branch": eig.branch},
    )
    logger.info(
        f"Case '{case.case_id}': λ1 = {lam[0]:.6e}, N̄ = {result.nondimensional[0]:.4f} "
        f"({result.elapsed:.2f}s)"
    )
    return result


SOLVERS = {
    SolveMode.STATIC: solve_static,
    SolveMode.VIBRATION: solve_vibration,
    SolveMode.BUCKLING: solve_buckling,
}


def run_case(case: AnalysisCase) -> AnalysisResult:
    return SOLVERS[SolveMode(case.mode)](case)
