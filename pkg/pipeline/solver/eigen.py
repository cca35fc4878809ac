# file: pipeline/solver/eigen.py
"""
Generalized symmetric eigenproblems for vibration and buckling.

Small systems go to LAPACK (scipy.linalg.eigh); larger ones to ARPACK
(scipy.sparse.linalg.eigsh).
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg as la
from scipy.sparse import issparse, spmatrix
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, eigsh

from core.config import ARPACK_MAX_ITERATIONS, DENSE_SOLVER_LIMIT, EIGEN_RESIDUAL_TOL
from pipeline.errors import SolverError

logger = logging.getLogger("hygro_xfem")

Matrix = Union[np.ndarray, spmatrix]


@dataclass(frozen=True, eq=False)
class EigenResult:
    values: np.ndarray    # ascending
    vectors: np.ndarray   # (n, k), columns paired with values
    branch: str           # "dense" | "sparse"


def _dense(M: Matrix) -> np.ndarray:
    return M.toarray() if issparse(M) else np.asarray(M, dtype=float)


def _check_residuals(A: Matrix, B: Matrix, values: np.ndarray, vectors: np.ndarray, tol: float) -> None:
    for j, mu in enumerate(values):
        v = vectors[:, j]
        Av = A @ v
        residual = np.linalg.norm(Av - mu * (B @ v))
        scale = np.linalg.norm(Av)
        if residual > tol * scale and residual > 0.0:
            raise SolverError(
                f"eigenpair {j} (μ = {mu:.6e}) fails the residual bound: "
                f"‖Av − μBv‖ = {residual:.3e}, ‖Av‖ = {scale:.3e}"
            )


def _smallest(A: Matrix, B: Matrix, k: int, dense: bool):
    n = A.shape[0]
    if dense:
        A_d, B_d = _dense(A), _dense(B)
        try:
            # largest θ of B v = θ A v, θ = 1/μ: the wanted end of the
            # spectrum keeps full relative accuracy
            theta, vectors = la.eigh(B_d, A_d, subset_by_index=[n - k, n - 1])
        except la.LinAlgError:
            # A indefinite (preloaded past buckling): direct pencil, negative μ first
            try:
                return la.eigh(A_d, B_d, subset_by_index=[0, k - 1])
            except la.LinAlgError as e:
                raise SolverError(f"dense generalized eigensolve failed: {e}") from e
        order = np.argsort(-theta)
        return 1.0 / theta[order], vectors[:, order]
    try:
        values, vectors = eigsh(A, k=k, M=B, sigma=0.0, which="LM", maxiter=max(ARPACK_MAX_ITERATIONS, 10 * n))
    except ArpackNoConvergence as e:
        raise SolverError(
            f"ARPACK did not converge: {len(e.eigenvalues)} of {k} eigenpairs after the iteration budget"
        ) from e
    except (ArpackError, RuntimeError) as e:
        raise SolverError(f"shift-invert eigensolve failed: {e}") from e
    order = np.argsort(values)
    return values[order], vectors[:, order]


def _largest(A: Matrix, B: Matrix, k: int, dense: bool):
    n = A.shape[0]
    if dense:
        try:
            values, vectors = la.eigh(_dense(A), _dense(B), subset_by_index=[n - k, n - 1])
        except la.LinAlgError as e:
            raise SolverError(f"dense generalized eigensolve failed: {e}") from e
        return values, vectors
    try:
        values, vectors = eigsh(A, k=k, M=B, which="LA", maxiter=max(ARPACK_MAX_ITERATIONS, 10 * n))
    except ArpackNoConvergence as e:
        raise SolverError(
            f"ARPACK did not converge: {len(e.eigenvalues)} of {k} eigenpairs after the iteration budget"
        ) from e
    except (ArpackError, RuntimeError) as e:
        raise SolverError(f"generalized eigensolve failed: {e}") from e
    order = np.argsort(values)
    return values[order], vectors[:, order]


def generalized_symmetric_eig(
    A: Matrix,
    B: Matrix,
    k: int,
    mode: str = "standard",
    tol: float = EIGEN_RESIDUAL_TOL,
) -> EigenResult:
    """
    k extreme eigenpairs of a symmetric pencil.

    mode="standard": smallest μ of A v = μ B v, B positive definite.
    mode="buckling": smallest positive λ of A v = λ B v with A positive
        definite and B semi-definite, obtained as the largest μ = 1/λ of
        B v = μ A v.

    Args:
        A: symmetric stiffness-like matrix
        B: mass matrix (standard) or geometric stiffness (buckling)
        k: number of eigenpairs requested
        mode: "standard" or "buckling"
        tol: relative residual bound

    Returns:
        EigenResult with ascending values

    Raises:
        SolverError: no convergence, residual bound violated, or no positive
            buckling eigenvalue
    """
    n = A.shape[0]
    if n == 0:
        raise SolverError("empty system: every dof is constrained")
    k = max(1, min(int(k), n))
    dense = n < DENSE_SOLVER_LIMIT or k >= n - 1
    branch = "dense" if dense else "sparse"

    if mode == "standard":
        values, vectors = _smallest(A, B, k, dense)
        if values[0] > 0.0:
            _check_residuals(A, B, values, vectors, tol)
        else:
            # indefinite A: the caller reports the instability
            logger.debug(f"Eigen ({branch}): non-positive μ1 = {values[0]:.6e}, residual check skipped")
        logger.debug(f"Eigen ({branch}) n={n}, k={k}: μ1 = {values[0]:.6e}")
        return EigenResult(values=values, vectors=vectors, branch=branch)

    if mode == "buckling":
        mu, vectors = _largest(B, A, k, dense)
        # μ at round-off level belongs to the null space of B
        positive = mu > np.finfo(float).eps * max(np.abs(mu).max(), np.finfo(float).tiny) * n
        if not np.any(positive):
            raise SolverError(f"no positive buckling eigenvalue among the {k} requested")
        mu, vectors = mu[positive], vectors[:, positive]
        _check_residuals(B, A, mu, vectors, tol)
        lam = 1.0 / mu
        order = np.argsort(lam)
        logger.debug(f"Buckling eigen ({branch}) n={n}, k={k}: λ1 = {lam[order][0]:.6e}")
        return EigenResult(values=lam[order], vectors=vectors[:, order], branch=branch)

    raise ValueError(f"unknown eigen mode '{mode}'")
