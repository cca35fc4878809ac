# file: pipeline/elements/quad4.py
"""
Bilinear 4-node Mindlin plate element with assumed natural transverse shear
strains (MITC4-type tying at edge midpoints).

Nodal dofs (u0, v0, w0, βx, βy); local dof index = 5·node + field.
Transverse shear strains are γ = β + ∇w0.
"""

from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from pipeline.errors import GeometryError

DOFS_PER_NODE = 5
NODES_PER_ELEMENT = 4
ELEMENT_DOFS = DOFS_PER_NODE * NODES_PER_ELEMENT

U, V, W, BX, BY = range(DOFS_PER_NODE)

NODE_SIGNS = np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])

# Tying points: γ_ξ on η = ∓1, γ_η on ξ = ∓1
_TYING_XI = np.array([[0.0, -1.0], [0.0, 1.0]])
_TYING_ETA = np.array([[-1.0, 0.0], [1.0, 0.0]])


def shape_functions(xi, eta) -> Tuple[np.ndarray, np.ndarray]:
    """
    Bilinear shape functions and their parent-space gradients.

    Args:
        xi, eta: scalars or 1-D arrays of parent coordinates

    Returns:
        N: (p, 4) values, dN: (p, 4, 2) with dN[p, a, k] = ∂N_a/∂(ξ, η)_k;
        leading axis dropped for scalar input
    """
    scalar = np.ndim(xi) == 0 and np.ndim(eta) == 0
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    sx, sy = NODE_SIGNS[:, 0], NODE_SIGNS[:, 1]

    fx = 1.0 + xi[:, None] * sx
    fy = 1.0 + eta[:, None] * sy
    N = 0.25 * fx * fy
    dN = np.stack([0.25 * sx * fy, 0.25 * sy * fx], axis=-1)
    if scalar:
        return N[0], dN[0]
    return N, dN


def jacobian(dN: np.ndarray, coords: np.ndarray) -> np.ndarray:
    """J[p] = [[x_ξ, y_ξ], [x_η, y_η]]."""
    return np.einsum("pak,ai->pki", dN, coords)


def _checked_inverse(J: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    detJ = np.linalg.det(J)
    if np.any(detJ <= 0.0):
        raise GeometryError(f"non-positive element Jacobian (min det = {detJ.min():.3e})")
    return np.linalg.inv(J), detJ


def _covariant_shear_rows(coords: np.ndarray, tying: np.ndarray, direction: int) -> np.ndarray:
    """Rows of γ_ξ (direction 0) or γ_η (direction 1) at two tying points: (2, 20)."""
    N, dN = shape_functions(tying[:, 0], tying[:, 1])
    J = jacobian(dN, coords)
    _checked_inverse(J)
    rows = np.zeros((2, ELEMENT_DOFS))
    rows[:, W::DOFS_PER_NODE] = dN[:, :, direction]
    rows[:, BX::DOFS_PER_NODE] = N * J[:, direction, 0][:, None]
    rows[:, BY::DOFS_PER_NODE] = N * J[:, direction, 1][:, None]
    return rows


def field_consistent_shear_B(coords: np.ndarray, xi, eta) -> np.ndarray:
    """
    Cartesian transverse shear operator (p, 2, 20) from tied covariant strains.

    γ_ξ is sampled at (0, ∓1) and interpolated linearly in η; γ_η at (∓1, 0)
    and linearly in ξ. The result is mapped with J⁻¹ at each point.

    Raises:
        GeometryError: non-positive Jacobian at a tying or evaluation point
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    coords = np.asarray(coords, dtype=float)

    g_xi = _covariant_shear_rows(coords, _TYING_XI, 0)
    g_eta = _covariant_shear_rows(coords, _TYING_ETA, 1)

    covariant = np.empty((xi.shape[0], 2, ELEMENT_DOFS))
    covariant[:, 0] = 0.5 * (1.0 - eta)[:, None] * g_xi[0] + 0.5 * (1.0 + eta)[:, None] * g_xi[1]
    covariant[:, 1] = 0.5 * (1.0 - xi)[:, None] * g_eta[0] + 0.5 * (1.0 + xi)[:, None] * g_eta[1]

    _, dN = shape_functions(xi, eta)
    J_inv, _ = _checked_inverse(jacobian(dN, coords))
    return np.einsum("pik,pkd->pid", J_inv, covariant)


@dataclass(frozen=True, eq=False)
class ElementOperators:
    """Point-wise operators of one element over a set of quadrature points."""

    N: np.ndarray     # (p, 5, n) field interpolation
    Bp: np.ndarray    # (p, 3, n) membrane strains
    Bb: np.ndarray    # (p, 3, n) bending curvatures
    Bs: np.ndarray    # (p, 2, n) transverse shear strains
    G: np.ndarray     # (p, 2, n) ∇w0
    dV: np.ndarray    # (p,) weight · det J · indicator

    @property
    def n_dofs(self) -> int:
        return self.Bp.shape[-1]

    def scaled_columns(self, scale: np.ndarray) -> "ElementOperators":
        """Operators with every column multiplied by a per-point factor."""
        s = np.asarray(scale, dtype=float)[:, None, None]
        return replace(self, N=self.N * s, Bp=self.Bp * s, Bb=self.Bb * s, Bs=self.Bs * s, G=self.G * s)


def element_operators(
    coords: np.ndarray,
    points: np.ndarray,
    weights: np.ndarray,
    indicator: Optional[np.ndarray] = None,
) -> ElementOperators:
    """
    Evaluate N, Bp, Bb, Bs and ∇w0 at parent points of one element.

    Args:
        coords: (4, 2) nodal coordinates, counter-clockwise
        points: (p, 2) parent coordinates
        weights: (p,) parent-space quadrature weights
        indicator: optional (p,) material indicator multiplying the weights
    """
    coords = np.asarray(coords, dtype=float)
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    n_points = points.shape[0]

    N, dN = shape_functions(points[:, 0], points[:, 1])
    J_inv, detJ = _checked_inverse(jacobian(dN, coords))
    dNdx = np.einsum("pik,pak->pai", J_inv, dN)

    Nmat = np.zeros((n_points, DOFS_PER_NODE, ELEMENT_DOFS))
    for f in range(DOFS_PER_NODE):
        Nmat[:, f, f::DOFS_PER_NODE] = N

    Bp = np.zeros((n_points, 3, ELEMENT_DOFS))
    Bp[:, 0, U::DOFS_PER_NODE] = dNdx[:, :, 0]
    Bp[:, 1, V::DOFS_PER_NODE] = dNdx[:, :, 1]
    Bp[:, 2, U::DOFS_PER_NODE] = dNdx[:, :, 1]
    Bp[:, 2, V::DOFS_PER_NODE] = dNdx[:, :, 0]

    Bb = np.zeros((n_points, 3, ELEMENT_DOFS))
    Bb[:, 0, BX::DOFS_PER_NODE] = dNdx[:, :, 0]
    Bb[:, 1, BY::DOFS_PER_NODE] = dNdx[:, :, 1]
    Bb[:, 2, BX::DOFS_PER_NODE] = dNdx[:, :, 1]
    Bb[:, 2, BY::DOFS_PER_NODE] = dNdx[:, :, 0]

    G = np.zeros((n_points, 2, ELEMENT_DOFS))
    G[:, 0, W::DOFS_PER_NODE] = dNdx[:, :, 0]
    G[:, 1, W::DOFS_PER_NODE] = dNdx[:, :, 1]

    Bs = field_consistent_shear_B(coords, points[:, 0], points[:, 1])

    dV = np.asarray(weights, dtype=float) * detJ
    if indicator is not None:
        dV = dV * np.asarray(indicator, dtype=float)
    return ElementOperators(N=Nmat, Bp=Bp, Bb=Bb, Bs=Bs, G=G, dV=dV)


def _symmetric(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def element_stiffness(integrals, ops: ElementOperators) -> np.ndarray:
    """Ke = Σ dV [BpᵀA Bp + BpᵀB Bb + BbᵀB Bp + BbᵀD Bb + BsᵀAs Bs]."""
    if ops.dV.size == 0:
        return np.zeros((ops.n_dofs, ops.n_dofs))
    Ke = (
        np.einsum("p,pia,ij,pjb->ab", ops.dV, ops.Bp, integrals.A, ops.Bp)
        + np.einsum("p,pia,ij,pjb->ab", ops.dV, ops.Bp, integrals.B, ops.Bb)
        + np.einsum("p,pia,ij,pjb->ab", ops.dV, ops.Bb, integrals.B, ops.Bp)
        + np.einsum("p,pia,ij,pjb->ab", ops.dV, ops.Bb, integrals.D, ops.Bb)
        + np.einsum("p,pia,ij,pjb->ab", ops.dV, ops.Bs, integrals.As, ops.Bs)
    )
    return _symmetric(Ke)


def element_mass(p: float, I: float, ops: ElementOperators) -> np.ndarray:
    """Consistent mass: p on (u0, v0, w0), I on (βx, βy)."""
    if ops.dV.size == 0:
        return np.zeros((ops.n_dofs, ops.n_dofs))
    inertia = np.array([p, p, p, I, I])
    return _symmetric(np.einsum("p,pfa,f,pfb->ab", ops.dV, ops.N, inertia, ops.N))


def element_geometric_stiffness(resultants: np.ndarray, ops: ElementOperators) -> np.ndarray:
    """
    ∫ ∇w0ᵀ [N] ∇w0 dΩ with [N] = [[Nxx, Nxy], [Nxy, Nyy]].

    Args:
        resultants: (3,) constant or (p, 3) per-point (Nxx, Nyy, Nxy)
    """
    if ops.dV.size == 0:
        return np.zeros((ops.n_dofs, ops.n_dofs))
    res = np.broadcast_to(np.asarray(resultants, dtype=float), (ops.dV.size, 3))
    Nmat = np.empty((ops.dV.size, 2, 2))
    Nmat[:, 0, 0] = res[:, 0]
    Nmat[:, 1, 1] = res[:, 1]
    Nmat[:, 0, 1] = Nmat[:, 1, 0] = res[:, 2]
    return _symmetric(np.einsum("p,pia,pij,pjb->ab", ops.dV, ops.G, Nmat, ops.G))


def element_hygrothermal_load(N_hygro: np.ndarray, M_hygro: np.ndarray, ops: ElementOperators) -> np.ndarray:
    """fTe = Σ dV [Bpᵀ N_hygro + Bbᵀ M_hygro]."""
    if ops.dV.size == 0:
        return np.zeros(ops.n_dofs)
    return (
        np.einsum("p,pia,i->a", ops.dV, ops.Bp, N_hygro)
        + np.einsum("p,pia,i->a", ops.dV, ops.Bb, M_hygro)
    )


def element_resultants(integrals, ops: ElementOperators, de: np.ndarray, hygro: bool = True) -> np.ndarray:
    """(Nxx, Nyy, Nxy) per point: A εp + B εb, less N_hygro when `hygro`."""
    eps_p = np.einsum("pia,a->pi", ops.Bp, de)
    eps_b = np.einsum("pia,a->pi", ops.Bb, de)
    N = eps_p @ integrals.A.T + eps_b @ integrals.B.T
    if hygro:
        N = N - integrals.N_hygro
    return N
