# file: pipeline/elements/enrichment.py
"""
Heaviside enrichment over a traction-free cutout.

H is the material indicator: 1 where φ > 0, 0 inside the cutout. Enriched
columns are the standard columns scaled by H at each point.
"""

from typing import Optional

import numpy as np

from pipeline.elements.quad4 import DOFS_PER_NODE, ElementOperators, shape_functions


def heaviside(phi) -> np.ndarray:
    return (np.asarray(phi, dtype=float) > 0.0).astype(float)


def enrich_operators(ops: ElementOperators, H: np.ndarray) -> ElementOperators:
    """Append the H-scaled columns: 20 standard + 20 enriched local dofs."""
    enriched = ops.scaled_columns(H)
    return ElementOperators(
        N=np.concatenate([ops.N, enriched.N], axis=-1),
        Bp=np.concatenate([ops.Bp, enriched.Bp], axis=-1),
        Bb=np.concatenate([ops.Bb, enriched.Bb], axis=-1),
        Bs=np.concatenate([ops.Bs, enriched.Bs], axis=-1),
        G=np.concatenate([ops.G, enriched.G], axis=-1),
        dV=ops.dV,
    )


def enriched_interpolation(
    N: np.ndarray,
    standard: np.ndarray,
    enriched: Optional[np.ndarray],
    H: float,
    enriched_mask: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    u(x) = Σ N_I u_I + H(x) Σ_{J enriched} N_J b_J.

    Args:
        N: (4,) shape function values at the point
        standard: (4, 5) standard nodal dofs
        enriched: (4, 5) enriched nodal dofs, or None
        H: material indicator at the point
        enriched_mask: (4,) bool, nodes in the enrichment set (default: all)

    Returns:
        (5,) interpolated (u0, v0, w0, βx, βy)
    """
    value = np.asarray(N) @ np.asarray(standard, dtype=float)
    if enriched is None:
        return value
    weights = np.asarray(N, dtype=float).copy()
    if enriched_mask is not None:
        weights = weights * np.asarray(enriched_mask, dtype=float)
    return value + H * (weights @ np.asarray(enriched, dtype=float))


def nodal_field(model, delta: np.ndarray, field: int) -> np.ndarray:
    """
    One dof field at every mesh node from an active-dof vector.

    At node I the interpolation reduces to u_I + H(x_I) b_I, so void-side
    nodes of the enrichment set and eliminated nodes report 0.

    Args:
        model: EnrichedModel
        delta: (n_active,) solution vector
        field: 0..4 for u0, v0, w0, βx, βy
    """
    if not 0 <= field < DOFS_PER_NODE:
        raise ValueError(f"field index must be in [0, {DOFS_PER_NODE}), got {field}")
    dofs = model.dofs
    delta = np.asarray(delta, dtype=float)

    values = np.zeros(model.mesh.n_nodes)
    std = dofs.standard[:, field]
    active = std >= 0
    values[active] = delta[std[active]]

    enr = dofs.enriched[:, field]
    H = heaviside(model.classification.phi)
    carried = enr >= 0
    values[carried] += H[carried] * delta[enr[carried]]
    return values


def interpolate_at(model, delta: np.ndarray, element: int, xi: float, eta: float, H: float) -> np.ndarray:
    """Displacement vector (5,) at a parent point of one element."""
    dofs = model.dofs
    conn = model.mesh.elements[element]
    delta = np.asarray(delta, dtype=float)

    def gather(ids: np.ndarray) -> np.ndarray:
        out = np.zeros(ids.shape)
        mask = ids >= 0
        out[mask] = delta[ids[mask]]
        return out

    N, _ = shape_functions(xi, eta)
    return enriched_interpolation(
        N,
        gather(dofs.standard[conn]),
        gather(dofs.enriched[conn]),
        H,
        model.classification.enriched_nodes[conn],
    )
