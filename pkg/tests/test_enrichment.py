# file: test_enrichment.py
import numpy as np
import pytest

from pipeline.elements.enrichment import (
    enrich_operators,
    enriched_interpolation,
    heaviside,
    interpolate_at,
    nodal_field,
)
from pipeline.elements.quad4 import DOFS_PER_NODE, ELEMENT_DOFS, W, element_operators
from pipeline.geometry.levelset import CutoutSpec
from pipeline.geometry.quadrature import gauss_rule
from pipeline.geometry.subcells import ElementKind
from pipeline.solver.model import build_model


def _cutout_model(nx: int = 10, r_over_a: float = 0.2):
    return build_model(1.0, 1.0, nx, nx, CutoutSpec.circle((0.5, 0.5), r_over_a))


# ------------------ Tests ------------------

def test_heaviside_is_material_indicator():
    np.testing.assert_array_equal(heaviside([-0.5, 0.0, 1e-12, 2.0]), [0.0, 0.0, 1.0, 1.0])


def test_enriched_operators_double_the_columns():
    coords = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    points, weights = gauss_rule(2)
    ops = element_operators(coords, points, weights)
    H = np.array([1.0, 0.0, 1.0, 0.0])
    enriched = enrich_operators(ops, H)
    assert enriched.Bb.shape[-1] == 2 * ELEMENT_DOFS
    np.testing.assert_allclose(enriched.Bb[..., :ELEMENT_DOFS], ops.Bb)
    np.testing.assert_allclose(enriched.Bb[1, ..., ELEMENT_DOFS:], 0.0)
    np.testing.assert_allclose(enriched.N[0, ..., ELEMENT_DOFS:], ops.N[0])


def test_enriched_interpolation():
    N = np.array([0.25, 0.25, 0.25, 0.25])
    standard = np.ones((4, DOFS_PER_NODE))
    enriched = np.full((4, DOFS_PER_NODE), 2.0)
    np.testing.assert_allclose(enriched_interpolation(N, standard, None, 1.0), 1.0)
    np.testing.assert_allclose(enriched_interpolation(N, standard, enriched, 0.0), 1.0)
    np.testing.assert_allclose(enriched_interpolation(N, standard, enriched, 1.0), 3.0)
    mask = np.array([True, False, False, False])
    np.testing.assert_allclose(enriched_interpolation(N, standard, enriched, 1.0, mask), 1.5)


def test_dof_map_without_cutout():
    model = build_model(1.0, 1.0, 4, 4, CutoutSpec.none())
    dofs = model.dofs
    assert dofs.n_active == 25 * DOFS_PER_NODE
    assert dofs.n_enriched_dofs == 0
    assert not dofs.eliminated_nodes.any()
    # node-major numbering
    np.testing.assert_array_equal(dofs.standard[3], np.arange(15, 20))
    np.testing.assert_array_equal(dofs.element_dofs(0)[:DOFS_PER_NODE], np.arange(5))
    assert len(dofs.element_dofs(0)) == ELEMENT_DOFS


def test_dof_map_with_cutout():
    model = _cutout_model()
    dofs, classification = model.dofs, model.classification
    enriched_nodes = classification.enriched_nodes
    void_side = classification.phi < 0.0

    carrying = np.any(dofs.enriched >= 0, axis=1)
    np.testing.assert_array_equal(carrying, enriched_nodes & void_side & ~dofs.eliminated_nodes)
    # a void-side enriched node keeps no standard dofs
    assert np.all(dofs.standard[carrying] < 0)
    # eliminated nodes are inside the cutout and carry nothing
    assert dofs.eliminated_nodes.any()
    assert np.all(void_side[dofs.eliminated_nodes])
    assert np.all(dofs.standard[dofs.eliminated_nodes] < 0)
    assert np.all(dofs.enriched[dofs.eliminated_nodes] < 0)

    ids = np.concatenate([dofs.standard[dofs.standard >= 0], dofs.enriched[dofs.enriched >= 0]])
    np.testing.assert_array_equal(np.sort(ids), np.arange(dofs.n_active))

    split = classification.elements_of(ElementKind.SPLIT)
    assert all(len(dofs.element_dofs(e)) == 2 * ELEMENT_DOFS for e in split)


def test_node_dofs_collects_both_layers():
    model = _cutout_model()
    dofs = model.dofs
    node = int(np.flatnonzero(np.any(dofs.enriched >= 0, axis=1))[0])
    ids = dofs.node_dofs([node], [W])
    np.testing.assert_array_equal(ids, [dofs.enriched[node, W]])


def test_nodal_field_reports_material_values():
    model = _cutout_model()
    delta = np.arange(model.dofs.n_active, dtype=float) + 1.0
    w = nodal_field(model, delta, W)
    standard = model.dofs.standard[:, W]
    assert np.all(w[standard >= 0] == delta[standard[standard >= 0]])
    # void-side and eliminated nodes carry no material value
    assert np.all(w[standard < 0] == 0.0)
    with pytest.raises(ValueError):
        nodal_field(model, delta, 5)


def test_interpolate_at_matches_nodal_field():
    model = _cutout_model()
    delta = np.random.default_rng(3).normal(size=model.dofs.n_active)
    w = nodal_field(model, delta, W)
    corners = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]
    for e in model.classification.elements_of(ElementKind.SPLIT):
        conn = model.mesh.elements[e]
        for a, (xi, eta) in enumerate(corners):
            if model.classification.phi[conn[a]] > 0.0:
                value = interpolate_at(model, delta, e, xi, eta, H=1.0)
                assert value[W] == pytest.approx(w[conn[a]])


if __name__ == "__main__":
    pytest.main()
