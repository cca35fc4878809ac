# file: test_assembly.py
import numpy as np
import pytest

from config.materials import GRAPHITE_EPOXY, ISOTROPIC_STEEL
from pipeline.elements.quad4 import BX, BY, DOFS_PER_NODE, U, V, W
from pipeline.geometry.levelset import CutoutSpec
from pipeline.material.laminate import Environment, LaminateStack, laminate_integrals
from pipeline.solver.assembly import OperatorCache, assemble, assemble_geometric, recover_resultants
from pipeline.solver.boundary import (
    BoundaryCondition,
    apply_boundary_conditions,
    constrained_dofs,
    eliminate,
)
from pipeline.solver.model import build_model

TABLES = {"graphite_epoxy": GRAPHITE_EPOXY, "isotropic_steel": ISOTROPIC_STEEL}
CROSS_PLY = (0.0, 90.0, 90.0, 0.0)


def _integrals(environment=Environment(), layup=CROSS_PLY, h=0.01):
    return laminate_integrals(LaminateStack.from_layup(layup, h, "graphite_epoxy"), environment, TABLES)


def _rigid_vectors(model):
    """Global rigid-body displacement fields on a model without enrichment."""
    x, y = model.mesh.nodes[:, 0], model.mesh.nodes[:, 1]
    fields = [
        {U: 1.0}, {V: 1.0}, {U: -y, V: x},
        {W: 1.0}, {W: x, BX: -1.0}, {W: y, BY: -1.0},
    ]
    vectors = []
    for spec in fields:
        v = np.zeros(model.dofs.n_active)
        for f, values in spec.items():
            v[model.dofs.standard[:, f]] = values
        vectors.append(v)
    return vectors


def _symmetry_error(matrix) -> float:
    return abs(matrix - matrix.T).max() / abs(matrix).max()


# ------------------ Tests ------------------

def test_plain_plate_rigid_modes_and_symmetry():
    model = build_model(1.0, 0.8, 6, 5, CutoutSpec.none())
    system = assemble(model, _integrals(layup=(0.0, 45.0)))
    assert system.n_dofs == 42 * DOFS_PER_NODE
    assert _symmetry_error(system.K) < 1e-12
    scale = abs(system.K).max()
    for v in _rigid_vectors(model):
        assert np.abs(system.K @ v).max() < 1e-9 * scale * np.abs(v).max()
    assert np.all(np.linalg.eigvalsh(system.M.toarray()) > 0.0)


def test_cutout_system_symmetric_and_mass_definite():
    model = build_model(1.0, 1.0, 8, 8, CutoutSpec.circle((0.5, 0.5), 0.2))
    system = assemble(model, _integrals(Environment(moisture=0.5)))
    assert _symmetry_error(system.K) < 1e-12
    assert _symmetry_error(system.M) < 1e-12
    assert np.linalg.eigvalsh(system.M.toarray()).min() > 0.0
    # the hygrothermal load is self-equilibrated
    assert abs(system.f_T.sum()) < 1e-9 * np.abs(system.f_T).max()


def test_total_mass_matches_material_area():
    for cutout in (CutoutSpec.none(), CutoutSpec.circle((0.5, 0.5), 0.2)):
        model = build_model(1.0, 1.0, 10, 10, cutout)
        integrals = _integrals()
        system = assemble(model, integrals)
        # translation in w: uᵀ M u = p × material area
        v = np.zeros(model.dofs.n_active)
        v[model.dofs.node_dofs(np.arange(model.mesh.n_nodes), [W])] = 1.0
        assert v @ (system.M @ v) == pytest.approx(integrals.p * model.material_area(), rel=1e-10)


def test_geometric_stiffness_quadratic_form():
    for cutout in (CutoutSpec.none(), CutoutSpec.circle((0.5, 0.5), 0.2)):
        model = build_model(1.0, 1.0, 10, 10, cutout)
        KG = assemble_geometric(model, np.array([-1.0, 0.0, 0.0]))
        # w = x everywhere (standard and enriched layers): ∫ Nxx (w,x)² = −area
        w = np.zeros(model.dofs.n_active)
        x = model.mesh.nodes[:, 0]
        for layer in (model.dofs.standard, model.dofs.enriched):
            ids = layer[:, W]
            w[ids[ids >= 0]] = x[ids >= 0]
        assert w @ (KG @ w) == pytest.approx(-model.material_area(), rel=1e-10)


def test_operator_cache_shares_uncut_elements():
    model = build_model(1.0, 1.0, 6, 6, CutoutSpec.circle((0.5, 0.5), 0.2))
    cache = OperatorCache(model)
    assert cache.get(0) is cache.get(1)
    split = int(np.flatnonzero(model.classification.kinds == 1)[0])
    assert cache.shared_key(split, "stiffness") is None
    assert cache.get(split).n_dofs == 40


def test_constrained_hygro_state():
    # SSSS restrains the in-plane expansion of a symmetric plate completely
    model = build_model(1.0, 1.0, 8, 8, CutoutSpec.none())
    integrals = _integrals(Environment(moisture=0.5))
    system = assemble(model, integrals)
    constrained = apply_boundary_conditions(system, model, BoundaryCondition.SSSS)
    rhs_scale = np.abs(system.f_T).max()
    assert np.abs(constrained.f_T).max() < 1e-9 * rhs_scale

    state = recover_resultants(model, integrals, np.zeros(model.dofs.n_active))
    for values in state.values():
        np.testing.assert_allclose(values, np.tile(-integrals.N_hygro, (values.shape[0], 1)))


def test_boundary_constraints():
    model = build_model(1.0, 1.0, 4, 4, CutoutSpec.none())
    ssss = constrained_dofs(model, BoundaryCondition.SSSS)
    cccc = constrained_dofs(model, BoundaryCondition.CCCC)
    corner = model.dofs.standard[0]
    assert set(corner[[U, V, W, BX, BY]]) <= set(cccc)
    # SSSS on x = 0: u0, w0, βy fixed; v0 and βx free at a mid-edge node
    mid = model.dofs.standard[model.mesh.node_id(0, 2)]
    assert {mid[U], mid[W], mid[BY]} <= set(ssss)
    assert mid[V] not in ssss and mid[BX] not in ssss
    transverse = constrained_dofs(model, BoundaryCondition.SSSS, transverse_only=True)
    assert mid[U] not in transverse

    free = eliminate(10, [1, 3])
    np.testing.assert_array_equal(free, [0, 2, 4, 5, 6, 7, 8, 9])
    system = assemble(model, _integrals())
    constrained = apply_boundary_conditions(system, model, BoundaryCondition.CCCC)
    assert constrained.n_free == system.n_dofs - len(cccc)
    x = np.arange(constrained.n_free, dtype=float)
    full = constrained.expand(x)
    np.testing.assert_array_equal(full[cccc], 0.0)
    np.testing.assert_array_equal(constrained.restrict_vector(full), x)


if __name__ == "__main__":
    pytest.main()
