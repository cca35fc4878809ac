# file: test_subcells.py
from math import factorial

import numpy as np
import pytest

from pipeline.geometry.levelset import CutoutSpec, LevelSetField, cutout_level_set
from pipeline.geometry.mesh import build_mesh
from pipeline.geometry.quadrature import (
    TRIANGLE_3,
    TRIANGLE_6,
    collapsed_gauss_triangle,
    gauss_rule,
    map_triangle_rule,
    material_area,
    quadrature_plan,
)
from pipeline.geometry.subcells import (
    PARENT_AREA,
    ElementKind,
    classify_elements,
    triangulate,
    triangulate_split_element,
)


def _monomial_integral(i: int, j: int) -> float:
    """∫ x^i y^j over the reference triangle."""
    return factorial(i) * factorial(j) / factorial(i + j + 2)


def _rule_error(rule, degree: int) -> float:
    points, weights = rule
    worst = 0.0
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            approx = np.sum(weights * points[:, 0] ** i * points[:, 1] ** j)
            worst = max(worst, abs(approx - _monomial_integral(i, j)))
    return worst


def _areas(triangles, material: bool) -> float:
    return sum(t.area for t in triangles if t.material == material)


def _plate(nx: int, r_over_a: float = 0.2):
    mesh = build_mesh(1.0, 1.0, nx, nx)
    field = cutout_level_set(mesh, CutoutSpec.circle((0.5, 0.5), r_over_a))
    classification = classify_elements(mesh, field)
    return mesh, classification, triangulate(mesh, classification)


# ------------------ Tests ------------------

def test_triangle_rules_exact():
    assert _rule_error(TRIANGLE_3, 2) < 1e-15
    assert _rule_error(TRIANGLE_6, 4) < 1e-12
    assert _rule_error(collapsed_gauss_triangle(6, 8), 10) < 1e-14
    assert len(collapsed_gauss_triangle(6, 8)[1]) == 48


def test_gauss_rule():
    points, weights = gauss_rule(2)
    assert weights.sum() == pytest.approx(4.0)
    np.testing.assert_allclose(np.abs(points), 1.0 / np.sqrt(3.0))


def test_mapped_rule_weights_sum_to_area():
    vertices = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]])
    points, weights = map_triangle_rule(TRIANGLE_3, vertices)
    assert weights.sum() == pytest.approx(1.0)
    # centroid of the mapped rule equals the triangle centroid
    np.testing.assert_allclose(weights @ points / weights.sum(), vertices.mean(axis=0))


def test_straight_cut():
    triangles = triangulate_split_element(np.array([1.0, 1.0, -1.0, -1.0]))
    assert _areas(triangles, True) == pytest.approx(2.0)
    assert _areas(triangles, False) == pytest.approx(2.0)
    assert len(triangles) == 8
    assert all(t.area > 0.0 for t in triangles)


def test_corner_cut_keeps_single_triangle():
    triangles = triangulate_split_element(np.array([-1.0, 1.0, 1.0, 1.0]))
    void = [t for t in triangles if not t.material]
    assert len(void) == 1
    assert void[0].area == pytest.approx(0.5)
    assert _areas(triangles, True) == pytest.approx(3.5)


def test_saddle_material_center():
    # mean φ > 0: material hexagon, void corners at nodes 1 and 3
    triangles = triangulate_split_element(np.array([1.0, -1.0, 2.0, -1.0]))
    assert _areas(triangles, False) == pytest.approx(2.0 / 3.0)
    assert _areas(triangles, True) == pytest.approx(PARENT_AREA - 2.0 / 3.0)
    assert sum(1 for t in triangles if not t.material) == 2


def test_saddle_void_center():
    triangles = triangulate_split_element(np.array([1.0, -1.0, 1.0, -1.0]))
    assert _areas(triangles, True) == pytest.approx(1.0)
    assert sum(1 for t in triangles if t.material) == 2


def test_areas_partition_element():
    rng = np.random.default_rng(7)
    for _ in range(50):
        phi = rng.uniform(-1.0, 1.0, 4)
        if np.all(phi > 0) or np.all(phi < 0):
            continue
        triangles = triangulate_split_element(phi)
        total = sum(t.area for t in triangles)
        assert total == pytest.approx(PARENT_AREA, rel=1e-10)


def test_classification_without_cutout():
    mesh = build_mesh(1.0, 1.0, 5, 5)
    classification = classify_elements(mesh, cutout_level_set(mesh, CutoutSpec.none()))
    assert classification.counts()["standard"] == 25
    assert not classification.enriched_nodes.any()


def test_classification_with_circle():
    mesh, classification, triangulation = _plate(10)
    counts = classification.counts()
    assert counts["split"] > 0
    assert counts["void"] > 0
    assert counts["split_blending"] > 0
    assert sum(counts.values()) == 100
    split = classification.elements_of(ElementKind.SPLIT)
    assert set(triangulation) == set(int(e) for e in split)
    enriched = np.unique(mesh.elements[split].ravel())
    np.testing.assert_array_equal(np.flatnonzero(classification.enriched_nodes), enriched)
    # blending elements are uncut and touch an enriched node
    for e in classification.elements_of(ElementKind.SPLIT_BLENDING):
        assert np.all(classification.phi[mesh.elements[e]] > 0.0)
        assert classification.enriched_nodes[mesh.elements[e]].any()


def test_zero_level_moved_to_material_side():
    mesh = build_mesh(1.0, 1.0, 2, 2)
    phi = np.ones(mesh.n_nodes)
    phi[mesh.node_id(1, 1)] = 0.0
    classification = classify_elements(mesh, LevelSetField(phi=phi, cutout=CutoutSpec.none()))
    assert classification.phi[mesh.node_id(1, 1)] > 0.0
    assert classification.counts()["standard"] == 4


def test_plan_rules_per_kind():
    mesh, classification, triangulation = _plate(10)
    plan = quadrature_plan(classification, triangulation)
    for e, quad in enumerate(plan.elements):
        kind = ElementKind(int(classification.kinds[e]))
        if kind is ElementKind.VOID:
            assert quad.is_empty
        elif kind is ElementKind.SPLIT:
            n_material = sum(1 for t in triangulation[e] if t.material)
            assert quad.stiffness.size == 3 * n_material
            assert quad.mass.size == 6 * n_material
            assert quad.stiffness.weights.sum() == pytest.approx(_areas(triangulation[e], True))
        else:
            assert quad.stiffness.size == 4
    with pytest.raises(ValueError):
        quadrature_plan(classification, triangulation, triangle_points=5)


def test_material_area_without_cutout():
    mesh = build_mesh(2.0, 1.0, 6, 3)
    classification = classify_elements(mesh, cutout_level_set(mesh, CutoutSpec.none()))
    plan = quadrature_plan(classification, {})
    assert material_area(mesh, plan) == pytest.approx(2.0, rel=1e-12)


def test_cut_area_gate():
    exact = 1.0 - np.pi * 0.2 ** 2
    errors = []
    for nx in (20, 40):
        mesh, classification, triangulation = _plate(nx)
        area = material_area(mesh, quadrature_plan(classification, triangulation))
        errors.append(abs(area - exact) / exact)
    assert errors[1] < 0.01
    assert errors[0] >= 3.0 * errors[1]


if __name__ == "__main__":
    pytest.main()
