# file: test_mesh_levelset.py
import numpy as np
import pytest

from core.config import NO_CUTOUT_SURROGATE_DIAGONALS
from pipeline.errors import GeometryError
from pipeline.geometry.levelset import (
    CutoutKind,
    CutoutSpec,
    circle_level_set,
    cutout_level_set,
    ellipse_level_set,
)
from pipeline.geometry.mesh import StructuredMesh, build_mesh
from pipeline.geometry.vtk_dump import write_vtk


def _point_cloud(points) -> StructuredMesh:
    """Mesh stand-in whose nodes are arbitrary sample points."""
    points = np.asarray(points, dtype=float)
    return StructuredMesh(a=1.0, b=1.0, nx=1, ny=1, nodes=points, elements=np.zeros((0, 4), dtype=int))


# ------------------ Tests ------------------

def test_mesh_layout():
    mesh = build_mesh(2.0, 1.0, 4, 2)
    assert mesh.n_nodes == 15
    assert mesh.n_elements == 8
    assert mesh.dx == pytest.approx(0.5)
    assert mesh.element_size == pytest.approx(0.5)
    np.testing.assert_allclose(mesh.nodes[mesh.node_id(4, 2)], [2.0, 1.0])
    # counter-clockwise from the lower-left node
    np.testing.assert_allclose(mesh.element_coords(0), [[0, 0], [0.5, 0], [0.5, 0.5], [0, 0.5]])


def test_boundary_nodes():
    mesh = build_mesh(1.0, 1.0, 3, 3)
    assert list(mesh.boundary_nodes("x0")) == [0, 4, 8, 12]
    assert list(mesh.boundary_nodes("yb")) == [12, 13, 14, 15]
    assert len(mesh.all_boundary_nodes()) == 12
    with pytest.raises(ValueError):
        mesh.boundary_nodes("z0")


def test_node_incidence():
    mesh = build_mesh(1.0, 1.0, 2, 2)
    incidence = mesh.node_elements()
    assert len(incidence[0]) == 1
    assert len(incidence[mesh.node_id(1, 1)]) == 4
    assert len(incidence[mesh.node_id(1, 0)]) == 2


def test_invalid_mesh():
    with pytest.raises(GeometryError):
        build_mesh(0.0, 1.0, 2, 2)
    with pytest.raises(GeometryError):
        build_mesh(1.0, 1.0, 0, 2)


def test_circle_level_set_is_signed_distance():
    cloud = _point_cloud([[0.5, 0.5], [0.7, 0.5], [1.0, 0.5], [0.5, 0.25]])
    phi = circle_level_set(cloud, (0.5, 0.5), 0.2).phi
    np.testing.assert_allclose(phi, [-0.2, 0.0, 0.3, 0.05], atol=1e-12)


def test_ellipse_reduces_to_circle():
    mesh = build_mesh(1.0, 1.0, 8, 8)
    r = 0.2
    for theta in (0.0, 30.0, 90.0):
        ellipse = ellipse_level_set(mesh, (0.5, 0.5), r, r, theta).phi
        circle = circle_level_set(mesh, (0.5, 0.5), r).phi
        np.testing.assert_allclose(ellipse, circle / r, atol=1e-12)


def test_rotated_ellipse_axes():
    d, e, theta = 0.3, 0.1, 30.0
    t = np.radians(theta)
    major = np.array([np.cos(t), np.sin(t)])
    minor = np.array([-np.sin(t), np.cos(t)])
    center = np.array([0.5, 0.5])
    cloud = _point_cloud([center + d * major, center + e * minor, center - d * major, center + e * major])
    phi = ellipse_level_set(cloud, tuple(center), d, e, theta).phi
    np.testing.assert_allclose(phi[:3], 0.0, atol=1e-12)
    # inside along the major axis
    assert phi[3] < 0.0


def test_cutout_spec_validation():
    with pytest.raises(GeometryError):
        CutoutSpec.circle((0.5, 0.5), 0.0)
    with pytest.raises(GeometryError):
        CutoutSpec.ellipse((0.5, 0.5), 0.2, -0.1)
    spec = CutoutSpec.ellipse((0.5, 0.5), 0.2, 0.1, 90.0)
    hx, hy = spec.half_extents()
    assert hx == pytest.approx(0.1)
    assert hy == pytest.approx(0.2)
    assert spec.area() == pytest.approx(np.pi * 0.02)


def test_cutout_must_lie_inside_plate():
    mesh = build_mesh(1.0, 1.0, 4, 4)
    with pytest.raises(GeometryError):
        cutout_level_set(mesh, CutoutSpec.circle((0.5, 0.5), 0.5))
    with pytest.raises(GeometryError):
        cutout_level_set(mesh, CutoutSpec.circle((0.1, 0.5), 0.2))
    CutoutSpec.circle((0.5, 0.5), 0.49).check_inside(1.0, 1.0)


def test_no_cutout_surrogate():
    mesh = build_mesh(2.0, 1.0, 4, 2)
    field = cutout_level_set(mesh, CutoutSpec.none())
    assert field.cutout.kind is CutoutKind.NONE
    np.testing.assert_allclose(field.phi, NO_CUTOUT_SURROGATE_DIAGONALS * np.hypot(2.0, 1.0))


def test_cutout_dispatch():
    mesh = build_mesh(1.0, 1.0, 4, 4)
    circle = cutout_level_set(mesh, CutoutSpec.circle((0.5, 0.5), 0.2))
    assert circle.phi[mesh.node_id(2, 2)] == pytest.approx(-0.2)
    ellipse = cutout_level_set(mesh, CutoutSpec.ellipse((0.5, 0.5), 0.2, 0.1, 0.0))
    assert ellipse.phi[mesh.node_id(2, 2)] == pytest.approx(-1.0)


def test_write_vtk(tmp_path):
    pytest.importorskip("vtk")
    mesh = build_mesh(1.0, 1.0, 2, 2)
    phi = cutout_level_set(mesh, CutoutSpec.circle((0.5, 0.5), 0.2)).phi
    path = write_vtk(str(tmp_path / "plate"), mesh, {"phi": phi}, {"kind": np.zeros(4, dtype=int)})
    assert path.endswith("plate.vtk")
    text = (tmp_path / "plate.vtk").read_text()
    assert "phi" in text and "kind" in text
    with pytest.raises(ValueError, match="point field"):
        write_vtk(str(tmp_path / "bad.vtk"), mesh, {"phi": phi[:3]})


if __name__ == "__main__":
    pytest.main()
