# file: test_laminate.py
import numpy as np
import pytest

from config.materials import GRAPHITE_EPOXY, ISOTROPIC_STEEL
from core.config import SHEAR_CORRECTION
from pipeline.errors import GeometryError, InvalidMaterialError, MaterialRangeError
from pipeline.material.lamina import properties_at, reduced_stiffness
from pipeline.material.laminate import (
    Environment,
    LaminateStack,
    ModuliBasis,
    laminate_integrals,
    parse_layup,
)

TABLES = {"graphite_epoxy": GRAPHITE_EPOXY, "isotropic_steel": ISOTROPIC_STEEL}
H = 0.01


def _cross_ply(environment=Environment()):
    stack = LaminateStack.from_layup((0.0, 90.0, 90.0, 0.0), H, "graphite_epoxy")
    return laminate_integrals(stack, environment, TABLES)


# ------------------ Tests ------------------

def test_parse_layup():
    assert parse_layup("0/90/90/0") == (0.0, 90.0, 90.0, 0.0)
    assert parse_layup(" 45 ") == (45.0,)
    assert parse_layup("(0/-45/45/90)") == (0.0, -45.0, 45.0, 90.0)
    with pytest.raises(ValueError):
        parse_layup("0/ninety")
    with pytest.raises(ValueError):
        parse_layup("")


def test_equal_ply_thicknesses():
    stack = LaminateStack.from_layup(parse_layup("0/90/90/0"), H, "graphite_epoxy")
    assert len(stack.plies) == 4
    assert all(ply.thickness == pytest.approx(H / 4) for ply in stack.plies)
    np.testing.assert_allclose(stack.interfaces, [-H / 2, -H / 4, 0.0, H / 4, H / 2], atol=1e-15)
    assert stack.is_symmetric()
    assert not LaminateStack.from_layup((0.0, 90.0), H, "graphite_epoxy").is_symmetric()


def test_bad_stacks_rejected():
    with pytest.raises(GeometryError):
        LaminateStack.from_layup((0.0, 90.0), -1.0, "graphite_epoxy")
    with pytest.raises(GeometryError):
        LaminateStack.from_layup((0.0, 90.0), H, "graphite_epoxy", thicknesses=(0.004, 0.004))


def test_cross_ply_stiffness():
    integrals = _cross_ply()
    p = properties_at(GRAPHITE_EPOXY, 300.0, 0.0)
    Q = reduced_stiffness(p).Q

    # symmetric stack: no bending-extension coupling
    np.testing.assert_allclose(integrals.B, 0.0, atol=1e-6 * np.abs(integrals.A).max() * H)
    assert integrals.A[0, 0] == pytest.approx(0.5 * H * (Q[0, 0] + Q[1, 1]))
    assert integrals.A[0, 0] == pytest.approx(integrals.A[1, 1])
    assert integrals.A[0, 2] == pytest.approx(0.0, abs=1e-6)
    # outer 0° plies dominate bending along x
    assert integrals.D[0, 0] > integrals.D[1, 1]
    expected_D11 = (Q[0, 0] * (1 - 1 / 8) + Q[1, 1] / 8) * H ** 3 / 12
    assert integrals.D[0, 0] == pytest.approx(expected_D11)
    for name in ("A", "B", "D", "As"):
        matrix = getattr(integrals, name)
        np.testing.assert_allclose(matrix, matrix.T)


def test_isotropic_plate_constants():
    stack = LaminateStack.from_layup((0.0,), H, "isotropic_steel")
    integrals = laminate_integrals(stack, Environment(), TABLES)
    E, nu = 210.0e9, 0.3
    G = E / (2 * (1 + nu))
    assert integrals.D[0, 0] == pytest.approx(E * H ** 3 / (12 * (1 - nu ** 2)))
    assert integrals.D[2, 2] == pytest.approx(G * H ** 3 / 12)
    np.testing.assert_allclose(integrals.As, SHEAR_CORRECTION * G * H * np.eye(2), rtol=1e-12)
    assert integrals.p == pytest.approx(7850.0 * H)
    assert integrals.I == pytest.approx(7850.0 * H ** 3 / 12)
    assert not integrals.has_hygro_load


def test_baseline_environment_has_no_load():
    integrals = _cross_ply()
    assert Environment().is_baseline
    assert not integrals.has_hygro_load


def test_moisture_resultants():
    environment = Environment(moisture=0.1)
    assert environment.delta_c == pytest.approx(0.001)
    integrals = _cross_ply(environment)
    assert integrals.has_hygro_load
    N = integrals.N_hygro
    # balanced cross-ply: equal in-plane resultants, no shear or moments
    assert N[0] > 0.0
    assert N[0] == pytest.approx(N[1])
    assert N[2] == pytest.approx(0.0, abs=1e-9 * N[0])
    np.testing.assert_allclose(integrals.M_hygro, 0.0, atol=1e-12 * N[0])


def test_temperature_resultants_scale_with_rise():
    n_25 = _cross_ply(Environment(temperature=325.0)).N_hygro[0]
    n_50 = _cross_ply(Environment(temperature=350.0)).N_hygro[0]
    assert n_25 > 0.0
    # larger rise on softer plies, still more load
    assert n_50 > n_25


def test_reference_moduli_keep_baseline_stiffness():
    baseline = _cross_ply()
    reference = _cross_ply(Environment(temperature=325.0, moduli=ModuliBasis.REFERENCE))
    degraded = _cross_ply(Environment(temperature=325.0))
    np.testing.assert_allclose(reference.A, baseline.A, rtol=1e-12)
    np.testing.assert_allclose(reference.D, baseline.D, rtol=1e-12)
    assert degraded.A[1, 1] < baseline.A[1, 1]
    # same expansion strain on stiffer plies
    assert reference.N_hygro[0] > degraded.N_hygro[0] > 0.0
    p = properties_at(GRAPHITE_EPOXY, 300.0, 0.0)
    q = reduced_stiffness(p).Q
    strain = np.array([p.alpha1, p.alpha2]) * 25.0
    # half the thickness at 0°, half at 90°
    stress = q[:2, :2] @ strain
    assert reference.N_hygro[0] == pytest.approx(0.5 * H * (stress[0] + stress[1]), rel=1e-10)


def test_reference_moduli_still_range_checked():
    with pytest.raises(MaterialRangeError):
        _cross_ply(Environment(moisture=2.0, moduli=ModuliBasis.REFERENCE))


def test_unsymmetric_stack_has_moment():
    stack = LaminateStack.from_layup((0.0, 90.0), H, "graphite_epoxy")
    integrals = laminate_integrals(stack, Environment(moisture=0.5), TABLES)
    assert abs(integrals.B[0, 0]) > 0.0
    assert abs(integrals.M_hygro[0]) > 0.0


def test_unknown_ply_material():
    stack = LaminateStack.from_layup((0.0,), H, "balsa")
    with pytest.raises(InvalidMaterialError):
        laminate_integrals(stack, Environment(), TABLES)


def test_environment_out_of_range():
    stack = LaminateStack.from_layup((0.0, 90.0, 90.0, 0.0), H, "graphite_epoxy")
    with pytest.raises(MaterialRangeError):
        laminate_integrals(stack, Environment(moisture=2.0), TABLES)


if __name__ == "__main__":
    pytest.main()
