# file: test_eigen.py
import numpy as np
import pytest
from scipy.sparse import diags, identity

from core.config import DENSE_SOLVER_LIMIT
from pipeline.errors import SolverError
from pipeline.solver.eigen import generalized_symmetric_eig


def _random_spd(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    Q = rng.normal(size=(n, n))
    return Q @ Q.T + n * np.eye(n)


# ------------------ Tests ------------------

def test_dense_standard_pencil():
    A = np.diag(np.arange(1.0, 11.0))
    result = generalized_symmetric_eig(A, 2.0 * np.eye(10), 3)
    assert result.branch == "dense"
    np.testing.assert_allclose(result.values, [0.5, 1.0, 1.5], rtol=1e-12)


def test_dense_matches_full_solution():
    A, B = _random_spd(40, 1), _random_spd(40, 2)
    result = generalized_symmetric_eig(A, B, 5)
    expected = np.sort(np.linalg.eigvals(np.linalg.solve(B, A)).real)[:5]
    np.testing.assert_allclose(result.values, expected, rtol=1e-9)
    for j in range(5):
        v = result.vectors[:, j]
        assert np.linalg.norm(A @ v - result.values[j] * B @ v) < 1e-8 * np.linalg.norm(A @ v)


def test_widely_spread_spectrum_keeps_lowest_accurate():
    # stiffness-to-inertia ratios spanning many decades, as in thin plates
    values = np.logspace(0, 12, 200)
    result = generalized_symmetric_eig(np.diag(values), np.eye(200), 2)
    np.testing.assert_allclose(result.values, values[:2], rtol=1e-12)


def test_indefinite_pencil_reports_negative_value():
    A = np.diag([-2.0, 1.0, 3.0])
    result = generalized_symmetric_eig(A, np.eye(3), 1)
    assert result.values[0] == pytest.approx(-2.0)


def test_sparse_branch():
    n = DENSE_SOLVER_LIMIT + 500
    A = diags(np.arange(1.0, n + 1.0)).tocsr()
    result = generalized_symmetric_eig(A, identity(n, format="csr"), 3)
    assert result.branch == "sparse"
    np.testing.assert_allclose(result.values, [1.0, 2.0, 3.0], rtol=1e-9)


def test_buckling_inverted_pencil():
    # K_G singular: its null space maps to infinite λ and is dropped
    A = np.diag([2.0, 4.0, 8.0])
    B = np.diag([1.0, 1.0, 0.0])
    result = generalized_symmetric_eig(A, B, 3, mode="buckling")
    np.testing.assert_allclose(result.values, [2.0, 4.0], rtol=1e-12)
    assert result.vectors.shape == (3, 2)


def test_buckling_sparse_branch():
    n = DENSE_SOLVER_LIMIT + 200
    A = diags(np.full(n, 10.0)).tocsr()
    B = diags(np.concatenate([np.ones(n - 2), [4.0, 5.0]])).tocsr()
    result = generalized_symmetric_eig(A, B, 2, mode="buckling")
    assert result.branch == "sparse"
    assert result.values[0] == pytest.approx(2.0, rel=1e-9)


def test_no_positive_buckling_load():
    with pytest.raises(SolverError, match="no positive"):
        generalized_symmetric_eig(np.eye(3), -np.eye(3), 2, mode="buckling")


def test_empty_system_and_unknown_mode():
    with pytest.raises(SolverError, match="empty"):
        generalized_symmetric_eig(np.zeros((0, 0)), np.zeros((0, 0)), 1)
    with pytest.raises(ValueError):
        generalized_symmetric_eig(np.eye(2), np.eye(2), 1, mode="modal")


def test_eigencount_clipped_to_size():
    result = generalized_symmetric_eig(np.diag([3.0, 1.0]), np.eye(2), 10)
    np.testing.assert_allclose(result.values, [1.0, 3.0])


if __name__ == "__main__":
    pytest.main()
