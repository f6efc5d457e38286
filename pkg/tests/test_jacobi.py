import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigshift.errors import ConvergenceFailureError
from eigshift.linalg import DenseSymMatrix, jacobi_eigensolve


def assert_decomposition_invariants(A: DenseSymMatrix, decomposition) -> None:
    lam, Phi = decomposition.eigenvalues, decomposition.eigenvectors
    assert np.all(np.diff(lam) >= 0.0)
    assert np.max(np.abs(Phi.T @ Phi - np.eye(A.n))) <= 1e-12
    reconstruction = np.linalg.norm(A.entries - Phi @ np.diag(lam) @ Phi.T, "fro")
    assert reconstruction <= 1e-10 * max(A.frobenius_norm, np.finfo(float).tiny)


def test_diagonal_input_sorts_and_permutes():
    result = jacobi_eigensolve(DenseSymMatrix(np.diag([3.0, 1.0, 2.0])))
    np.testing.assert_array_equal(result.eigenvalues, [1.0, 2.0, 3.0])
    np.testing.assert_array_equal(np.abs(result.eigenvectors), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def test_two_by_two():
    result = jacobi_eigensolve(DenseSymMatrix([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(result.eigenvalues, [1.0, 3.0], atol=1e-14)
    np.testing.assert_allclose(np.abs(result.phi(0)), [2**-0.5, 2**-0.5], atol=1e-14)


def test_example_matrix(example_matrix):
    result = jacobi_eigensolve(example_matrix)
    np.testing.assert_array_equal(result.eigenvalues, [1.0, 2.0, 2.01, 4.0])
    np.testing.assert_array_equal(result.eigenvectors, np.eye(4))


def test_outputs_are_read_only(example_matrix):
    result = jacobi_eigensolve(example_matrix)
    with pytest.raises(ValueError):
        result.eigenvalues[0] = 0.0


def test_one_by_one():
    result = jacobi_eigensolve(DenseSymMatrix([[5.0]]))
    assert result.eigenvalues.tolist() == [5.0]
    assert result.eigenvectors.tolist() == [[1.0]]


def test_sweep_cap_raises_with_residual(random_symmetric):
    with pytest.raises(ConvergenceFailureError) as info:
        jacobi_eigensolve(random_symmetric(12, 3), max_sweeps=1)
    assert info.value.residual > 0.0


@settings(max_examples=100)
@given(st.integers(min_value=1, max_value=50), st.integers(min_value=0, max_value=10_000))
def test_random_symmetric_invariants(n, seed):
    B = np.random.default_rng(seed).standard_normal((n, n))
    A = DenseSymMatrix(B + B.T)
    assert_decomposition_invariants(A, jacobi_eigensolve(A))


def test_repeated_eigenvalues():
    Q, _ = np.linalg.qr(np.random.default_rng(7).standard_normal((6, 6)))
    M = Q @ np.diag([1.0, 1.0, 1.0, 2.0, 2.0, 5.0]) @ Q.T
    A = DenseSymMatrix(0.5 * (M + M.T))
    result = jacobi_eigensolve(A)
    assert_decomposition_invariants(A, result)
    np.testing.assert_allclose(result.eigenvalues, [1, 1, 1, 2, 2, 5], atol=1e-12)
