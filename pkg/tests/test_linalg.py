import numpy as np
import pytest

from framegrid import linalg


def _random_matrix(rng, rows, cols, spectrum):
    u, _ = np.linalg.qr(rng.standard_normal((rows, rows)) + 1j * rng.standard_normal((rows, rows)))
    v, _ = np.linalg.qr(rng.standard_normal((cols, cols)) + 1j * rng.standard_normal((cols, cols)))
    k = len(spectrum)
    return (u[:, :k] * spectrum) @ v[:, :k].conj().T


def test_pinv_identity():
    np.testing.assert_allclose(linalg.pinv(np.eye(5)), np.eye(5), atol=1e-15)


def test_pinv_rank_deficient_diagonal():
    np.testing.assert_allclose(linalg.pinv(np.diag([2.0, 0.0]), 1e-12), np.diag([0.5, 0.0]))


def test_pinv_left_inverse():
    rng = np.random.default_rng(0)
    M = _random_matrix(rng, 9, 7, np.linspace(3, 0.5, 7))
    np.testing.assert_allclose(linalg.pinv(M) @ M, np.eye(7), atol=1e-9)


@pytest.mark.parametrize("shape", [(6, 4), (40, 60), (300, 300)])
def test_penrose_identities(shape):
    rng = np.random.default_rng(sum(shape))
    k = min(shape)
    A = _random_matrix(rng, *shape, np.logspace(0, -4, k))
    P = linalg.pinv(A)
    rel = lambda X, Y: np.linalg.norm(X - Y) / np.linalg.norm(Y)
    assert rel(A @ P @ A, A) <= 1e-10
    assert rel(P @ A @ P, P) <= 1e-10
    assert rel((A @ P).conj().T, A @ P) <= 1e-10
    assert rel((P @ A).conj().T, P @ A) <= 1e-10


def test_lstsq_cases():
    b = np.array([1 + 2j, -3, 0.5j])
    np.testing.assert_allclose(linalg.lstsq(np.eye(3), b), b)
    np.testing.assert_allclose(linalg.lstsq(np.ones((2, 1)), np.array([0.0, 2.0])), [1.0])
    with pytest.raises(ValueError):
        linalg.lstsq(np.eye(3), b[:2])


def test_lstsq_planted():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((12, 4)) + 1j * rng.standard_normal((12, 4))
    x0 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    x = linalg.lstsq(A, A @ x0)
    assert np.max(np.abs(x - x0)) < 1e-10


def test_lstsq_residual_orthogonal_and_matches_pinv():
    rng = np.random.default_rng(6)
    A = rng.standard_normal((30, 8)) + 1j * rng.standard_normal((30, 8))
    b = rng.standard_normal(30) + 1j * rng.standard_normal(30)
    x = linalg.lstsq(A, b)
    res = b - A @ x
    assert np.linalg.norm(A.conj().T @ res) <= 1e-10 * np.linalg.norm(A) * np.linalg.norm(b)
    np.testing.assert_allclose(x, linalg.pinv(A) @ b, atol=1e-9)


def test_singular_values():
    np.testing.assert_allclose(linalg.singular_values(np.eye(3)), [1, 1, 1])
    np.testing.assert_allclose(linalg.singular_values(np.diag([1.0, 3.0])), [3, 1])


def test_batched_pinv():
    rng = np.random.default_rng(8)
    stack = rng.standard_normal((5, 7, 3)) + 1j * rng.standard_normal((5, 7, 3))
    P = linalg.pinv(stack)
    for k in range(5):
        np.testing.assert_allclose(P[k], linalg.pinv(stack[k]), atol=1e-13)


def test_helpers():
    M = np.arange(6).reshape(2, 3) * (1 + 1j)
    np.testing.assert_array_equal(linalg.adjoint(M), M.conj().T)
    np.testing.assert_array_equal(linalg.column(M, 1), M[:, 1])
    np.testing.assert_array_equal(linalg.matmul(M, linalg.adjoint(M)), M @ M.conj().T)
    with pytest.raises(ValueError):
        linalg.pinv(np.eye(2), -1.0)
