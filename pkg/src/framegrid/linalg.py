"""Dense complex linear algebra on numpy arrays (LAPACK SVD underneath)."""
import numpy as np


class LinAlgError(ArithmeticError):
    """SVD failed to converge."""


def default_rank_tol(shape):
    return 1e-12 * max(shape[-2:])


def _svd(M, full_matrices=False, compute_uv=True):
    try:
        return np.linalg.svd(M, full_matrices=full_matrices, compute_uv=compute_uv)
    except np.linalg.LinAlgError as exc:
        raise LinAlgError(str(exc)) from exc


def singular_values(M):
    """Singular values in descending order."""
    return _svd(np.asarray(M), compute_uv=False)


def pinv(M, rank_tol=None):
    """Moore-Penrose pseudo-inverse.

    Singular values below ``rank_tol * s_max`` are treated as zero.
    Stacks of matrices (leading batch axes) are supported.
    """
    M = np.asarray(M)
    if rank_tol is None:
        rank_tol = default_rank_tol(M.shape)
    if rank_tol < 0:
        raise ValueError("rank_tol must be non-negative")
    if M.size == 0:
        return np.zeros(M.shape[:-2] + M.shape[-2:][::-1], dtype=M.dtype)
    u, s, vh = _svd(M)
    cutoff = rank_tol * s[..., :1]
    keep = s > cutoff
    s_inv = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)
    return np.matmul(adjoint(vh) * s_inv[..., None, :], adjoint(u))


def lstsq(A, b, rank_tol=None):
    """Minimum-norm least-squares solution of ``A x = b``."""
    A = np.asarray(A)
    b = np.asarray(b)
    if A.shape[-2] != b.shape[0]:
        raise ValueError(f"row mismatch: A has {A.shape[-2]} rows, b has {b.shape[0]}")
    return pinv(A, rank_tol) @ b


def adjoint(M):
    return np.conj(np.swapaxes(M, -1, -2))


def matmul(A, B):
    return np.matmul(A, B)


def column(M, j):
    return np.asarray(M)[:, j]


def spectral_norm(M):
    return float(singular_values(M)[0])


def condition_number(M):
    s = singular_values(M)
    return float(s[0] / s[-1]) if s[-1] > 0 else np.inf
