"""Spectral system of a sampling pattern and window, and the frame approximation.

Coefficients ``c_l`` (``|l| <= m``) represent the function

    sum_l c_l exp(2 pi i l x) / w(x)

and the matrices are

    Psi[j, l]   = int_0^1 exp(2 pi i (l - lambda_j) x) / w(x) dx
    Omega[l, j] = int_0^1 w(x) exp(-2 pi i (l - lambda_j) x) dx

so that ``Psi @ c`` gives the Fourier data ``fhat_j`` of that function.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg, window as win


def default_m(n, m_factor=1.0):
    return int(np.ceil(m_factor * n))


@dataclass(frozen=True, eq=False)
class SpectralSystem:
    pattern: object
    window: win.WindowSpec
    m: int
    Psi: np.ndarray
    Omega: np.ndarray

    @property
    def n(self):
        return self.pattern.n

    @property
    def modes(self):
        return np.arange(-self.m, self.m + 1)

    @cached_property
    def T(self):
        """``Psi^* Psi Omega``; shape (2m+1, 2n+1)."""
        PsiH = linalg.adjoint(self.Psi)
        return PsiH @ (self.Psi @ self.Omega)

    @cached_property
    def Psi_pinv(self):
        return linalg.pinv(self.Psi)


def build_system(pattern, window, m=None):
    if m is None:
        m = pattern.n
    if m < 1:
        raise ValueError("truncation m must be >= 1")
    lam = pattern.lambdas
    diff = np.arange(-m, m + 1)[None, :] - lam[:, None]
    Psi = win.recip_moment(window, 2 * np.pi * diff)
    Omega = win.transform(window, diff.T)
    for mat in (Psi, Omega):
        mat.setflags(write=False)
    return SpectralSystem(pattern, window, int(m), Psi, Omega)


def frame_coeffs(system, fhat):
    """Frame-approximation coefficients ``pinv(Psi) @ fhat``."""
    fhat = np.asarray(fhat, dtype=complex)
    if fhat.shape != (len(system.pattern),):
        raise ValueError(f"expected {len(system.pattern)} samples, got {fhat.shape}")
    return system.Psi_pinv @ fhat


def default_grid(m):
    return max(1024, 4 * (2 * m + 1))


def grid(N):
    return np.arange(N) / N


def evaluate(coeffs, window, N):
    """Values of ``sum_l c_l e^{2 pi i l x}/w(x)`` at ``x_p = p/N``, via one FFT."""
    coeffs = np.asarray(coeffs)
    m = (coeffs.shape[0] - 1) // 2
    if coeffs.shape[0] != 2 * m + 1:
        raise ValueError("coefficient vector must have odd length 2m+1")
    if N < 2 * m + 1:
        raise ValueError(f"grid size {N} aliases {2 * m + 1} modes")
    buf = np.zeros((N,) + coeffs.shape[1:], dtype=complex)
    buf[np.arange(-m, m + 1) % N] = coeffs
    vals = np.fft.ifft(buf, axis=0) * N
    w = win.evaluate(window, grid(N))
    return vals / w.reshape((N,) + (1,) * (coeffs.ndim - 1))


def evaluate_at(coeffs, window, x):
    """Direct summation at arbitrary points in [0, 1]."""
    coeffs = np.asarray(coeffs)
    m = (coeffs.shape[0] - 1) // 2
    x = np.asarray(x, dtype=float)
    basis = np.exp(2j * np.pi * np.multiply.outer(x, np.arange(-m, m + 1)))
    return basis @ coeffs / win.evaluate(window, x)
