"""Piecewise test functions with exact values, jumps and Fourier data."""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import quadrature


def _sinhc(z):
    """sinh(z)/z."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    small = np.abs(z) < 1e-2
    safe = np.where(small, 1.0, z)
    out = np.sinh(safe) / safe
    z2 = z[small] ** 2
    out[small] = 1 + z2 / 6 * (1 + z2 / 20 * (1 + z2 / 42 * (1 + z2 / 72 * (1 + z2 / 110))))
    return out


def _tsinh(z):
    """(z cosh z - sinh z)/z**2 == 1/2 int_{-1}^{1} t exp(z t) dt."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    small = np.abs(z) < 1e-1
    safe = np.where(small, 1.0, z)
    out = (safe * np.cosh(safe) - np.sinh(safe)) / safe**2
    zs = z[small]
    z2 = zs**2
    # sum over odd k of z^k / (k! (k+2))
    out[small] = zs * (1 / 3 + z2 * (1 / 30 + z2 * (1 / 840 + z2 * (1 / 45360 + z2 / 3991680))))
    return out


def _moments(c, x0, x1):
    """(int e^{cx} dx, int x e^{cx} dx) over [x0, x1], elementwise in ``c``."""
    m, h = 0.5 * (x0 + x1), 0.5 * (x1 - x0)
    base = np.exp(c * m)
    e0 = base * 2 * h * _sinhc(c * h)
    e1 = m * e0 + base * 2 * h * h * _tsinh(c * h)
    return e0, e1


@dataclass(frozen=True)
class Piece:
    """``p + q x + amp*sin(u x + phase)`` on ``[left, right]``.

    If ``func`` is given the piece is that smooth callable instead and its
    transform is computed by adaptive quadrature.
    """

    left: float
    right: float
    p: float = 0.0
    q: float = 0.0
    amp: float = 0.0
    u: float = 0.0
    phase: float = 0.0
    func: Optional[Callable] = None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.func is not None:
            return self.func(x)
        return self.p + self.q * x + self.amp * np.sin(self.u * x + self.phase)

    def fourier(self, lam, tol=1e-13):
        lam = np.asarray(lam, dtype=float)
        if self.func is not None:
            return _quad_fourier(self.func, self.left, self.right, lam, tol)
        c = -2j * np.pi * lam
        e0, e1 = _moments(c, self.left, self.right)
        out = self.p * e0 + self.q * e1
        if self.amp:
            ep, _ = _moments(c + 1j * self.u, self.left, self.right)
            em, _ = _moments(c - 1j * self.u, self.left, self.right)
            out = out + self.amp * (np.exp(1j * self.phase) * ep - np.exp(-1j * self.phase) * em) / 2j
        return out


def _quad_fourier(func, a, b, lam, tol):
    flat = lam.ravel()

    def integrand(x):
        return func(x)[None, :] * np.exp(-2j * np.pi * flat[:, None] * x[None, :])

    return quadrature.integrate(integrand, a, b, tol).reshape(lam.shape)


@dataclass(frozen=True)
class PiecewiseFunction:
    """Function supported in [0, 1], zero outside its pieces.

    At a breakpoint :meth:`__call__` returns the right limit.
    """

    pieces: tuple
    name: str = ""

    def __post_init__(self):
        prev = 0.0
        for pc in self.pieces:
            if not (prev <= pc.left < pc.right <= 1.0):
                raise ValueError("pieces must be ordered, disjoint and inside [0, 1]")
            prev = pc.right

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any((x < 0) | (x > 1)):
            raise ValueError("test functions are evaluated on [0, 1]")
        out = np.zeros(x.shape)
        for pc in self.pieces:
            # half-open [left, right) gives right limits; last point of [0, 1] closes
            inside = (x >= pc.left) & ((x < pc.right) | ((pc.right == 1.0) & (x == 1.0)))
            out[inside] = pc(x[inside])
        return out if out.ndim else float(out)

    def fourier(self, lam):
        """``int_0^1 f(x) exp(-2 pi i lam x) dx``."""
        lam = np.asarray(lam, dtype=float)
        out = np.zeros(lam.size, dtype=complex)
        for pc in self.pieces:
            out = out + pc.fourier(lam.ravel())
        return out.reshape(lam.shape) if lam.ndim else complex(out[0])

    def jumps(self):
        """Interior jumps as ``(locations, amplitudes)`` (right minus left limit)."""
        limits = {}
        for pc in self.pieces:
            limits.setdefault(pc.left, [0.0, 0.0])[1] = float(pc(pc.left))
            limits.setdefault(pc.right, [0.0, 0.0])[0] = float(pc(pc.right))
        locs, amps = [], []
        for x in sorted(limits):
            left, right = limits[x]
            if 0.0 < x < 1.0 and right != left:
                locs.append(x)
                amps.append(right - left)
        return np.array(locs), np.array(amps)

    def l2_norm_squared(self, tol=1e-13):
        total = 0.0
        for pc in self.pieces:
            total += quadrature.integrate(lambda x, pc=pc: pc(x) ** 2, pc.left, pc.right, tol)
        return float(total)


def _ex41(x):
    u = x - 0.5
    return np.cos(np.pi * u**2) ** 2 * np.sin(10 * u**2)


def example_41():
    """cos^2(pi (x-1/2)^2) sin(10 (x-1/2)^2) on [0, 1]; no interior jumps."""
    return PiecewiseFunction((Piece(0.0, 1.0, func=_ex41),), "ex41")


def example_42():
    """Four-branch piecewise function with six jumps."""
    return PiecewiseFunction(
        (
            Piece(1 / 8, 1 / 4, p=1.5),
            Piece(3 / 8, 9 / 16, p=7 / 4, q=-0.5, amp=1.0, u=2 * np.pi, phase=-0.25),
            Piece(11 / 16, 7 / 8, p=-5.0, q=11 / 4),
        ),
        "ex42",
    )


FUNCTIONS = {"ex41": example_41, "ex42": example_42}


def get(name):
    try:
        return FUNCTIONS[name]()
    except KeyError:
        raise ValueError(f"unknown function {name!r}; choose from {sorted(FUNCTIONS)}") from None


def sample(func, pattern, noise=0.0, seed=0):
    """Fourier data at the pattern's frequencies, optionally with complex noise."""
    fhat = func.fourier(pattern.lambdas)
    if noise:
        rng = np.random.default_rng([int(seed), 1])
        fhat = fhat + noise * (rng.standard_normal(fhat.size) + 1j * rng.standard_normal(fhat.size)) / np.sqrt(2)
    return fhat


def write_samples(lambdas, fhat, path):
    """Three-column text: lambda, Re fhat, Im fhat."""
    with open(path, "w") as fh:
        for lam, val in zip(lambdas, fhat):
            fh.write(f"{lam:.17g} {val.real:.17g} {val.imag:.17g}\n")


def read_samples(path):
    data = np.loadtxt(path, ndmin=2)
    if data.shape[1] != 3:
        raise ValueError(f"{path}: expected 3 columns (lambda, re, im)")
    return data[:, 0], data[:, 1] + 1j * data[:, 2]
