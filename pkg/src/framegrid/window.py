"""Window functions with closed-form transforms and reciprocal moments.

Every integral here has the form ``int_0^1 w(x)**p * exp(i*beta*x) dx``.
For the exponential window ``w(x) = exp(-a|x - 1/2|)`` the integrand is an
exponential on each half of [0, 1], which gives

    exp(i*beta/2) / 2 * [phi1((k - i*beta)/2) + phi1((k + i*beta)/2)]

with ``k = -p*a`` and ``phi1(z) = (exp(z) - 1)/z``.  The constant window is
the ``a = 0`` case.
"""
from dataclasses import dataclass

import numpy as np

from . import quadrature

_TAYLOR_RADIUS = 1e-6


def cexpm1(z):
    """``exp(z) - 1`` without cancellation for complex ``z``."""
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    re = np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2
    im = np.exp(x) * np.sin(y)
    return re + 1j * im


def phi1(z):
    """``(exp(z) - 1)/z`` with the removable singularity at 0 filled in."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    small = np.abs(z) < _TAYLOR_RADIUS
    safe = np.where(small, 1.0, z)
    out = cexpm1(safe) / safe
    if np.any(small):
        zs = z[small]
        # 6 terms: truncation error ~ |z|^6/5040, far below 1e-12 here
        out[small] = 1 + zs / 2 * (1 + zs / 3 * (1 + zs / 4 * (1 + zs / 5 * (1 + zs / 6))))
    return out


@dataclass(frozen=True)
class WindowSpec:
    """Positive window on [0, 1].

    Parameters
    ----------
    kind : {"exponential", "constant"}
    a : float
        Decay rate of the exponential window, ``w(x) = exp(-a|x - 0.5|)``.
        Ignored for the constant window.
    """

    kind: str = "exponential"
    a: float = 5e-5

    def __post_init__(self):
        if self.kind not in ("exponential", "constant"):
            raise ValueError(f"unknown window kind {self.kind!r}")
        if self.kind == "exponential" and not self.a > 0:
            raise ValueError("exponential window needs a > 0")

    @classmethod
    def exponential(cls, a=5e-5):
        return cls("exponential", float(a))

    @classmethod
    def constant(cls):
        return cls("constant", 0.0)

    @classmethod
    def parse(cls, text):
        """Parse ``exp:a=<real>`` or ``const``."""
        text = text.strip()
        if text in ("const", "constant"):
            return cls.constant()
        head, _, rest = text.partition(":")
        if head in ("exp", "exponential"):
            if not rest:
                return cls.exponential()
            key, _, val = rest.partition("=")
            if key.strip() != "a":
                raise ValueError(f"bad window parameter in {text!r}")
            return cls.exponential(float(val))
        raise ValueError(f"cannot parse window {text!r}")

    def __str__(self):
        return "const" if self.kind == "constant" else f"exp:a={self.a!r}"

    @property
    def _rate(self):
        return self.a if self.kind == "exponential" else 0.0

    @property
    def alpha_lower(self):
        return float(np.exp(-self._rate / 2))

    @property
    def alpha_upper(self):
        return 1.0

    def __call__(self, x):
        return evaluate(self, x)


def evaluate(window, x):
    """Window values at ``x`` in [0, 1]."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ValueError("window is defined on [0, 1] only")
    return np.exp(-window._rate * np.abs(x - 0.5))


def _power_integral(window, power, beta):
    beta = np.asarray(beta, dtype=float)
    k = -power * window._rate
    flat = beta.ravel()
    out = 0.5 * np.exp(0.5j * flat) * (phi1((k - 1j * flat) / 2) + phi1((k + 1j * flat) / 2))
    return out.reshape(beta.shape) if beta.ndim else complex(out[0])


def transform(window, xi):
    """``int_0^1 w(x) exp(-2 pi i xi x) dx``."""
    return _power_integral(window, 1, -2 * np.pi * np.asarray(xi, dtype=float))


def recip_moment(window, beta):
    """``int_0^1 exp(i beta x) / w(x) dx``."""
    return _power_integral(window, -1, beta)


def recip_second_moment(window, beta):
    """``int_0^1 exp(i beta x) / w(x)**2 dx``."""
    return _power_integral(window, -2, beta)


def power_integral_quad(window, power, beta, tol=1e-13):
    """Adaptive-quadrature fallback for ``int_0^1 w**power exp(i beta x) dx``.

    Split at the kink x = 1/2.  Intended for windows without closed forms
    and as a cross-check of the closed forms above.
    """
    beta = np.atleast_1d(np.asarray(beta, dtype=float))

    def integrand(x):
        return evaluate(window, x)[None, :] ** power * np.exp(1j * beta[:, None] * x[None, :])

    return quadrature.integrate(integrand, 0.0, 0.5, tol) + quadrature.integrate(
        integrand, 0.5, 1.0, tol
    )
