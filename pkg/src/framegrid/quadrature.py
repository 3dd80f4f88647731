"""Adaptive quadrature for smooth integrands without closed forms."""
import numpy as np
from scipy.integrate import quad_vec


class QuadratureError(RuntimeError):
    """Raised when adaptive refinement fails to reach the requested tolerance."""


def integrate(func, a, b, tol=1e-13, limit=20000):
    """Integrate a vectorised integrand over ``[a, b]`` with ``quad_vec``.

    ``func`` maps a 1-D array of abscissae to an array whose last axis
    matches them (one row per frequency, say), so the same callable also
    suits fixed rules.  ``tol`` is an absolute bound on the worst component.
    """
    def point(x):
        return func(np.array([x]))[..., 0]

    res, err, info = quad_vec(point, a, b, epsabs=tol, epsrel=0, limit=limit, full_output=True)
    # status 2 means round-off stopped refinement: the result is as good as doubles allow
    if info.status == 1:
        raise QuadratureError(f"no convergence to {tol:g} on [{a}, {b}] (error estimate {err:.1e})")
    return res
