import numpy as np
import pytest

from framegrid import dcf, frame, sampling, testfns
from framegrid.window import WindowSpec

REF_WINDOW = WindowSpec.exponential(5e-5)


def gl_composite(func, a, b, panels=32, order=64):
    """Fixed composite Gauss-Legendre rule; independent of framegrid.quadrature."""
    x, w = np.polynomial.legendre.leggauss(order)
    total = 0.0
    edges = np.linspace(a, b, panels + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        total = total + func(mid + half * x) @ (half * w)
    return total


def window_power_oracle(window, power, beta, panels=32):
    """int_0^1 w(x)**power exp(i beta x) dx, split at the kink."""
    beta = np.atleast_1d(beta)

    def g(x):
        wx = np.exp(-window.a * np.abs(x - 0.5)) if window.kind == "exponential" else np.ones_like(x)
        return wx[None, :] ** power * np.exp(1j * beta[:, None] * x[None, :])

    return gl_composite(g, 0.0, 0.5, panels) + gl_composite(g, 0.5, 1.0, panels)


def golden_section(func, lo, hi, tol=1e-10, max_iter=500):
    g = (np.sqrt(5) - 1) / 2
    c, d = hi - g * (hi - lo), lo + g * (hi - lo)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if hi - lo < tol:
            break
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - g * (hi - lo)
            fc = func(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + g * (hi - lo)
            fd = func(d)
    return 0.5 * (lo + hi)


@pytest.fixture(scope="session")
def ref_window():
    return REF_WINDOW


@pytest.fixture(scope="session")
def systems_512():
    """Jittered and log systems at n = 512 shared by the edge tests."""
    return {
        "jittered": frame.build_system(sampling.jittered(512, 0.25, 0), REF_WINDOW),
        "logarithmic": frame.build_system(sampling.logarithmic(512, 1.0), REF_WINDOW),
    }


@pytest.fixture(scope="session")
def bands_512(systems_512):
    """r = 25 optimal banded DCFs for the shared n = 512 systems."""
    return {k: dcf.optimal_banded(s, 25) for k, s in systems_512.items()}


@pytest.fixture(scope="session")
def ex41():
    return testfns.example_41()


@pytest.fixture(scope="session")
def ex42():
    return testfns.example_42()
