"""Jump detection from non-uniform Fourier data via concentration coefficients."""
from dataclasses import dataclass
import logging

import numpy as np

from . import dcf, frame

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaussianBump:
    """``h(u) = exp(-b u**2)``, so ``h(0) = 1``."""

    b: float = 5.0

    def __call__(self, u):
        return np.exp(-self.b * np.asarray(u, dtype=float) ** 2)

    def transform(self, xi):
        """Full-line transform ``sqrt(pi/b) exp(-pi**2 xi**2 / b)``."""
        xi = np.asarray(xi, dtype=float)
        return np.sqrt(np.pi / self.b) * np.exp(-np.pi**2 * xi**2 / self.b)


def bump_transform(bump, xi):
    return bump.transform(xi)


@dataclass(frozen=True)
class EdgeConfig:
    """
    Parameters
    ----------
    epsilon : float
        Width of the regularised jump ``h((x - xi)/epsilon)``.
    bump : GaussianBump
    threshold : float
        Peaks must exceed ``threshold * max(global max, scale)`` in magnitude.
    scale : float
        Floor on the reference magnitude, so a map that is everywhere small
        (smooth input) yields no peaks.
    method : {"fcg", "fa", "cg-trapezoid"}
    r : int or None
        Bandwidth for ``fcg``; None uses ceil(log2 n).
    boundary_margin : float or None
        Peaks closer than this to x = 0 or 1 are ignored; None uses
        ``epsilon``.  The periodic reconstruction folds the support
        endpoints together, so a nonzero ``f(0)`` or ``f(1)`` shows up there.
    """

    epsilon: float = 0.02
    bump: GaussianBump = GaussianBump()
    threshold: float = 0.3
    scale: float = 1.0
    method: str = "fcg"
    r: object = None
    boundary_margin: object = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")
        if self.method not in ("fcg", "fa", "cg-trapezoid"):
            raise ValueError(f"unknown edge method {self.method!r}")


def epsilon_policy(text, n):
    """``const:<v>`` or ``power:<c>,<gamma>`` (epsilon = c n**-gamma)."""
    head, _, rest = text.partition(":")
    if head == "const":
        return float(rest)
    if head == "power":
        c, gamma = (float(v) for v in rest.split(","))
        return c * n ** (-gamma)
    raise ValueError(f"cannot parse epsilon policy {text!r}")


def concentration_coeffs(pattern, fhat, config):
    """``2 pi i lambda_j eps fhat_j h^(lambda_j eps)``."""
    lam = pattern.lambdas
    fhat = np.asarray(fhat, dtype=complex)
    if fhat.shape != lam.shape:
        raise ValueError("sample count does not match the pattern")
    eps = config.epsilon
    return 2j * np.pi * lam * eps * fhat * config.bump.transform(lam * eps)


def coefficient_map(system, config, D=None):
    """Return ``fhat -> coefficients`` for the configured method."""
    if config.method == "fa":
        return lambda v: frame.frame_coeffs(system, v)
    if D is None:
        if config.method == "cg-trapezoid":
            D = dcf.trapezoid(system.pattern)
        else:
            r = config.r if config.r is not None else dcf.default_bandwidth(system.n)
            D = dcf.optimal_banded(system, r)
    return lambda v: dcf.fcg_coeffs(system, D, v)


def edge_map(system, config, fhat, D=None, grid_size=None):
    """Real edge map on the uniform grid and the L2 norm of its imaginary residue."""
    coeffs = coefficient_map(system, config, D)(concentration_coeffs(system.pattern, fhat, config))
    N = grid_size or frame.default_grid(system.m)
    vals = frame.evaluate(coeffs, system.window, N)
    residue = float(np.sqrt(np.mean(vals.imag**2)))
    log.debug("edge map imaginary residue %.3e", residue)
    return vals.real, residue


def target_field(locations, amplitudes, config, x):
    """``sum_j [f](xi_j) h((x - xi_j)/eps)``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape)
    for xi, amp in zip(locations, amplitudes):
        out += amp * config.bump((x - xi) / config.epsilon)
    return out


def locate_jumps(samples, config, x=None):
    """Greedy peak picking on ``|samples|``.

    Candidates are strict local maxima of ``|samples|`` (periodic
    neighbours) above ``threshold * max(global max, scale)`` and away from
    the boundary by ``boundary_margin``; they are
    accepted in decreasing magnitude unless within ``epsilon`` of an
    accepted peak.  Returns ``(locations, amplitudes)`` sorted by location.
    """
    samples = np.asarray(samples, dtype=float)
    N = samples.size
    if x is None:
        x = frame.grid(N)
    mag = np.abs(samples)
    ref = max(mag.max(initial=0.0), config.scale)
    cut = config.threshold * ref
    is_peak = (mag > np.roll(mag, 1)) & (mag > np.roll(mag, -1)) & (mag > cut)
    margin = config.epsilon if config.boundary_margin is None else config.boundary_margin
    is_peak &= (x > margin) & (x < 1 - margin)
    cand = np.flatnonzero(is_peak)
    cand = cand[np.argsort(-mag[cand], kind="stable")]
    kept = []
    for i in cand:
        if all(abs(x[i] - x[k]) >= config.epsilon for k in kept):
            kept.append(i)
    kept = np.sort(np.array(kept, dtype=int))
    return x[kept], samples[kept]
