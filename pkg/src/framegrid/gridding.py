"""Traditional convolutional gridding with kernel truncation and optional filter."""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import frame


@dataclass(frozen=True)
class ExponentialFilter:
    """``sigma(eta) = exp(-strength * eta**order)``."""

    order: int = 8
    strength: float = 36.0

    def __call__(self, eta):
        return np.exp(-self.strength * np.asarray(eta, dtype=float) ** self.order)

    @classmethod
    def parse(cls, text):
        """``exp:p=<int>,c=<real>`` or ``none`` (returns None)."""
        text = text.strip()
        if text == "none":
            return None
        head, _, rest = text.partition(":")
        if head != "exp":
            raise ValueError(f"cannot parse filter {text!r}")
        kw = {}
        for item in filter(None, rest.split(",")):
            key, _, val = item.partition("=")
            if key == "p":
                kw["order"] = int(val)
            elif key == "c":
                kw["strength"] = float(val)
            else:
                raise ValueError(f"unknown filter parameter {key!r}")
        return cls(**kw)

    def __str__(self):
        return f"exp:p={self.order},c={self.strength!r}"


@dataclass(frozen=True)
class GriddingConfig:
    q: Optional[float] = None  # None means no truncation
    filter: Optional[ExponentialFilter] = None
    grid_size: Optional[int] = None

    def __post_init__(self):
        if self.q is not None and not self.q > 0:
            raise ValueError("truncation radius q must be positive")


def parse_q(text):
    text = str(text).strip()
    return None if text == "full" else float(text)


def regrid(system, D, fhat, q=None):
    """Uniform coefficients ``sum_{|l - lambda_k| <= q} alpha_k fhat_k w^(l - lambda_k)``."""
    if not D.is_diagonal:
        raise ValueError("traditional gridding takes diagonal DCFs")
    weighted = D.diagonal * np.asarray(fhat, dtype=complex)
    Omega = system.Omega
    if q is not None:
        near = np.abs(system.modes[:, None] - system.pattern.lambdas[None, :]) <= q
        Omega = np.where(near, Omega, 0)
    return Omega @ weighted


def reconstruct_cg(system, config, D, fhat):
    """Regrid, filter, inverse FFT onto the grid, divide by the window."""
    coeffs = regrid(system, D, fhat, config.q)
    if config.filter is not None:
        coeffs = coeffs * config.filter(np.abs(system.modes) / system.m)
    N = config.grid_size or frame.default_grid(system.m)
    return frame.evaluate(coeffs, system.window, N)
