"""Input checks shared by the estimators and the CLI."""
import numpy as np

from .sampling import SamplingPattern
from .window import WindowSpec


def check_frequencies(X):
    """Return a strictly increasing 1-D float array of odd length 2n+1.

    Accepts shape (2n+1,) or a single-feature column (2n+1, 1).
    """
    lam = np.asarray(X, dtype=float)
    if lam.ndim == 2 and lam.shape[1] == 1:
        lam = lam[:, 0]
    if lam.ndim != 1:
        raise ValueError(f"frequencies must be 1-D, got shape {np.shape(X)}")
    if lam.size < 3 or lam.size % 2 == 0:
        raise ValueError(f"need an odd number (>= 3) of frequencies, got {lam.size}")
    if not np.all(np.isfinite(lam)):
        raise ValueError("frequencies contain NaN or inf")
    if np.any(np.diff(lam) <= 0):
        raise ValueError("frequencies must be strictly increasing")
    return lam


def check_fourier_data(y, size):
    fhat = np.asarray(y)
    if fhat.ndim == 2 and fhat.shape[1] == 1:
        fhat = fhat[:, 0]
    if fhat.shape != (size,):
        raise ValueError(f"expected {size} Fourier samples, got shape {fhat.shape}")
    fhat = fhat.astype(complex)
    if not np.all(np.isfinite(fhat)):
        raise ValueError("Fourier data contain NaN or inf")
    return fhat


def check_pattern(X):
    if isinstance(X, SamplingPattern):
        return X
    lam = check_frequencies(X)
    return SamplingPattern(lam, (lam.size - 1) // 2)


def check_window(window):
    if isinstance(window, WindowSpec):
        return window
    if isinstance(window, str):
        return WindowSpec.parse(window)
    raise TypeError(f"window must be a WindowSpec or a string, got {type(window).__name__}")


def check_points(x):
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ValueError("evaluation points must lie in [0, 1]")
    return x
