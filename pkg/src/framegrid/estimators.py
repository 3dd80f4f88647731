"""Scikit-learn style estimators.

``fit(X, y)`` takes the sample frequencies ``X`` (shape ``(2n+1,)`` or
``(2n+1, 1)``) and the complex Fourier data ``y``; ``predict(x)`` evaluates
the reconstruction at points of [0, 1].  ``transform(y)`` maps further data
sets on the same frequencies to expansion coefficients.
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import dcf, edge, frame, gridding
from .validation import check_fourier_data, check_pattern, check_points, check_window


class _FrameReconstructor(TransformerMixin, BaseEstimator):
    def __init__(self, window="exp:a=5e-05", m_factor=1.0, grid_size=None):
        self.window = window
        self.m_factor = m_factor
        self.grid_size = grid_size

    def _build_operator(self):
        raise NotImplementedError

    def _coefficients(self, fhat):
        raise NotImplementedError

    def fit(self, X, y=None):
        pattern = check_pattern(X)
        self.window_ = check_window(self.window)
        if not self.m_factor > 0:
            raise ValueError("m_factor must be positive")
        self.system_ = frame.build_system(pattern, self.window_, frame.default_m(pattern.n, self.m_factor))
        self.n_ = pattern.n
        self.m_ = self.system_.m
        self._build_operator()
        if y is not None:
            self.coef_ = self.transform(y)
        return self

    def fit_transform(self, X, y=None, **fit_params):
        """Fit on frequencies ``X`` and return the coefficients of data ``y``."""
        if y is None:
            raise ValueError("fit_transform needs the Fourier data y")
        return self.fit(X, y).coef_

    def transform(self, y):
        check_is_fitted(self, "system_")
        return self._coefficients(check_fourier_data(y, 2 * self.n_ + 1))

    def predict(self, x):
        """Real part of the reconstruction at ``x`` (direct summation)."""
        check_is_fitted(self, "coef_")
        return frame.evaluate_at(self.coef_, self.window_, check_points(x)).real

    def reconstruct(self, grid_size=None):
        """``(x, values)`` on the uniform grid ``p/N`` via the FFT; values are complex."""
        check_is_fitted(self, "coef_")
        N = grid_size or self.grid_size or frame.default_grid(self.m_)
        return frame.grid(N), frame.evaluate(self.coef_, self.window_, N)


class FrameApproximation(_FrameReconstructor):
    """Least-squares frame approximation, coefficients ``pinv(Psi) @ fhat``."""

    def _build_operator(self):
        self.system_.Psi_pinv

    def _coefficients(self, fhat):
        return frame.frame_coeffs(self.system_, fhat)


class ConvolutionalGridding(_FrameReconstructor):
    """Traditional gridding with diagonal DCFs.

    Parameters
    ----------
    dcf : {"trapezoid", "optimal"}
    q : float or None
        Kernel truncation radius; None keeps every term.
    filter : ExponentialFilter, str or None
    """

    def __init__(self, window="exp:a=5e-05", m_factor=1.0, grid_size=None, dcf="trapezoid", q=None, filter=None):
        super().__init__(window, m_factor, grid_size)
        self.dcf = dcf
        self.q = q
        self.filter = filter

    def _build_operator(self):
        if self.dcf == "trapezoid":
            self.dcf_ = dcf.trapezoid(self.system_.pattern)
        elif self.dcf == "optimal":
            self.dcf_ = dcf.optimal_diagonal(self.system_)
        else:
            raise ValueError(f"unknown dcf rule {self.dcf!r}")
        filt = self.filter
        self.filter_ = gridding.ExponentialFilter.parse(filt) if isinstance(filt, str) else filt

    def _coefficients(self, fhat):
        coeffs = gridding.regrid(self.system_, self.dcf_, fhat, self.q)
        if self.filter_ is not None:
            coeffs = coeffs * self.filter_(np.abs(self.system_.modes) / self.m_)
        return coeffs


class FrameGridding(_FrameReconstructor):
    """Gridding with frame-optimal (2r-1)-banded DCFs; ``r=1`` is diagonal.

    ``r`` may be an integer, ``"log"`` (ceil(log2 n)) or ``"full"``.
    """

    def __init__(self, window="exp:a=5e-05", m_factor=1.0, grid_size=None, r=1, dcf_real=False):
        super().__init__(window, m_factor, grid_size)
        self.r = r
        self.dcf_real = dcf_real

    def _build_operator(self):
        self.r_ = dcf.parse_bandwidth(self.r, self.n_)
        self.dcf_ = dcf.optimal_banded(self.system_, self.r_, real=self.dcf_real)

    def _coefficients(self, fhat):
        return dcf.fcg_coeffs(self.system_, self.dcf_, fhat)


class JumpDetector(BaseEstimator):
    """Edge map and jump list from non-uniform Fourier data.

    After ``fit``, ``jumps_`` holds ``(locations, amplitudes)`` picked from
    the edge map on a grid of ``grid_size`` points.
    """

    def __init__(self, window="exp:a=5e-05", m_factor=1.0, grid_size=2048, method="fcg", r=25,
                 epsilon=0.02, b=5.0, threshold=0.3, scale=1.0, boundary_margin=None):
        self.window = window
        self.m_factor = m_factor
        self.grid_size = grid_size
        self.method = method
        self.r = r
        self.epsilon = epsilon
        self.b = b
        self.threshold = threshold
        self.scale = scale
        self.boundary_margin = boundary_margin

    def fit(self, X, y):
        pattern = check_pattern(X)
        fhat = check_fourier_data(y, len(pattern))
        self.window_ = check_window(self.window)
        self.system_ = frame.build_system(pattern, self.window_, frame.default_m(pattern.n, self.m_factor))
        r = dcf.parse_bandwidth(self.r, pattern.n) if self.method == "fcg" else None
        self.config_ = edge.EdgeConfig(
            epsilon=self.epsilon, bump=edge.GaussianBump(self.b), threshold=self.threshold,
            scale=self.scale, method=self.method, r=r, boundary_margin=self.boundary_margin,
        )
        self.coef_ = edge.coefficient_map(self.system_, self.config_)(
            edge.concentration_coeffs(pattern, fhat, self.config_)
        )
        vals = frame.evaluate(self.coef_, self.window_, self.grid_size)
        self.edge_map_ = vals.real
        self.imag_residue_ = float(np.sqrt(np.mean(vals.imag**2)))
        self.jumps_ = edge.locate_jumps(self.edge_map_, self.config_)
        return self

    def predict(self, x):
        check_is_fitted(self, "coef_")
        return frame.evaluate_at(self.coef_, self.window_, check_points(x)).real
