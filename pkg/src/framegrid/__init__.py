"""Fourier-frame reconstruction and convolutional gridding from non-uniform Fourier data."""
from .dcf import DcfOperator, fcg_coeffs, optimal_banded, optimal_diagonal, trapezoid
from .edge import EdgeConfig, GaussianBump, concentration_coeffs, edge_map, locate_jumps
from .estimators import ConvolutionalGridding, FrameApproximation, FrameGridding, JumpDetector
from .frame import SpectralSystem, build_system, evaluate, frame_coeffs
from .sampling import SamplingPattern, jittered, logarithmic, uniform
from .testfns import PiecewiseFunction, example_41, example_42
from .window import WindowSpec

__version__ = "0.1.0"
