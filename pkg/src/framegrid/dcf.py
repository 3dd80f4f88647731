"""Density compensation factors: trapezoidal, frame-optimal diagonal, banded."""
from dataclasses import dataclass
import logging

import numpy as np

from . import linalg

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DcfOperator:
    """A (2r-1)-banded square matrix of order 2n+1 stored by column.

    ``bands[d, j]`` holds ``D[j + d - (r-1), j]``; entries whose row falls
    outside the index range are kept at zero.
    """

    bands: np.ndarray
    r: int = 1

    def __post_init__(self):
        b = np.array(self.bands)
        if b.ndim == 1:
            b = b[None, :]
        if b.shape[0] != 2 * self.r - 1:
            raise ValueError("band storage must have 2r-1 rows")
        size = b.shape[1]
        rows = np.arange(size)[None, :] + np.arange(-(self.r - 1), self.r)[:, None]
        b = np.where((rows >= 0) & (rows < size), b, 0)
        b.setflags(write=False)
        object.__setattr__(self, "bands", b)

    @property
    def size(self):
        return self.bands.shape[1]

    @property
    def n(self):
        return (self.size - 1) // 2

    @property
    def is_diagonal(self):
        return self.r == 1

    @property
    def diagonal(self):
        return self.bands[self.r - 1]

    @classmethod
    def from_diagonal(cls, alpha):
        return cls(np.asarray(alpha)[None, :], 1)

    @classmethod
    def identity(cls, size, r=1):
        bands = np.zeros((2 * r - 1, size))
        bands[r - 1] = 1.0
        return cls(bands, r)

    def toarray(self):
        size, r = self.size, self.r
        D = np.zeros((size, size), dtype=self.bands.dtype)
        cols = np.arange(size)
        for d in range(2 * r - 1):
            rows = cols + d - (r - 1)
            ok = (rows >= 0) & (rows < size)
            D[rows[ok], cols[ok]] = self.bands[d, ok]
        return D

    def matvec(self, x):
        """``D @ x`` in O(n r)."""
        x = np.asarray(x)
        size, r = self.size, self.r
        out = np.zeros(size, dtype=np.result_type(self.bands, x))
        for d in range(2 * r - 1):
            off = d - (r - 1)
            lo, hi = max(0, -off), min(size, size - off)
            out[lo + off:hi + off] += self.bands[d, lo:hi] * x[lo:hi]
        return out

    def real(self):
        return DcfOperator(self.bands.real.copy(), self.r)

    def triplets(self):
        """Nonzero entries as ``(row, col, value)`` in index units ``-n..n``."""
        D = self.toarray()
        rows, cols = np.nonzero(D)
        order = np.lexsort((rows, cols))
        rows, cols = rows[order], cols[order]
        return rows - self.n, cols - self.n, D[rows, cols]


def trapezoid(pattern):
    """``alpha_k = lambda_{k+1} - lambda_k``; the last weight repeats the last gap."""
    gaps = np.diff(pattern.lambdas)
    return DcfOperator.from_diagonal(np.append(gaps, gaps[-1]))


def objective(system, D):
    """``|| Psi^* Psi Omega D - Psi^* ||_F``."""
    DD = D.toarray() if isinstance(D, DcfOperator) else np.asarray(D)
    return float(np.linalg.norm(system.T @ DD - linalg.adjoint(system.Psi)))


def optimal_diagonal(system, real=False):
    """Column-wise scalar fit ``alpha_j = <T_j, Psi^*_j> / ||T_j||^2``.

    With ``real=True`` the real-constrained minimiser (real part of the
    ratio) is returned.  Degenerate columns get ``alpha_j = 0``.
    """
    T = system.T
    target = linalg.adjoint(system.Psi)
    num = np.einsum("ij,ij->j", np.conj(T), target)
    den = np.einsum("ij,ij->j", np.conj(T), T).real
    bad = den == 0
    if np.any(bad):
        log.warning("zero columns of T at indices %s", (np.flatnonzero(bad) - system.n).tolist())
    alpha = np.where(bad, 0, num / np.where(bad, 1, den))
    if real:
        alpha = alpha.real
    return DcfOperator.from_diagonal(alpha)


def optimal_banded(system, r, real=False, chunk=128):
    """Minimise ``||T D - Psi^*||_F`` over (2r-1)-banded ``D``.

    Each column ``j`` is an independent least-squares problem in the
    ``2r-1`` unknowns ``D[j-r+1 : j+r, j]`` (fewer at the edges), solved by
    a minimum-norm pseudo-inverse of the corresponding columns of ``T``.
    """
    size = len(system.pattern)
    if not 1 <= r <= size:
        raise ValueError(f"bandwidth r must lie in [1, {size}]")
    if r == 1:
        return optimal_diagonal(system, real)
    T = system.T
    target = linalg.adjoint(system.Psi)
    width = min(2 * r - 1, size)
    bands = np.zeros((2 * r - 1, size), dtype=complex)
    # fixed-width column windows slid inside [0, size); unknowns outside the band are masked
    starts = np.clip(np.arange(size) - (r - 1), 0, size - width)
    for s in range(0, size, chunk):
        cols = np.arange(s, min(size, s + chunk))
        idx = starts[cols][:, None] + np.arange(width)[None, :]
        blocks = np.transpose(T[:, idx], (1, 0, 2))  # (batch, 2m+1, width)
        # zero out unknowns that lie outside column j's band
        offsets = idx - cols[:, None]
        inband = np.abs(offsets) <= r - 1
        blocks = blocks * inband[:, None, :]
        sol = np.einsum("bij,bj->bi", linalg.pinv(blocks), target[:, cols].T)
        d = offsets + (r - 1)
        for b in range(cols.size):
            ok = inband[b]
            bands[d[b, ok], cols[b]] = sol[b, ok]
    if real:
        bands = bands.real
    return DcfOperator(bands, r)


def fcg_coeffs(system, D, fhat):
    """``Omega @ D @ fhat``."""
    fhat = np.asarray(fhat, dtype=complex)
    if fhat.shape != (len(system.pattern),):
        raise ValueError(f"expected {len(system.pattern)} samples, got {fhat.shape}")
    return system.Omega @ D.matvec(fhat)


def full_bandwidth(n):
    """Smallest r for which a (2r-1)-banded matrix of order 2n+1 is unconstrained."""
    return 2 * n + 1


def parse_bandwidth(text, n):
    """``full``, ``log`` (ceil(log2 n)) or an integer."""
    text = str(text).strip()
    if text == "full":
        return full_bandwidth(n)
    if text == "log":
        return default_bandwidth(n)
    return int(text)


def default_bandwidth(n):
    return max(1, int(np.ceil(np.log2(n))))


def write_profile(D, path, header=""):
    """Diagonal DCFs as (index, re, im), or banded DCFs as (row, col, re, im)."""
    with open(path, "w") as fh:
        if header:
            fh.write(f"# {header}\n")
        if D.is_diagonal:
            fh.write("index,re,im\n")
            for k, a in zip(range(-D.n, D.n + 1), D.diagonal):
                a = complex(a)
                fh.write(f"{k},{a.real:.17g},{a.imag:.17g}\n")
        else:
            fh.write("row,col,re,im\n")
            for i, j, a in zip(*D.triplets()):
                a = complex(a)
                fh.write(f"{i},{j},{a.real:.17g},{a.imag:.17g}\n")
