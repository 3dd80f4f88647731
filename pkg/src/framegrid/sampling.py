"""Non-uniform frequency sets used as frame indices."""
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SamplingPattern:
    """Sorted frequencies ``lambda_{-n}, ..., lambda_n``.

    Attributes
    ----------
    lambdas : ndarray of shape (2n+1,)
    n : int
    kind : str
        ``"uniform"``, ``"jittered"`` or ``"logarithmic"``.
    params : dict
        Generation parameters (``theta``/``seed`` or ``v``).
    """

    lambdas: np.ndarray
    n: int
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        lam = np.array(self.lambdas, dtype=float)
        if lam.ndim != 1 or lam.size != 2 * self.n + 1:
            raise ValueError(f"expected {2 * self.n + 1} frequencies, got shape {lam.shape}")
        if not np.all(np.isfinite(lam)):
            raise ValueError("frequencies must be finite")
        if np.any(np.diff(lam) <= 0):
            raise ValueError("frequencies must be strictly increasing")
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    def __len__(self):
        return self.lambdas.size

    @property
    def indices(self):
        return np.arange(-self.n, self.n + 1)

    def describe(self):
        """Text form accepted by :func:`parse`."""
        if self.kind == "uniform":
            return f"uniform:n={self.n}"
        if self.kind == "jittered":
            return f"jittered:n={self.n},theta={self.params['theta']!r},seed={self.params['seed']}"
        if self.kind == "logarithmic":
            return f"log:n={self.n},v={self.params['v']!r}"
        return f"custom:n={self.n}"

    def __eq__(self, other):
        if not isinstance(other, SamplingPattern):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.lambdas, other.lambdas)

    __hash__ = None


def uniform(n):
    if n < 1:
        raise ValueError("n must be >= 1")
    return SamplingPattern(np.arange(-n, n + 1, dtype=float), n, "uniform", {})


def jittered(n, theta, seed=0):
    """Integers ``k`` perturbed by ``s_k * tau_k`` with ``tau_k ~ U[0, theta]``.

    The sign ``s_k`` is an independent fair coin.  Output is a pure function
    of ``(n, theta, seed)`` (numpy PCG64 stream).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= theta < 0.5:
        raise ValueError("jitter theta must lie in [0, 1/2)")
    rng = np.random.default_rng(seed)
    k = np.arange(-n, n + 1, dtype=float)
    tau = rng.uniform(0.0, theta, size=k.size)
    sign = np.where(rng.random(k.size) < 0.5, -1.0, 1.0)
    return SamplingPattern(k + sign * tau, n, "jittered", {"theta": float(theta), "seed": int(seed)})


def logarithmic(n, v=1.0):
    """Symmetric pattern with ``|lambda|`` log-spaced from ``10**-v`` to ``n`` plus 0."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not v > 0:
        raise ValueError("v must be positive")
    mags = np.logspace(-v, np.log10(n), n)
    mags[0] = 10.0 ** (-v)
    mags[-1] = float(n)
    lam = np.concatenate([-mags[::-1], [0.0], mags])
    return SamplingPattern(lam, n, "logarithmic", {"v": float(v)})


def _kv(text):
    out = {}
    for item in filter(None, text.split(",")):
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {item!r}")
        out[key.strip()] = val.strip()
    return out


def parse(text, seed=None):
    """Build a pattern from ``jittered:n=..,theta=..``, ``log:n=..,v=..`` or ``uniform:n=..``.

    ``seed`` fills in a jittered pattern's seed when the text omits it.
    """
    head, _, rest = text.strip().partition(":")
    args = _kv(rest)
    try:
        n = int(args.pop("n"))
        if head == "uniform":
            pat = uniform(n)
        elif head in ("jittered", "jitter"):
            theta = float(args.pop("theta", 0.25))
            s = int(args.pop("seed", 0 if seed is None else seed))
            pat = jittered(n, theta, s)
        elif head in ("log", "logarithmic"):
            pat = logarithmic(n, float(args.pop("v", 1.0)))
        else:
            raise ValueError(f"unknown sampling kind {head!r}")
    except KeyError as exc:
        raise ValueError(f"sampling spec {text!r} is missing {exc}") from None
    if args:
        raise ValueError(f"unused sampling parameters {sorted(args)}")
    return pat


def write_pattern(pattern, path):
    """Two-column text: index k, lambda_k (17 significant digits)."""
    with open(path, "w") as fh:
        fh.write(f"# {pattern.describe()}\n")
        for k, lam in zip(pattern.indices, pattern.lambdas):
            fh.write(f"{k:d} {lam:.17g}\n")


def read_pattern(path):
    data = np.loadtxt(path, ndmin=2)
    k = data[:, 0].astype(int)
    n = int(k.max())
    if not np.array_equal(k, np.arange(-n, n + 1)):
        raise ValueError(f"{path}: indices must run from -n to n")
    return SamplingPattern(data[:, 1], n)
