"""Experiment runs that write CSV artifacts.

Every CSV starts with ``#``-prefixed comment lines, the first of which is
``# config: <json>`` so the run can be replayed by :func:`regress`.
"""
from concurrent.futures import ThreadPoolExecutor
import csv
import dataclasses
import io
import json
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import dcf, edge, frame, gridding, linalg, sampling, testfns
from .window import WindowSpec

log = logging.getLogger(__name__)

METHODS = ("fa", "cg", "fcg")


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


@dataclass
class ExperimentConfig:
    kind: str = "reconstruct"
    function: str = "ex41"
    sampling: str = "jittered:n=64,theta=0.25"
    window: str = "exp:a=5e-05"
    method: str = "fcg"
    r: str = "1"
    m_factor: float = 1.0
    grid: Optional[int] = None
    seed: int = 0
    noise: float = 0.0
    q: str = "full"
    filter: str = "none"
    dcf_real: bool = False
    epsilon: float = 0.02
    threshold: float = 0.3
    ns: list = field(default_factory=lambda: [16, 32, 64, 128])
    r_policies: list = field(default_factory=lambda: ["1", "log", "full"])
    samples_file: Optional[str] = None

    def to_text(self):
        return json.dumps(dataclasses.asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_text(cls, text):
        data = json.loads(text)
        unknown = set(data) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)

    def validate(self):
        try:
            self.pattern()
            self.window_spec()
            gridding.ExponentialFilter.parse(self.filter)
            gridding.parse_q(self.q)
            if self.samples_file is None:
                testfns.get(self.function)
        except (ValueError, KeyError) as exc:
            raise ConfigError(str(exc)) from None
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if not self.m_factor > 0:
            raise ConfigError("m-factor must be positive")
        if self.noise < 0:
            raise ConfigError("noise sigma must be non-negative")
        return self

    def pattern(self, n=None):
        if self.samples_file is not None:
            lam, _ = testfns.read_samples(self.samples_file)
            return sampling.SamplingPattern(lam, (lam.size - 1) // 2)
        spec = self.sampling
        if n is not None:
            head, _, rest = spec.partition(":")
            parts = [p for p in rest.split(",") if p and not p.startswith("n=")]
            spec = f"{head}:" + ",".join([f"n={n}"] + parts)
        return sampling.parse(spec, seed=self.seed)

    def window_spec(self):
        return WindowSpec.parse(self.window)


@dataclass
class RunReport:
    errors: np.ndarray
    max_error: float
    l2_error: float
    cond_psi: float
    timings: dict

    def summary(self):
        return (f"max error {self.max_error:.3e}  L2 error {self.l2_error:.3e}  "
                f"cond(Psi) {self.cond_psi:.3e}  "
                + " ".join(f"{k}={v:.2f}s" for k, v in self.timings.items()))


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def write_csv(header, rows, config, path=None, extra=()):
    buf = io.StringIO()
    buf.write(f"# config: {config.to_text()}\n")
    for line in extra:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def read_csv(path):
    """Return ``(config, header, columns)``; columns map name -> list of str."""
    config = None
    with open(path, newline="") as fh:
        lines = fh.read().splitlines()
    body = []
    for line in lines:
        if line.startswith("# config: "):
            config = ExperimentConfig.from_text(line[len("# config: "):])
        elif not line.startswith("#"):
            body.append(line)
    rows = list(csv.reader(body))
    header, data = rows[0], rows[1:]
    return config, header, {h: [r[i] for r in data] for i, h in enumerate(header)}


def _data(config, pattern):
    if config.samples_file is not None:
        _, fhat = testfns.read_samples(config.samples_file)
        return None, fhat
    func = testfns.get(config.function)
    return func, testfns.sample(func, pattern, config.noise, config.seed)


def coefficient_map(config, system, r=None):
    """``fhat -> coefficients`` for ``config.method``; returns (map, D or None)."""
    if config.method == "fa":
        return (lambda v: frame.frame_coeffs(system, v)), None
    if config.method == "cg":
        D = dcf.trapezoid(system.pattern)
        q = gridding.parse_q(config.q)
        filt = gridding.ExponentialFilter.parse(config.filter)

        def cg(v):
            c = gridding.regrid(system, D, v, q)
            if filt is not None:
                c = c * filt(np.abs(system.modes) / system.m)
            return c

        return cg, D
    r = dcf.parse_bandwidth(config.r if r is None else r, system.n)
    D = dcf.optimal_banded(system, r, real=config.dcf_real)
    return (lambda v: dcf.fcg_coeffs(system, D, v)), D


def _errors(values, truth):
    err = np.abs(values - truth)
    return err, float(err.max()), float(np.sqrt(np.mean(err**2)))


def run_reconstruction(config, path=None):
    """Reconstruct on the grid; CSV columns x, reconstruction, truth, abs_error."""
    config = dataclasses.replace(config, kind="reconstruct")
    config.validate()
    timings = {}
    t0 = time.perf_counter()
    pattern = config.pattern()
    func, fhat = _data(config, pattern)
    window = config.window_spec()
    system = frame.build_system(pattern, window, frame.default_m(pattern.n, config.m_factor))
    timings["assemble"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    cmap, _ = coefficient_map(config, system)
    coeffs = cmap(fhat)
    timings["coefficients"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    N = config.grid or frame.default_grid(system.m)
    x = frame.grid(N)
    values = frame.evaluate(coeffs, window, N).real
    timings["evaluate"] = time.perf_counter() - t0
    truth = func(x) if func is not None else np.full(N, np.nan)
    err, emax, el2 = _errors(values, truth)
    report = RunReport(err, emax, el2, linalg.condition_number(system.Psi), timings)
    text = write_csv(["x", "reconstruction", "truth", "abs_error"], zip(x, values, truth, err), config, path)
    log.info("reconstruct %s", report.summary())
    return report, text


def _convergence_row(config, n, policy):
    pattern = config.pattern(n)
    func, fhat = _data(config, pattern)
    window = config.window_spec()
    system = frame.build_system(pattern, window, frame.default_m(n, config.m_factor))
    r = dcf.parse_bandwidth(policy, n)
    cmap, _ = coefficient_map(dataclasses.replace(config, method="fcg"), system, r=r)
    N = config.grid or frame.default_grid(system.m)
    values = frame.evaluate(cmap(fhat), window, N).real
    _, emax, el2 = _errors(values, func(frame.grid(N)))
    return n, policy, r, emax, el2


def run_convergence(config, path=None, workers=1):
    """FCG error for each n in ``config.ns`` and bandwidth policy; one row per pair.

    Rows are computed independently (optionally on a thread pool) and
    written in (policy, n) order, so output is independent of ``workers``.
    """
    config = dataclasses.replace(config, kind="convergence")
    config.validate()
    jobs = [(n, p) for p in config.r_policies for n in config.ns]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(lambda job: _convergence_row(config, *job), jobs))
    else:
        rows = [_convergence_row(config, *job) for job in jobs]
    text = write_csv(["n", "policy", "r", "max_error", "l2_error"], rows, config, path)
    return rows, text


def run_edges(config, path=None, jumps_path=None):
    """Edge map CSV (x, edge_map, target_edge_field, abs_error) and matched jump CSV."""
    config = dataclasses.replace(config, kind="edges")
    config.validate()
    pattern = config.pattern()
    func, fhat = _data(config, pattern)
    window = config.window_spec()
    system = frame.build_system(pattern, window, frame.default_m(pattern.n, config.m_factor))
    method = {"fa": "fa", "cg": "cg-trapezoid", "fcg": "fcg"}[config.method]
    r = dcf.parse_bandwidth(config.r, pattern.n) if method == "fcg" else None
    ecfg = edge.EdgeConfig(epsilon=config.epsilon, threshold=config.threshold, method=method, r=r)
    N = config.grid or 2048
    emap, residue = edge.edge_map(system, ecfg, fhat, grid_size=N)
    x = frame.grid(N)
    if func is not None:
        true_loc, true_amp = func.jumps()
    else:
        true_loc, true_amp = np.array([]), np.array([])
    target = edge.target_field(true_loc, true_amp, ecfg, x)
    text = write_csv(
        ["x", "edge_map", "target_edge_field", "abs_error"],
        zip(x, emap, target, np.abs(emap - target)), config, path,
        extra=[f"imaginary residue L2 {residue:.3e}"],
    )
    loc, amp = edge.locate_jumps(emap, ecfg, x)
    rows = []
    for xl, a in zip(loc, amp):
        if true_loc.size:
            k = int(np.argmin(np.abs(true_loc - xl)))
            rows.append((xl, a, float(true_loc[k]), float(true_amp[k])))
        else:
            rows.append((xl, a, np.nan, np.nan))
    jtext = write_csv(["location", "amplitude", "true_location", "true_amplitude"], rows,
                      dataclasses.replace(config, kind="edges-jumps"), jumps_path)
    return (loc, amp), text, jtext


def run_dcf_dump(config, path=None):
    """DCF profile for ``config.method``: cg -> trapezoid, fcg -> frame-optimal."""
    config = dataclasses.replace(config, kind="dcf")
    config.validate()
    pattern = config.pattern()
    window = config.window_spec()
    if config.method == "cg":
        D = dcf.trapezoid(pattern)
    elif config.method == "fcg":
        system = frame.build_system(pattern, window, frame.default_m(pattern.n, config.m_factor))
        D = dcf.optimal_banded(system, dcf.parse_bandwidth(config.r, pattern.n), real=config.dcf_real)
    else:
        raise ConfigError("dcf dump needs method cg or fcg")
    if D.is_diagonal:
        rows = [(k, lam, complex(a).real, complex(a).imag)
                for k, lam, a in zip(pattern.indices, pattern.lambdas, D.diagonal)]
        header = ["index", "lambda", "dcf_re", "dcf_im"]
    else:
        rows = [(i, j, complex(a).real, complex(a).imag) for i, j, a in zip(*D.triplets())]
        header = ["row", "col", "dcf_re", "dcf_im"]
    return D, write_csv(header, rows, config, path)


RUNNERS = {
    "reconstruct": lambda c: run_reconstruction(c)[1],
    "convergence": lambda c: run_convergence(c)[1],
    "edges": lambda c: run_edges(c)[1],
    "edges-jumps": lambda c: run_edges(c)[2],
    "dcf": lambda c: run_dcf_dump(c)[1],
}


def compare_csv(baseline_text, fresh_text, rtol=1e-9, atol=1e-12, column_tol=None):
    """List of human-readable mismatches between two CSV texts."""
    column_tol = column_tol or {}

    def parse(text):
        rows = list(csv.reader(l for l in text.splitlines() if not l.startswith("#")))
        return rows[0], rows[1:]

    h0, r0 = parse(baseline_text)
    h1, r1 = parse(fresh_text)
    if h0 != h1:
        return [f"header differs: {h0} vs {h1}"]
    if len(r0) != len(r1):
        return [f"row count differs: {len(r0)} vs {len(r1)}"]
    problems = []
    for ci, name in enumerate(h0):
        col_rtol, col_atol = column_tol.get(name, (rtol, atol))
        a = [row[ci] for row in r0]
        b = [row[ci] for row in r1]
        try:
            fa, fb = np.array(a, dtype=float), np.array(b, dtype=float)
        except ValueError:
            if a != b:
                problems.append(f"column {name}: text differs")
            continue
        same_nan = np.isnan(fa) & np.isnan(fb)
        bad = ~same_nan & ~(np.abs(fa - fb) <= col_atol + col_rtol * np.abs(fa))
        if np.any(bad):
            worst = float(np.nanmax(np.abs(fa - fb)))
            problems.append(f"column {name}: {int(bad.sum())} values off (max diff {worst:.3e})")
    return problems


def regress(directory, rtol=1e-9, atol=1e-12, column_tol=None):
    """Replay every ``*.csv`` under ``directory`` from its embedded config.

    Returns ``{filename: [problems]}``; an empty list means the file matched.
    """
    results = {}
    for name in sorted(os.listdir(directory)):
        if not name.endswith(".csv"):
            continue
        path = os.path.join(directory, name)
        with open(path) as fh:
            baseline = fh.read()
        config, _, _ = read_csv(path)
        if config is None:
            results[name] = ["no embedded config"]
            continue
        runner = RUNNERS.get(config.kind)
        if runner is None:
            results[name] = [f"unknown run kind {config.kind!r}"]
            continue
        results[name] = compare_csv(baseline, runner(config), rtol, atol, column_tol)
    return results
