"""Command line entry point: ``framegrid <subcommand> [options]``.

Exit codes: 0 success, 1 regression mismatch, 2 configuration error,
3 numerical failure.
"""
import argparse
import dataclasses
import logging
import sys

from . import edge, harness, linalg, quadrature, sampling, testfns
from .harness import ConfigError, ExperimentConfig

log = logging.getLogger("framegrid")

SEED_HELP = ("seed for jittered sampling and noise; the same seed always reproduces "
             "the same frequencies and data (numpy PCG64)")


def _common(p):
    p.add_argument("--function", default="ex41", help="ex41 | ex42")
    p.add_argument("--sampling", default="jittered:n=64,theta=0.25",
                   help="jittered:n=..,theta=..[,seed=..] | log:n=..,v=.. | uniform:n=..")
    p.add_argument("--window", default="exp:a=5e-05", help="exp:a=<real> | const")
    p.add_argument("--method", default="fcg", choices=harness.METHODS)
    p.add_argument("--r", default="1", help="DCF bandwidth: integer, 'log' or 'full'")
    p.add_argument("--m-factor", type=float, default=1.0, help="number of modes m = ceil(factor * n)")
    p.add_argument("--grid", type=int, default=None, help="evaluation grid size N")
    p.add_argument("--seed", type=int, default=0, help=SEED_HELP)
    p.add_argument("--noise", default=None, help="sigma=<real>: complex Gaussian noise on the data")
    p.add_argument("--q", default="full", help="gridding truncation radius or 'full'")
    p.add_argument("--filter", default="none", help="exp:p=<int>,c=<real> | none")
    p.add_argument("--dcf-real", action="store_true", help="use real-constrained DCFs")
    p.add_argument("--samples-file", default=None, help="three-column file: lambda, Re fhat, Im fhat")
    p.add_argument("--out", default=None, help="output CSV path (stdout if omitted)")


def _noise(text):
    if text is None:
        return 0.0
    key, _, val = text.partition("=")
    if key != "sigma":
        raise ConfigError(f"--noise expects sigma=<real>, got {text!r}")
    return float(val)


def _config(args, kind):
    return ExperimentConfig(
        kind=kind, function=args.function, sampling=args.sampling, window=args.window,
        method=args.method, r=str(args.r), m_factor=args.m_factor, grid=args.grid,
        seed=args.seed, noise=_noise(args.noise), q=args.q, filter=args.filter,
        dcf_real=args.dcf_real, samples_file=args.samples_file,
        epsilon=getattr(args, "epsilon", 0.02), threshold=getattr(args, "threshold", 0.3),
        ns=getattr(args, "ns", None) or [16, 32, 64, 128],
        r_policies=getattr(args, "r_policies", None) or ["1", "log", "full"],
    )


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)


def cmd_sample(args):
    pattern = sampling.parse(args.sampling, seed=args.seed)
    out = args.out or "pattern.txt"
    sampling.write_pattern(pattern, out)
    log.info("wrote %d frequencies to %s", len(pattern), out)
    if args.samples_out:
        func = testfns.get(args.function)
        testfns.write_samples(pattern.lambdas, testfns.sample(func, pattern, _noise(args.noise), args.seed),
                              args.samples_out)


def cmd_dcf(args):
    _, text = harness.run_dcf_dump(_config(args, "dcf"), args.out)
    _emit(text, args.out)


def cmd_reconstruct(args):
    report, text = harness.run_reconstruction(_config(args, "reconstruct"), args.out)
    _emit(text, args.out)
    print(report.summary(), file=sys.stderr)


def cmd_convergence(args):
    _, text = harness.run_convergence(_config(args, "convergence"), args.out, workers=args.workers)
    _emit(text, args.out)


def cmd_edges(args):
    config = _config(args, "edges")
    if args.eps_policy:
        eps = edge.epsilon_policy(args.eps_policy, config.pattern().n)
        config = dataclasses.replace(config, epsilon=eps)
    (loc, _), text, jtext = harness.run_edges(config, args.out, args.jumps_out)
    _emit(text, args.out)
    if args.jumps_out is None:
        sys.stderr.write(jtext)
    print(f"{loc.size} jumps detected", file=sys.stderr)


def cmd_regress(args):
    column_tol = {}
    for item in args.tol or []:
        name, _, val = item.partition("=")
        column_tol[name] = (float(val), args.atol)
    results = harness.regress(args.directory, args.rtol, args.atol, column_tol)
    failed = False
    for name, problems in results.items():
        status = "ok" if not problems else "FAIL"
        print(f"{status:4s} {name}")
        for p in problems:
            print(f"     {p}")
        failed |= bool(problems)
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(prog="framegrid", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="write a sampling pattern (index, lambda)")
    _common(p)
    p.add_argument("--samples-out", default=None, help="also write Fourier data of --function here")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("dcf", help="dump DCF profiles (cg: trapezoid, fcg: frame-optimal)")
    _common(p)
    p.set_defaults(func=cmd_dcf)

    p = sub.add_parser("reconstruct", help="reconstruct a test function on a grid")
    _common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("convergence", help="FCG error versus n for several bandwidth policies")
    _common(p)
    p.add_argument("--ns", type=int, nargs="+", default=None)
    p.add_argument("--r-policies", nargs="+", default=None, help="e.g. 1 log full")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("edges", help="edge map and detected jumps")
    _common(p)
    p.add_argument("--epsilon", type=float, default=0.02)
    p.add_argument("--eps-policy", default=None,
                   help="const:<v> or power:<c>,<gamma> (eps = c n^-gamma); overrides --epsilon")
    p.add_argument("--threshold", type=float, default=0.3)
    p.add_argument("--jumps-out", default=None)
    p.set_defaults(func=cmd_edges, function="ex42", r="25", sampling="jittered:n=512,theta=0.25")

    p = sub.add_parser("regress", help="replay CSVs in a directory and compare")
    p.add_argument("directory")
    p.add_argument("--rtol", type=float, default=1e-9)
    p.add_argument("--atol", type=float, default=1e-12)
    p.add_argument("--tol", action="append", help="per-column relative tolerance, name=<real>")
    p.set_defaults(func=cmd_regress)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args) or 0
    except (ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (linalg.LinAlgError, quadrature.QuadratureError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
