"""Command-line interface: ``tube <subcommand> [options]``.

Exit status is 0 on success, 1 for numerical errors, 2 for usage errors and
3 when an input file cannot be read.
"""

import argparse
import json
import logging
import math
import os
import re
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import prob
from .errors import TubeError
from .mc import simulate_sup_tail
from .models import (Clifford, ExpRegression, GreatCircle, MixtureCovariance, MixtureVector,
                     ScbModel, SphereCap, Torus3, mixture_test, nlreg_test, scb_band)
from .quadrature import DomainRect
from .tube import TubeConstants, tube_constants

log = logging.getLogger("tubeformula")

EXIT_NUMERIC, EXIT_USAGE, EXIT_IO = 1, 2, 3
THREADS_ENV = "TUBE_THREADS"
NEGATIVE = re.compile(r"^-[0-9.]")
LABELS = ["kappa0", "l0/2", "(kappa2+l1+m0)/2pi", "(l2+m1+n0)/4pi"]


class DataFileError(Exception):
    pass


@dataclass
class Builtin:
    d: int
    limits: list
    grid: list
    periodic: list = None
    boundary_increment: float = 0.0
    needs_data: bool = False
    mc_exclusions: list = field(default_factory=list)


BUILTINS = {
    "arc": Builtin(1, [0.0, 1.0], [100]),
    "circle": Builtin(1, [0.0, 2 * math.pi], [100], periodic=[True]),
    "clifford": Builtin(2, [0.0, 0.0, math.pi / 2, math.pi / 2], [40, 40]),
    "spherecap": Builtin(2, [0.3, 0.0, 1.2, 1.0], [40, 40]),
    "torus3": Builtin(3, [0.0] * 3 + [math.pi / 2] * 3, [10, 10, 10]),
    "nlreg": Builtin(1, [-2.0, 2.0], [100], needs_data=True),
    "scb": Builtin(1, None, [20], needs_data=True),
    "mixture": Builtin(1, [-3.0, 3.0], [200], boundary_increment=1.0,
                       mc_exclusions=[(0, (-1e-9, 1e-9))]),
}


def load_data(path):
    """Whitespace-separated reals, one observation per row, '#' comments."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            data = np.loadtxt(path, comments="#", ndmin=2)
    except OSError as exc:
        raise DataFileError(f"cannot read data file {path!r}: {exc}") from exc
    except ValueError as exc:
        raise DataFileError(f"malformed data file {path!r}: {exc}") from exc
    if data.size == 0:
        raise DataFileError(f"data file {path!r} has no observations")
    return data


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _exclusion(text):
    axis, a, b = text.split(":")
    return int(axis), (float(a), float(b))


def _common(p):
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.add_argument("--threads", type=int, default=None,
                   help=f"cap on worker threads (default: ${THREADS_ENV} or 1)")


def _model_args(p, default_model=None):
    p.add_argument("--model", choices=sorted(BUILTINS), default=default_model)
    p.add_argument("--data", help="data file for the nlreg and scb models")
    p.add_argument("--dim", type=int, default=None, help="predictor dimension (scb)")
    p.add_argument("--limits", type=_floats, help="lower limits then upper limits, 2d values")
    p.add_argument("--grid", type=_ints, help="Simpson subintervals per axis")
    p.add_argument("--periodic", type=_ints, default=None, help="indices of periodic axes")
    p.add_argument("--exclude", type=_exclusion, action="append", default=[],
                   help="exclusion slab AXIS:A:B (repeatable)")
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("--mode", choices=["vector", "covariance"], default=None)
    p.add_argument("--boundary-increment", type=float, default=None)
    p.add_argument("--euler-closure", action="store_true")


def _process_args(p):
    p.add_argument("--process", choices=["gauss", "tproc", "unif"], default="gauss")
    p.add_argument("--side", choices=["one", "two"], default="one")
    p.add_argument("--df", type=float, default=None, help="residual df for the t-process")
    p.add_argument("--n", type=int, default=None, help="ambient dimension for the uniform process")


def build_parser():
    parser = argparse.ArgumentParser(prog="tube", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="compute tube constants for a builtin manifold")
    _common(p)
    _model_args(p, "arc")

    for name, what in (("tailp", "--cutoff"), ("critval", "--alpha")):
        p = sub.add_parser(name, help=f"{name} from given or computed constants")
        _common(p)
        _model_args(p)
        _process_args(p)
        p.add_argument("--constants", type=_floats, help="comma-separated kap values")
        p.add_argument("--d", type=int, default=None, help="manifold dimension for --constants")
        p.add_argument(what, dest="level", type=float, required=True)

    p = sub.add_parser("nlreg", help="test the exponential term in nonlinear regression")
    _common(p)
    p.add_argument("--data", required=True, help="two columns: x and y")
    p.add_argument("--limits", type=_floats, default=[-2.0, 2.0])
    p.add_argument("--grid", type=_ints, default=[100])

    p = sub.add_parser("scb", help="simultaneous confidence band for quadratic regression")
    _common(p)
    p.add_argument("--data", required=True, help="predictor columns then the response")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--limits", type=_floats, default=None)
    p.add_argument("--grid", type=_ints, default=None)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--grid-points", type=int, default=201)
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("--euler-closure", action="store_true")

    p = sub.add_parser("mixture", help="normal mixture score test and its constants")
    _common(p)
    p.add_argument("--data", default=None, help="one observation per row (optional)")
    p.add_argument("--limits", type=_floats, default=[-3.0, 3.0])
    p.add_argument("--grid", type=_ints, default=[200])
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--boundary-increment", type=float, default=1.0)

    p = sub.add_parser("validate", help="Monte Carlo check of the tube tail probability")
    _common(p)
    _model_args(p, "arc")
    _process_args(p)
    p.add_argument("--cutoff", type=float, required=True)
    p.add_argument("--reps", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-mult", type=int, default=4)
    return parser


def _build_model(args):
    builtin = BUILTINS[args.model]
    data = load_data(args.data) if args.data else None
    if builtin.needs_data and data is None:
        raise DataFileError(f"model {args.model!r} needs --data")
    covariance = args.mode == "covariance"
    d = builtin.d
    if args.model in ("arc", "circle"):
        manifold = GreatCircle(ambient=3, covariance=covariance)
    elif args.model == "clifford":
        manifold = Clifford()
    elif args.model == "spherecap":
        manifold = SphereCap()
    elif args.model == "torus3":
        manifold = Torus3()
    elif args.model == "nlreg":
        manifold = ExpRegression(data[:, 0], covariance=covariance)
    elif args.model == "scb":
        d = args.dim or 1
        manifold = ScbModel.from_design(data[:, :d])
    else:
        manifold = MixtureVector() if args.mode == "vector" else MixtureCovariance()
    limits = args.limits or builtin.limits
    if limits is None:
        x = data[:, :d]
        limits = list(x.min(axis=0)) + list(x.max(axis=0))
    if len(limits) != 2 * d:
        raise ValueError(f"--limits needs {2 * d} values for d = {d}")
    grid = args.grid or builtin.grid
    if len(grid) == 1 and d > 1:
        grid = grid * d
    periodic = [False] * d
    for i in args.periodic if args.periodic is not None else []:
        periodic[i] = True
    if args.periodic is None and builtin.periodic:
        periodic = builtin.periodic
    dom = DomainRect(limits[:d], limits[d:], grid, periodic, list(args.exclude))
    increment = builtin.boundary_increment if args.boundary_increment is None else args.boundary_increment
    terms = args.terms or min(d + 1, 3 if not args.euler_closure else 4)
    return manifold, dom, terms, increment, builtin


def _constants_from_args(args):
    if getattr(args, "constants", None):
        if args.d is None:
            raise ValueError("--constants needs --d")
        return TubeConstants(args.constants, args.d)
    if args.model is None:
        raise ValueError("give either --constants or --model")
    manifold, dom, terms, increment, _ = _build_model(args)
    return tube_constants(manifold, dom, terms, boundary_increment=increment,
                          euler_closure=args.euler_closure, threads=args.threads)


def _process(args):
    kind = prob.Process(args.process)
    side = prob.ONE_SIDED if args.side == "one" else prob.TWO_SIDED
    return prob.ProcessSpec(kind, side, df=args.df, ambient_n=args.n)


def _kap_lines(kap):
    return [f"{LABELS[k]:>6} = {v:.5f}" for k, v in enumerate(kap)]


def cmd_constants(args, out):
    k = _constants_from_args(args)
    out["kappa"] = list(k.kap)
    out["d"] = k.d
    out["breakdown"] = k.breakdown
    return _kap_lines(k.kap)


def cmd_tailp(args, out):
    k = _constants_from_args(args)
    p = prob.tailp(args.level, k, _process(args))
    out.update(kappa=list(k.kap), d=k.d, cutoff=args.level, tail_probability=p)
    return _kap_lines(k.kap) + [f"P(sup >= {args.level:g}) = {p:.5f}"]


def cmd_critval(args, out):
    k = _constants_from_args(args)
    c = prob.critval(args.level, k, _process(args))
    out.update(kappa=list(k.kap), d=k.d, alpha=args.level, critical_value=c)
    return _kap_lines(k.kap) + [f"Level {args.level:g} critical value = {c:.5f}"]


def cmd_nlreg(args, out):
    data = load_data(args.data)
    if data.shape[1] < 2:
        raise DataFileError("nlreg data needs two columns (x, y)")
    res = nlreg_test(data[:, 0], data[:, 1], args.limits[0], args.limits[1], args.grid[0])
    out.update(kappa=list(res.constants.kap), statistic=res.statistic,
               lr_statistic=res.lr_statistic, gamma_hat=res.gamma_hat, p_value=res.p_value)
    return _kap_lines(res.constants.kap) + [
        f"sup |<T, Y/|Y|>| = {res.statistic:.5f} at gamma = {res.gamma_hat:.5f}",
        f"L = {res.lr_statistic:.5f}",
        f"p-value = {res.p_value:.5f}"]


def cmd_scb(args, out):
    data = load_data(args.data)
    dim = args.dim
    if data.shape[1] < dim + 1:
        raise DataFileError(f"scb data needs {dim} predictor columns and a response")
    x, y = data[:, :dim], data[:, dim]
    limits = args.limits or list(x.min(axis=0)) + list(x.max(axis=0))
    grid = args.grid or [20] * dim
    if len(grid) == 1:
        grid = grid * dim
    dom = DomainRect(limits[:dim], limits[dim:], grid)
    band = scb_band(x, y, dom, args.alpha, args.grid_points, args.terms, args.euler_closure,
                    args.threads)
    out.update(kappa=list(band.constants.kap), critical_value=band.critical_value,
               sigma=band.sigma, df=band.df, coef=band.coef.tolist(),
               grid=[g.tolist() for g in band.grid], center=band.center.tolist(),
               halfwidth=band.halfwidth.tolist())
    return _kap_lines(band.constants.kap) + [
        f"sigma = {band.sigma:.5f} on {band.df} df",
        f"Level {args.alpha:g} critical value = {band.critical_value:.5f}"]


def cmd_mixture(args, out):
    lo, hi = args.limits
    data = load_data(args.data) if args.data else None
    if data is not None:
        res = mixture_test(data[:, 0], lo, hi, args.grid[0], args.alpha, args.boundary_increment)
        k, c = res.constants, res.critical_value
    else:
        from .models import mixture_constants

        k = mixture_constants(lo, hi, args.grid[0], args.boundary_increment)
        c = prob.critval(args.alpha, k, prob.ProcessSpec())
    out.update(kappa=list(k.kap), critical_value=c, alpha=args.alpha)
    lines = [f"kappa0 = {k.kap[0]:.5f}", f"  l0/2 = {k.kap[1]:.5f}",
             f"Level {args.alpha:g} critical value = {c:.5f}"]
    if data is not None:
        out.update(statistic=res.statistic, mu_hat=res.mu_hat, reject=res.reject)
        lines += [f"statistic = {res.statistic:.5f} at mu = {res.mu_hat:.5f}",
                  "decision = " + ("reject H0" if res.reject else "retain H0")]
    return lines


def cmd_validate(args, out):
    manifold, dom, terms, increment, builtin = _build_model(args)
    k = tube_constants(manifold, dom, terms, boundary_increment=increment,
                       euler_closure=args.euler_closure, threads=args.threads)
    if builtin.mc_exclusions and not args.exclude:
        dom = DomainRect(dom.lo, dom.hi, dom.mg, dom.periodic, builtin.mc_exclusions)
    rep = simulate_sup_tail(manifold, dom, _process(args), args.cutoff, args.reps, args.seed,
                            args.grid_mult, constants=k, threads=args.threads)
    out.update(kappa=list(k.kap), report=rep.as_dict())
    return _kap_lines(k.kap) + [
        f"tube = {rep.tube:.5f}",
        f"monte carlo = {rep.estimate:.5f} (se {rep.std_error:.5f}, {rep.reps} reps, "
        f"{rep.grid['points']} grid points)",
        f"z = {rep.z:.3f}"]


COMMANDS = {"constants": cmd_constants, "tailp": cmd_tailp, "critval": cmd_critval,
            "nlreg": cmd_nlreg, "scb": cmd_scb, "mixture": cmd_mixture, "validate": cmd_validate}


def run(argv=None, stdout=None, stderr=None):
    """Run one CLI invocation and return its exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=stderr)
    if args.threads is None:
        args.threads = int(os.environ.get(THREADS_ENV, "1"))
    out = {"command": args.command}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            lines = COMMANDS[args.command](args, out)
            status = 0
        except DataFileError as exc:
            lines, status = [], EXIT_IO
            out["error"] = str(exc)
        except (TubeError, ValueError) as exc:
            lines, status = [], EXIT_NUMERIC
            out["error"] = f"{type(exc).__name__}: {exc}"
    out["warnings"] = [str(w.message) for w in caught]
    if args.format == "json":
        print(json.dumps(out, indent=1, default=_jsonable), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
        for w in out["warnings"]:
            print(f"warning: {w}", file=stdout)
        if "error" in out:
            print(f"error: {out['error']}", file=stderr)
    return status


def _join_negative(argv):
    """Attach values such as ``-3,3`` to the preceding long option so argparse accepts them."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and NEGATIVE.match(argv[i + 1])):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not serializable: {type(obj).__name__}")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
