"""Command-line front end. All numbers come from the library modules."""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import correlations, figures as figs
from .bloch import BlochVector
from .cumulants import Channel, coefficient_set
from .errors import ConsistencyError, DomainError, IntegrationError, SpinStarError, ValidationError
from .model import INFINITE, Convention, Method, ModelParams
from .reports import FORMATS, emit_trajectory, table_csv, write_text
from .solvers import SolverSpec, channel_transfer, solve

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _bath_size(text: str):
    if text.lower() in ("inf", "infinite", "infinity"):
        return INFINITE
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'inf', got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError("bath size must be non-negative")
    return n


def _triple(text: str) -> BlochVector:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return BlochVector.from_sequence(parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {text!r}")


def _csv_list(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


@dataclass
class RunConfig:
    subcommand: str
    n: int | float | None = None
    alpha: float = 1.0
    v0: BlochVector = BlochVector(1.0, 0.0, 1.0)
    t_max: float = 1.0
    steps: int = 101
    methods: list[str] = field(default_factory=lambda: ["exact"])
    orders: list[int] = field(default_factory=lambda: [2])
    convention: str | None = None
    output: str | None = None
    format: str = "csv"

    def validate(self) -> None:
        if self.steps < 2:
            raise UsageError("--steps must be at least 2")
        if not self.t_max > 0:
            raise UsageError("--tmax must be positive")
        if not self.methods:
            raise UsageError("at least one method is required")
        if self.convention is not None and not any(m in ("nz", "born") for m in self.methods):
            raise UsageError("--convention applies to the NZ method only")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)


def _add_run_args(p, with_n=True, n_required=True):
    if with_n:
        p.add_argument("--n", type=_bath_size, required=n_required, help="bath size N (integer or 'inf')")
    p.add_argument("--alpha", type=float, default=1.0, help="coupling strength (default 1)")
    p.add_argument("--v0", type=_triple, default=BlochVector(1.0, 0.0, 1.0),
                   help="initial Bloch vector v1,v2,v3 (default 1,0,1)")
    p.add_argument("--tmax", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101, help="number of time points")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--out", default="-", help="output file ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinstar", description="Central spin in a spin-star bath: exact and TCL/NZ dynamics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", help="exact finite-N trajectory")
    _add_run_args(p)
    p = sub.add_parser("limit", help="N -> infinity trajectory (alpha is the rescaled coupling)")
    _add_run_args(p, with_n=False)

    p = sub.add_parser("solve", help="trajectory from a chosen method")
    _add_run_args(p)
    p.add_argument("--method", choices=[m.value for m in Method], required=True)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--convention", choices=[c.value for c in Convention])
    p.add_argument("--backend", choices=("companion", "laplace", "volterra"), default="companion")

    p = sub.add_parser("corr", help="bath correlation functions")
    p.add_argument("--k", type=int, help="Q_k, i.e. (a, b) = (k, 0)")
    p.add_argument("--a", type=int, help="power of J+J-")
    p.add_argument("--b", type=int, default=0, help="power of J-J+")
    p.add_argument("--n", type=int, help="evaluate at this bath size")
    p.add_argument("--poly", action="store_true", help="print the polynomial in N (default without --n)")
    p.add_argument("--out", default="-")

    p = sub.add_parser("coeffs", help="TCL / NZ expansion coefficients")
    p.add_argument("--method", choices=("tcl", "nz", "born", "redfield"), required=True)
    p.add_argument("--channel", choices=("v3", "vpm", "both"), default="both")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--convention", choices=[c.value for c in Convention])
    p.add_argument("--out", default="-")

    p = sub.add_parser("compare", help="one channel under several methods, one CSV column each")
    _add_run_args(p)
    p.add_argument("--channel", choices=("v3", "vpm"), default="vpm")
    p.add_argument("--methods", type=_csv_list, default=["exact", "tcl", "nz"])
    p.add_argument("--orders", type=lambda s: [int(x) for x in _csv_list(s)], default=[2, 4])
    p.add_argument("--convention", choices=[c.value for c in Convention])

    p = sub.add_parser("figures", help="datasets and plots of the published figures")
    p.add_argument("--which", type=_csv_list, action="extend", help="figure ids, comma separated")
    p.add_argument("--outdir", default=".")

    sub.add_parser("verify", help="run the brute-force oracle suite")
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(
        subcommand=args.command,
        n=getattr(args, "n", None),
        alpha=args.alpha,
        v0=args.v0,
        t_max=args.tmax,
        steps=args.steps,
        convention=getattr(args, "convention", None),
        output=args.out,
        format=args.format,
    )
    if args.command == "solve":
        cfg.methods = [args.method]
        cfg.orders = [args.order]
    elif args.command == "compare":
        cfg.methods = args.methods
        cfg.orders = args.orders
    cfg.validate()
    return cfg


def _cmd_trajectory(args) -> int:
    cfg = _config(args)
    if args.command == "limit":
        params = ModelParams(INFINITE, cfg.alpha, cfg.v0)
        spec = SolverSpec(Method.LIMIT)
    else:
        params = ModelParams(cfg.n, cfg.alpha, cfg.v0)
        if args.command == "exact":
            spec = SolverSpec(Method.EXACT)
        else:
            method = Method(args.method)
            order = args.order if method in (Method.TCL, Method.NZ) else 2
            spec = SolverSpec(method, order, cfg.convention)
        if spec.resolved().method is Method.LIMIT:
            params = ModelParams(INFINITE, cfg.alpha, cfg.v0)
        elif params.is_infinite:
            raise UsageError("use 'limit' (or --method limit) for N = inf")
    traj = solve(spec, params, cfg.times, getattr(args, "backend", "companion"))
    emit_trajectory(traj, cfg.format, cfg.output)
    return EXIT_OK


def _cmd_corr(args) -> int:
    if args.k is not None:
        a, b = args.k, 0
    elif args.a is not None:
        a, b = args.a, args.b
    else:
        raise UsageError("give --k or --a/--b")
    if args.poly or args.n is None:
        out = correlations.polynomial_to_json(a, b, correlations.r_polynomial(a, b))
    else:
        out = {"a": a, "b": b, "N": args.n, "value": str(correlations.r_value(a, b, args.n))}
    write_text(json.dumps(out) + "\n", args.out)
    return EXIT_OK


def _cmd_coeffs(args) -> int:
    if args.convention and args.method not in ("nz", "born"):
        raise UsageError("--convention applies to the NZ method only")
    channels = list(Channel) if args.channel == "both" else [Channel(args.channel)]
    sets = [coefficient_set(args.method, ch, args.order, args.convention).to_json() for ch in channels]
    write_text(json.dumps(sets if len(sets) > 1 else sets[0], indent=1) + "\n", args.out)
    return EXIT_OK


def _cmd_compare(args) -> int:
    cfg = _config(args)
    if cfg.n is None or cfg.n == INFINITE:
        raise UsageError("compare needs a finite --n")
    ch = Channel(args.channel)
    times = cfg.times
    scale = cfg.v0.v3 if ch is Channel.V3 else cfg.v0.v_plus.real
    cols = {"t": times}
    for m in cfg.methods:
        method = Method(m)
        if method in (Method.TCL, Method.NZ):
            for o in cfg.orders:
                conv = cfg.convention if method is Method.NZ else None
                cols[f"{m}{o}"] = scale * channel_transfer(SolverSpec(method, o, conv), ch, cfg.n, cfg.alpha, times)
        else:
            spec = SolverSpec(method, 2, cfg.convention if method is Method.BORN else None)
            cols[m] = scale * channel_transfer(spec, ch, cfg.n, cfg.alpha, times)
    if cfg.format != "csv":
        raise UsageError("compare writes CSV only")
    write_text(table_csv(cols), cfg.output)
    return EXIT_OK


def _cmd_figures(args) -> int:
    which = args.which or list(figs.FIGURE_IDS)
    unknown = [w for w in which if w not in figs.FIGURE_IDS]
    if unknown:
        raise UsageError(f"unknown figure ids {unknown}; choose from {', '.join(figs.FIGURE_IDS)}")
    for fig_id, (csv_path, svg_path) in figs.figures(which, args.outdir).items():
        print(f"{fig_id}: {csv_path} {svg_path}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .verify import run_checks

    results = run_checks()
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


COMMANDS = {
    "exact": _cmd_trajectory,
    "limit": _cmd_trajectory,
    "solve": _cmd_trajectory,
    "corr": _cmd_corr,
    "coeffs": _cmd_coeffs,
    "compare": _cmd_compare,
    "figures": _cmd_figures,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, ValidationError, ValueError) as exc:
        sys.stderr.write(f"spinstar {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except (IntegrationError, ConsistencyError, ArithmeticError, OSError, SpinStarError) as exc:
        sys.stderr.write(f"spinstar {args.command}: failed: {exc}\n")
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())
