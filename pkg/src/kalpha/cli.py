"""Command-line interface: ``kalpha alpha | influence | simulate``.

Exit codes: 0 success, 2 usage error, 3 data error, 4 degenerate data
(no variation among scores, so alpha is undefined).
"""

from __future__ import annotations

import argparse
import json
import secrets
import shlex
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import dsl
from .bootstrap import BootstrapConfig, confint, resample_alpha
from .core import alpha_point, interpret
from .errors import AlphaError, DegenerateData, ParseError
from .influence import influence
from .ingest import InputSpec, ingest
from .metrics import DistanceSpec
from .plot import emit_histogram
from .simulate import AnovaConfig, run_coverage

EXIT_USAGE, EXIT_DATA, EXIT_DEGENERATE = 2, 3, 4
PROBE_LIMIT = 50


@dataclass
class RunReport:
    alpha: float
    ci_lower: Optional[float]
    ci_upper: Optional[float]
    conf_level: Optional[float]
    d_observed: float
    d_expected: float
    n_units: int
    n_coders: int
    retained_units: list
    dropped_units: list
    n_scores_pooled: int
    bootit: Optional[int]
    seed: Optional[int]
    workers: int
    distance: str
    interpretation: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"


class _Usage(Exception):
    pass


# -- argument parsing --------------------------------------------------------

def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", help="CSV file, units in rows and coders in columns ('-' for stdin)")
    p.add_argument("--header", action="store_true", help="first non-blank line is a header")
    p.add_argument("--na", action="append", metavar="TOKEN",
                   help="missing-value token (repeatable; default: NA and empty)")
    p.add_argument("--delimiter", default=",")


def _add_distance(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--level", choices=["nominal", "ordinal", "interval", "ratio", "bipolar", "circular"])
    g.add_argument("--distance", metavar="EXPR", help="custom d²(x, y), e.g. 'abs(x-y)'")
    p.add_argument("--intervals", type=int, metavar="I", help="number of equal intervals (circular)")
    p.add_argument("--min", type=float, dest="lo", metavar="A", help="scale minimum (bipolar)")
    p.add_argument("--max", type=float, dest="hi", metavar="B", help="scale maximum (bipolar)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kalpha", description="Krippendorff's alpha toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("alpha", help="point estimate and bootstrap interval")
    _add_input(a)
    _add_distance(a)
    a.add_argument("--bootit", type=int, default=1000)
    a.add_argument("--no-confint", action="store_true")
    a.add_argument("--conf-level", type=float, default=0.95)
    a.add_argument("--seed", type=int, help="bootstrap seed (random if omitted; echoed in output)")
    a.add_argument("--workers", type=int, default=1)
    a.add_argument("--out", choices=["text", "json"], default="text")
    a.add_argument("--boot-sample", metavar="PATH.csv")
    a.add_argument("--hist", metavar="PATH.svg")
    a.add_argument("--verbose", action="store_true")

    i = sub.add_parser("influence", help="leave-one-out DFBETAs for units and coders")
    _add_input(i)
    _add_distance(i)
    i.add_argument("--units", type=int, nargs="+", default=[], metavar="U", help="1-based unit numbers")
    i.add_argument("--coders", type=int, nargs="+", default=[], metavar="C", help="1-based coder numbers")
    i.add_argument("--out", choices=["text", "json"], default="text")

    s = sub.add_parser("simulate", help="bootstrap coverage study under the ANOVA model")
    s.add_argument("--alpha", type=float, help="true alpha (sets sigma-tau/sigma-eps with unit total variance)")
    s.add_argument("--mu", type=float, default=0.0)
    s.add_argument("--sigma-tau", type=float, default=1.0)
    s.add_argument("--sigma-eps", type=float, default=1.0)
    s.add_argument("--n-units", type=int, default=100)
    s.add_argument("--n-coders", type=int, default=4)
    s.add_argument("--missing-rate", type=float, default=0.0)
    s.add_argument("--reps", type=int, default=100)
    s.add_argument("--bootit", type=int, default=500)
    s.add_argument("--conf-level", type=float, default=0.95)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", choices=["text", "json"], default="json")
    s.add_argument("--per-rep", metavar="PATH.csv", help="write one CSV line per rep")
    return parser


def distance_from_args(args) -> DistanceSpec:
    level = args.level
    if args.intervals is not None and level != "circular":
        raise _Usage("--intervals only applies to --level circular")
    if (args.lo is not None or args.hi is not None) and level != "bipolar":
        raise _Usage("--min/--max only apply to --level bipolar")
    try:
        if args.distance is not None:
            return DistanceSpec.custom(args.distance)
        if level == "circular":
            if args.intervals is None:
                raise _Usage("--level circular needs --intervals")
            return DistanceSpec.circular(args.intervals)
        if level == "bipolar":
            if args.lo is None or args.hi is None:
                raise _Usage("--level bipolar needs --min and --max")
            return DistanceSpec.bipolar(args.lo, args.hi)
        return DistanceSpec(level)
    except ParseError as exc:
        raise _Usage(f"bad --distance expression: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, AlphaError):
            raise
        raise _Usage(str(exc)) from exc


def input_from_args(args) -> InputSpec:
    tokens = frozenset(args.na) if args.na else frozenset({"NA", ""})
    try:
        return InputSpec(args.file, args.header, tokens, args.delimiter)
    except ValueError as exc:
        raise _Usage(str(exc)) from exc


# -- output ------------------------------------------------------------------

def _fmt(v: Optional[float]) -> str:
    return "NA" if v is None else f"{v:.4f}"


def format_summary(rep: RunReport, call: str) -> str:
    lines = [
        "Krippendorff's Alpha",
        "",
        f"Data: {rep.n_units} units x {rep.n_coders} coders",
        "",
        "Call:",
        "",
        call,
        "",
        "Control parameters:",
        "",
        f"distance {rep.distance}",
    ]
    if rep.bootit is not None:
        lines += [f"bootit   {rep.bootit}", f"seed     {rep.seed}", f"workers  {rep.workers}"]
    lines += ["", "Results:", ""]
    header = ["Estimate", "Lower", "Upper"]
    cells = [_fmt(rep.alpha), _fmt(rep.ci_lower), _fmt(rep.ci_upper)]
    widths = [max(len(h), len(c)) for h, c in zip(header, cells)]
    lines.append("      " + " ".join(h.rjust(w) for h, w in zip(header, widths)))
    lines.append("alpha " + " ".join(c.rjust(w) for c, w in zip(cells, widths)))
    lines.append("")
    if rep.conf_level is not None:
        lines.append(f"Confidence level: {rep.conf_level:g} (quantile method)")
    lines.append(f"D_o = {rep.d_observed:.4f}, D_e = {rep.d_expected:.4f}")
    if rep.dropped_units:
        lines.append(f"Units with fewer than two scores (ignored in D_o): {rep.dropped_units}")
    lines.append(f"Interpretation: {rep.interpretation} agreement")
    return "\n".join(lines) + "\n"


class ProgressBar:
    """Textual bar on stderr, e.g. ``|+++++...| 100``."""

    def __init__(self, width: int = 50, stream=None):
        self.width = width
        self.stream = stream if stream is not None else sys.stderr
        self.last = -1

    def __call__(self, done: int, total: int) -> None:
        pct = done * 100 // total
        if pct == self.last:
            return
        self.last = pct
        filled = done * self.width // total
        self.stream.write(f"\r  |{'+' * filled}{' ' * (self.width - filled)}| {pct:3d}")
        if done == total:
            self.stream.write("\n")
        self.stream.flush()


def _warn_custom(spec: DistanceSpec, values: np.ndarray) -> None:
    grid = np.unique(values[~np.isnan(values)])[:PROBE_LIMIT]
    if grid.size == 0:
        return
    for v in dsl.validate_distance(spec.custom_expr, grid.tolist()).violations:
        print(f"warning: {v}", file=sys.stderr)


# -- subcommands -------------------------------------------------------------

def cmd_alpha(args, call: str) -> int:
    spec = distance_from_args(args)
    if args.bootit < 1 or args.workers < 1 or not 0 < args.conf_level < 1:
        raise _Usage("--bootit and --workers must be positive and --conf-level in (0, 1)")
    m = ingest(input_from_args(args))
    if spec.kind == "custom":
        _warn_custom(spec, m.values)
    est = alpha_point(m, spec)
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    boot = None
    if not args.no_confint:
        cfg = BootstrapConfig(bootit=args.bootit, conf_level=args.conf_level, seed=seed, workers=args.workers)
        boot = resample_alpha(m, spec, cfg, progress=ProgressBar() if args.verbose else None)
    report = RunReport(
        alpha=est.alpha,
        ci_lower=boot.ci_lower if boot else None,
        ci_upper=boot.ci_upper if boot else None,
        conf_level=args.conf_level if boot else None,
        d_observed=est.d_observed,
        d_expected=est.d_expected,
        n_units=m.n_units,
        n_coders=m.n_coders,
        retained_units=[i + 1 for i in est.retained_units],
        dropped_units=[i + 1 for i in est.dropped_units],
        n_scores_pooled=est.n_scores_pooled,
        bootit=args.bootit if boot else None,
        seed=seed if boot else None,
        workers=args.workers,
        distance=spec.describe(),
        interpretation=interpret(est.alpha),
    )
    if boot is not None:
        if args.boot_sample:
            Path(args.boot_sample).write_text("".join(f"{v!r}\n" for v in boot.replicates.tolist()))
        if args.hist:
            emit_histogram(boot, est.alpha, (boot.ci_lower, boot.ci_upper), args.hist)
    elif args.boot_sample or args.hist:
        print("warning: --boot-sample/--hist ignored with --no-confint", file=sys.stderr)
    sys.stdout.write(report.to_json() if args.out == "json" else format_summary(report, call))
    return 0


def _to_zero_based(indices, limit: int, what: str) -> list[int]:
    out = []
    for k in indices:
        if not 1 <= k <= limit:
            raise _Usage(f"{what} {k} out of range 1..{limit}")
        out.append(k - 1)
    return out


def cmd_influence(args, call: str) -> int:
    spec = distance_from_args(args)
    if not args.units and not args.coders:
        raise _Usage("give --units and/or --coders")
    m = ingest(input_from_args(args))
    units = _to_zero_based(args.units, m.n_units, "unit")
    coders = _to_zero_based(args.coders, m.n_coders, "coder")
    rep = influence(m, spec, units, coders)
    unit_map = {str(k + 1): v for k, v in rep.unit_dfbetas.items()}
    coder_map = {str(k + 1): v for k, v in rep.coder_dfbetas.items()}
    if args.out == "json":
        payload = {"base_alpha": rep.base_alpha, "distance": spec.describe(),
                   "dfbeta_units": unit_map, "dfbeta_coders": coder_map}
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        return 0
    lines = [f"alpha {rep.base_alpha:.7g}"]
    for title, mapping in (("units", unit_map), ("coders", coder_map)):
        if mapping:
            lines += ["", f"$dfbeta.{title}"]
            lines += [f"{k:>6} {v: .7g}   (alpha without: {rep.base_alpha - v:.7g})" for k, v in mapping.items()]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_simulate(args, call: str) -> int:
    try:
        if args.alpha is not None:
            cfg = AnovaConfig.for_alpha(args.alpha, mu=args.mu, n_units=args.n_units,
                                        n_coders=args.n_coders, missing_rate=args.missing_rate)
        else:
            cfg = AnovaConfig(args.mu, args.sigma_tau, args.sigma_eps, args.n_units,
                              args.n_coders, args.missing_rate)
        bcfg = BootstrapConfig(bootit=args.bootit, conf_level=args.conf_level, seed=args.seed,
                               workers=args.workers)
        if args.reps < 1:
            raise ValueError("--reps must be positive")
    except ValueError as exc:
        raise _Usage(str(exc)) from exc
    rep = run_coverage(cfg, args.reps, bcfg, seed=args.seed)
    if args.per_rep:
        rows = ["rep,alpha_hat,ci_lower,ci_upper,covered"]
        rows += [f"{r.rep + 1},{r.alpha_hat!r},{r.ci_lower!r},{r.ci_upper!r},{int(r.covered)}" for r in rep.records]
        Path(args.per_rep).write_text("\n".join(rows) + "\n")
    payload = {
        "reps": rep.reps, "hits": rep.hits, "coverage": rep.coverage,
        "mean_ci_width": rep.mean_ci_width, "true_alpha": rep.true_alpha,
        "config": asdict(cfg), "bootit": args.bootit, "conf_level": args.conf_level,
        "seed": args.seed, "workers": args.workers,
    }
    if args.out == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(
            f"true alpha {rep.true_alpha:.4f}; coverage {rep.coverage:.4f} "
            f"({rep.hits}/{rep.reps}); mean CI width {rep.mean_ci_width:.4f}\n"
        )
    return 0


COMMANDS = {"alpha": cmd_alpha, "influence": cmd_influence, "simulate": cmd_simulate}


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    call = shlex.join(["kalpha", *argv])
    try:
        return COMMANDS[args.command](args, call)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"kalpha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateData as exc:
        print(f"kalpha: degenerate data: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (AlphaError, OSError) as exc:
        print(f"kalpha: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
