"""Command-line front end.

Commands: validate, cf, corr-curve, tables, mc-check, moments.
Exit codes: 0 success, 1 check/validation failure, 2 input or usage error.
Every command is a pure function of (input files, flags, seed): repeated runs
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import factor, montecarlo
from .errors import DomainError
from .factor import NigFactorModel, NigMarginal
from .sato import SatoSubordinator
from .serialization import ParseError, load_path
from .tempered import ExpTemperedStable

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

MC_SAMPLE_FLOOR = 10_000


@dataclass(frozen=True)
class RunManifest:
    """What a run consumed and produced; echoed into JSON outputs."""

    command: str
    inputs: tuple[str, ...]
    output: str | None
    seed: int
    overrides: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": list(self.inputs),
            "output": self.output,
            "seed": self.seed,
            "overrides": dict(sorted(self.overrides.items())),
        }


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise ParseError(f"{what}: expected comma-separated numbers, got {text!r}") from exc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_validate(args) -> int:
    obj = load_path(args.file)
    violations = obj.violations()
    if not violations:
        print("valid")
        return EXIT_OK
    for v in violations:
        print(str(v))
    return EXIT_CHECK_FAILED


def _cmd_cf(args) -> int:
    obj = load_path(args.file)
    z = _parse_floats(args.z, "--z")
    t = args.t
    if isinstance(obj, NigFactorModel):
        obj.validate()
        value = obj.cf(t, z)
    elif isinstance(obj, SatoSubordinator):
        obj.validate()
        value = obj.cf(t, z)
    elif isinstance(obj, ExpTemperedStable):
        obj.validate()
        value = obj.char_function(z)
    else:  # pragma: no cover - load_path only returns the three kinds
        raise ParseError("unsupported input kind")
    print(f"{value.real:.17g},{value.imag:.17g}")
    return EXIT_OK


def _cmd_corr_curve(args) -> int:
    if args.points < 2:
        raise ParseError(f"--points must be >= 2; got {args.points}")
    if not args.t_min > 0.0:
        raise ParseError(f"--t-min must be > 0; got {args.t_min}")
    if not args.t_max > args.t_min:
        raise ParseError("--t-max must exceed --t-min")
    model = load_path(args.file)
    if not isinstance(model, NigFactorModel):
        raise ParseError("corr-curve expects a model file with 'marginals'")
    model.validate()
    pair = (args.pair[0], args.pair[1])
    if not all(0 <= k < model.dim for k in pair):
        raise ParseError(f"--pair indices must lie in [0, {model.dim})")
    if args.linear:
        grid = np.linspace(args.t_min, args.t_max, args.points)
    else:
        grid = np.geomspace(args.t_min, args.t_max, args.points)
    curve = factor.correlation_curve(model, pair, grid)
    _emit(curve.to_csv(label=f"rho_{pair[0]}{pair[1]}"), args.output)
    return EXIT_OK


# (a, rho, q) per case of the bundled correlation-bounds illustration; the two
# common-parameter levels are derived from the marginals as round(a_max - 0.01)
# and round(a_max / 2) at four decimals.
_CASES_CORRELATED = (
    ("CASE1", "high", 0.5, 0.5),
    ("CASE2", "high", -0.5, 1.5),
    ("CASE3", "half", 0.99, 1.5),
    ("CASE4", "high", 0.99, 0.5),
)
_CASES_INDEPENDENT = (
    ("CASE01", "high", 0.0, 1.5),
    ("CASE02", "high", 0.0, 0.5),
    ("CASE03", "half", 0.0, 0.5),
    ("CASE04", "half", 0.0, 1.5),
)


def reference_cases(marginals: tuple[NigMarginal, NigMarginal]):
    """The eight (name, a, rho, q) rows evaluated by the tables command."""
    bound = factor.a_max(marginals)
    levels = {"high": round(bound - 0.01, 4), "half": round(bound / 2.0, 4)}
    rows = []
    for name, level, rho, q in _CASES_CORRELATED + _CASES_INDEPENDENT:
        rows.append((name, levels[level], rho, q))
    return rows


def table_rows(marginals) -> list[dict]:
    marginals = tuple(marginals)[:2]
    if len(marginals) < 2:
        raise ParseError("tables requires at least two marginals")
    rows = []
    for name, a, rho_hj, q in reference_cases(marginals):
        rho = np.array([[1.0, rho_hj], [rho_hj, 1.0]])
        model = NigFactorModel(marginals, a, rho, q).validate()
        lo, hi = factor.correlation_limits(model, (0, 1))
        rho1 = factor.correlation(model, 1.0, (0, 1))
        rows.append({
            "case": name, "a": a, "rho": rho_hj, "q": q,
            "limit_zero": round(lo, 4),
            "limit_infinity": round(hi, 4),
            "rho_at_1": round(rho1, 4),
        })
    return rows


def _cmd_tables(args) -> int:
    model = load_path(args.file)
    if not isinstance(model, NigFactorModel):
        raise ParseError("tables expects a model file with 'marginals'")
    rows = table_rows(model.marginals)
    if args.format == "json":
        _emit(json.dumps(rows, sort_keys=True, indent=2) + "\n", args.output)
    else:
        lines = ["case,a,rho,q,limit_zero,limit_infinity,rho_at_1"]
        for r in rows:
            lines.append(
                f"{r['case']},{r['a']:.4f},{r['rho']:g},{r['q']:g},"
                f"{r['limit_zero']:.4f},{r['limit_infinity']:.4f},{r['rho_at_1']:.4f}"
            )
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _cmd_mc_check(args) -> int:
    if args.samples < MC_SAMPLE_FLOOR:
        raise ParseError(f"--samples must be >= {MC_SAMPLE_FLOOR}; got {args.samples}")
    times = _parse_floats(args.t, "--t")
    if not times or any(t <= 0.0 for t in times):
        raise ParseError("--t must list positive times")
    model = load_path(args.file)
    if not isinstance(model, NigFactorModel):
        raise ParseError("mc-check expects a model file with 'marginals'")
    model.validate()
    config = montecarlo.McConfig(args.samples, args.seed, args.workers)
    if args.dump_samples is not None:
        header = ",".join(f"asset_{j}" for j in range(model.dim))
        for t in times:
            y = montecarlo.sample_process(model, t, config)
            path = f"{args.dump_samples}_t{t:g}.csv"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(header + "\n")
                np.savetxt(fh, y, delimiter=",", fmt="%.17g")
    report = montecarlo.mc_check_report(model, times, config)
    manifest = RunManifest(
        command="mc-check", inputs=(args.file,), output=args.output, seed=args.seed,
        overrides={"samples": args.samples, "t": times, "workers": args.workers},
    )
    for check in report.checks:
        status = "PASS" if check.passed() else "FAIL"
        print(f"{status} {check.name} max_sigma={max(check.sigmas()):.3f}")
    payload = report.to_dict()
    payload["manifest"] = manifest.to_dict()
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.output is not None:
        _emit(text, args.output)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.all_passed() else EXIT_CHECK_FAILED


def _cmd_moments(args) -> int:
    obj = load_path(args.file)
    if isinstance(obj, NigFactorModel):
        obj.validate()
        m = factor.subordinator_moments(obj)
        data = {
            "asset_mean": list(map(float, m.asset_mean)),
            "asset_var": list(map(float, m.asset_var)),
            "idiosyncratic_mean": list(map(float, m.idiosyncratic_mean)),
            "idiosyncratic_var": list(map(float, m.idiosyncratic_var)),
            "common_mean": m.common_mean,
            "common_var": m.common_var,
        }
    else:
        dist = obj.base if isinstance(obj, SatoSubordinator) else obj
        obj.validate()
        mean, cov = dist.mean_and_covariance()
        data = {
            "mean": list(map(float, mean)),
            "covariance": [list(map(float, row)) for row in cov],
        }
    if args.format == "json":
        _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", args.output)
    else:
        lines = [f"{key},{json.dumps(value)}" for key, value in sorted(data.items())]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satosub",
        description="Tempered stable Sato subordination: validation, closed forms, "
                    "correlation curves, and Monte Carlo cross-checks.",
    )
    parser.add_argument("--seed", type=int, default=0, help="unsigned 64-bit RNG seed")
    parser.add_argument("--output", default=None, help="write output to this path")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a JSON input against its invariants")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("cf", help="evaluate a characteristic function, printed as 're,im'")
    p.add_argument("file")
    p.add_argument("--t", type=float, default=1.0, help="time (default 1)")
    p.add_argument("--z", required=True, help="comma-separated evaluation point")
    p.set_defaults(func=_cmd_cf)

    p = sub.add_parser("corr-curve", help="correlation term structure as CSV")
    p.add_argument("file")
    p.add_argument("--pair", type=int, nargs=2, default=(0, 1), metavar=("H", "J"))
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--linear", action="store_true",
                   help="linear grid (default is log-spaced)")
    p.set_defaults(func=_cmd_corr_curve)

    p = sub.add_parser("tables", help="correlation bounds for the eight reference cases")
    p.add_argument("file")
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("mc-check", help="Monte Carlo vs closed-form agreement suite")
    p.add_argument("file")
    p.add_argument("--t", default="1", help="comma-separated times (default '1')")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dump-samples", default=None, metavar="PREFIX",
                   help="also write the draws to PREFIX_t<T>.csv, one row per draw")
    p.set_defaults(func=_cmd_mc_check)

    p = sub.add_parser("moments", help="closed-form moments of the input")
    p.add_argument("file")
    p.set_defaults(func=_cmd_moments)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def entry() -> None:  # console-script hook
    raise SystemExit(main())
