"""Command-line front end.

Commands: ``analyze``, ``curve``, ``simulate``, ``compare``, ``classify``.
Scenarios come from ``--config PATH`` or ``--scenario NAME`` (a bundled
file). Reports go to ``--out PATH`` or stdout.

Exit statuses: 0 success (including analyses that find maintenance not
beneficial), 2 configuration or domain error, 3 numerical failure. On
failure a JSON object ``{"error": kind, "message": text}`` is written to
stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from . import distributions as dist
from . import orders, simulate, solvers
from . import system as sysm
from .config import ConfigError, ScenarioConfig, bundled_scenarios, load, scenario_path
from .errors import DomainError, NumericalError, PreconditionError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

DEFAULT_CURVE_POINTS = 500
DEFAULT_REPLICATIONS = 100_000


class _UsageError(Exception):
    """Bad command-line arguments; mapped to exit status 2."""


def _jsonable(x: Any) -> Any:
    """Recursively convert numpy scalars and non-finite floats for strict JSON."""
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x


def dumps(obj: Any) -> str:
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _scenario(args) -> ScenarioConfig:
    if args.config and args.scenario:
        raise _UsageError("give either --config or --scenario, not both")
    if args.scenario:
        return load(scenario_path(args.scenario))
    if args.config:
        return load(args.config)
    raise _UsageError("a scenario is required (--config PATH or --scenario NAME)")


def _parse_T(text: str) -> float | simulate.Schedule:
    if text.strip().lower() in ("inf", "infinity"):
        return simulate.NO_MAINTENANCE
    try:
        T = float(text)
    except ValueError:
        raise _UsageError(f"T must be a positive number or 'inf', got {text!r}") from None
    if not (T > 0 and math.isfinite(T)):
        raise _UsageError(f"T must be a positive number or 'inf', got {text!r}")
    return T


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    cfg = _scenario(args)
    res = solvers.analyze(cfg.model, cfg.solver_options())
    report = {"name": cfg.name, **res.to_dict()}
    _emit(dumps(report), args.out)
    if not args.quiet:
        print(f"{cfg.name}: status {res.status}", file=sys.stderr)
    return EXIT_OK


def curve_rows(model: sysm.SystemModel, grid: np.ndarray) -> list[list[float]]:
    d = model.main
    m_inf = sysm.mttf_no_pm(model)
    cols = (
        sysm.mttf_on_grid(model, grid),
        sysm.benefit_on_grid(model, grid),
        dist.mrl_on_grid(d, grid),
        d.hazard(grid),
        sysm.phi(model, grid),
    )
    return [[t, M, m_inf, b, r, h, p] for t, M, b, r, h, p in zip(grid, *cols)]


CURVE_HEADER = ["T", "mttf", "mttf_no_pm", "benefit", "mrl", "hazard", "phi"]


def format_curve(rows: list[list[float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CURVE_HEADER)
    for row in rows:
        w.writerow([format(float(v), ".12g") for v in row])
    return buf.getvalue()


def cmd_curve(args) -> int:
    cfg = _scenario(args)
    curve = cfg.analysis.get("curve", {})
    a = dist.mean(cfg.model.main)
    t_min = args.t_min if args.t_min is not None else curve.get("t_min", 1e-2 * a)
    t_max = args.t_max if args.t_max is not None else curve.get("t_max", dist.survival_horizon(cfg.model.main, 1e-6))
    points = args.points if args.points is not None else curve.get("points", DEFAULT_CURVE_POINTS)
    if not (0 < t_min < t_max and math.isfinite(t_max)):
        raise DomainError(f"need 0 < t_min < t_max, got t_min={t_min!r}, t_max={t_max!r}")
    if points < 2:
        raise DomainError(f"points must be at least 2, got {points}")
    grid = np.linspace(t_min, t_max, points)
    _emit(format_curve(curve_rows(cfg.model, grid)), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = _scenario(args)
    sim = cfg.simulation
    T = _parse_T(args.T)
    reps = args.replications if args.replications is not None else sim.get("replications", DEFAULT_REPLICATIONS)
    seed = args.seed if args.seed is not None else sim.get("seed", 0)
    workers = args.workers if args.workers is not None else sim.get("workers", 1)
    if workers < 1:
        raise DomainError(f"workers must be at least 1, got {workers}")
    res = simulate.estimate_mttf(cfg.model, T, reps, seed, workers=workers)
    analytic = sysm.mttf_no_pm(cfg.model) if T is simulate.NO_MAINTENANCE else sysm.mttf(cfg.model, T)
    report = {
        "estimate": res.estimate,
        "std_error": res.std_error,
        "replications": res.replications,
        "seed": res.seed,
        "mean_cycles": res.mean_cycles,
        "analytic": analytic,
        "z_score": (res.estimate - analytic) / res.std_error if res.std_error > 0 else 0.0,
    }
    _emit(dumps(report), args.out)
    return EXIT_OK


_COMPARE = {
    "mttf": lambda m1, m2, pts: orders.compare_mttf(m1, m2, orders.default_T_grid(m1, m2, pts or 100)),
    "thresholds": lambda m1, m2, pts: orders.compare_thresholds(m1, m2),
    "optimal": lambda m1, m2, pts: orders.compare_optimal_times(m1, m2),
}


def cmd_compare(args) -> int:
    cfg = _scenario(args)
    if cfg.model2 is None:
        raise ConfigError("compare needs a configuration with 'model2'")
    points = args.points if args.points is not None else cfg.analysis.get("compare_points")
    rep = _COMPARE[args.mode](cfg.model, cfg.model2, points)
    out = {"name": cfg.name, "mode": args.mode, "hypotheses_hold": rep.hypotheses_hold, **rep.to_dict()}
    _emit(dumps(out), args.out)
    if not args.quiet:
        print(f"{cfg.name}: conclusion_holds={rep.conclusion_holds}", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.distribution is not None:
        if args.config or args.scenario:
            raise _UsageError("give a distribution literal or a scenario, not both")
        try:
            raw = json.loads(args.distribution)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid distribution literal: {exc.msg}") from None
        if not isinstance(raw, dict):
            raise ConfigError("distribution literal must be a JSON object")
        try:
            d = dist.from_dict(raw)
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"invalid distribution literal: {exc}") from None
    else:
        d = _scenario(args).model.main
    shape = dist.classify_hazard_shape(d, points=args.points or 4096)
    _emit(dumps(shape.to_dict()), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="scenario JSON file")
    common.add_argument("--scenario", metavar="NAME", help="bundled scenario name (see --list-scenarios)")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, metavar="U64", help="simulation seed")
    common.add_argument("--points", type=int, metavar="N", help="grid size")
    common.add_argument("--quiet", action="store_true", help="suppress progress messages on stderr")

    p = argparse.ArgumentParser(prog="standbypm", description="Preventive maintenance analysis for a priority standby system.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--list-scenarios", action="store_true", help="print bundled scenario names and exit")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    a = sub.add_parser("analyze", parents=[common], help="critical maintenance times and status (JSON)")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("curve", parents=[common], help="M(T) - M(inf) curve on a linear grid (CSV)")
    c.add_argument("--t-min", type=float, dest="t_min")
    c.add_argument("--t-max", type=float, dest="t_max")
    c.set_defaults(func=cmd_curve)

    s = sub.add_parser("simulate", parents=[common], help="Monte-Carlo estimate of M(T) (JSON)")
    s.add_argument("--T", dest="T", default="inf", help="maintenance interval or 'inf' (default)")
    s.add_argument("--replications", type=int)
    s.add_argument("--workers", type=int, help="threads; the result does not depend on it")
    s.set_defaults(func=cmd_simulate)

    m = sub.add_parser("compare", parents=[common], help="two-system comparison report (JSON)")
    m.add_argument("--mode", choices=sorted(_COMPARE), default="mttf")
    m.set_defaults(func=cmd_compare)

    k = sub.add_parser("classify", parents=[common], help="hazard shape of a distribution literal (JSON)")
    k.add_argument("distribution", nargs="?", help='e.g. \'{"kind":"weibull","scale":1,"shape":3}\'')
    k.set_defaults(func=cmd_classify)
    return p


def _fail(status: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return status


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_CONFIG
    if args.list_scenarios:
        print("\n".join(bundled_scenarios()))
        return EXIT_OK
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except (ConfigError, _UsageError) as exc:
        return _fail(EXIT_CONFIG, "config", str(exc))
    except (DomainError, PreconditionError) as exc:
        return _fail(EXIT_CONFIG, "domain", str(exc))
    except (NumericalError, ArithmeticError) as exc:
        return _fail(EXIT_NUMERIC, "numeric", str(exc))
    except OSError as exc:
        return _fail(EXIT_CONFIG, "io", str(exc))


if __name__ == "__main__":
    sys.exit(main())
