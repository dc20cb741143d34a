"""Stochastic-order checks and two-system comparisons.

Orders between lifetimes are verified on finite grids with an explicit
tolerance, so a positive verdict means "holds on the grid", never a proof.
Hypotheses of the form "identically distributed" are checked structurally
(equal composition trees), not numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence, Union

import numpy as np

from . import distributions as dist
from . import solvers
from . import system as sysm
from .distributions import BFR, IFR, UBFR, LifetimeDistribution
from .errors import DomainError, StandbyPMError
from .system import SystemModel

ST, LT, MRL = "st", "lt", "mrl"

ST_TOL = 1e-10
LT_RTOL = 1e-8
MRL_RTOL = 1e-8
GRID_POINTS = 512
GRID_LEVEL = 1e-9


@dataclass(frozen=True)
class OrderVerdict:
    order_kind: str
    holds_on_grid: bool
    grid: tuple[float, ...]
    first_violation: dict[str, float] | None
    tolerance: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "order_kind": self.order_kind,
            "holds_on_grid": self.holds_on_grid,
            "grid": list(self.grid),
            "first_violation": self.first_violation,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class ScalarCheck:
    description: str
    lhs: float
    rhs: float
    holds: bool

    def to_dict(self) -> dict[str, Any]:
        return {"description": self.description, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


Verdict = Union[OrderVerdict, ScalarCheck]


def _holds(v: Verdict) -> bool:
    return v.holds_on_grid if isinstance(v, OrderVerdict) else v.holds


@dataclass(frozen=True)
class ComparisonReport:
    hypothesis_verdicts: dict[str, Verdict]
    conclusion_checked: bool
    conclusion_holds: bool
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return all(_holds(v) for v in self.hypothesis_verdicts.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "hypothesis_verdicts": {k: v.to_dict() for k, v in self.hypothesis_verdicts.items()},
            "conclusion_checked": self.conclusion_checked,
            "conclusion_holds": self.conclusion_holds,
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# order predicates


def default_grid(x: LifetimeDistribution, y: LifetimeDistribution, points: int = GRID_POINTS, joint: str = "max"):
    """Log-spaced checkpoints up to the time where both (``max``) or either (``min``) survival hits 1e-9."""
    hx = dist.survival_horizon(x, GRID_LEVEL)
    hy = dist.survival_horizon(y, GRID_LEVEL)
    h = max(hx, hy) if joint == "max" else min(hx, hy)
    return np.geomspace(1e-6 * h, h, points)


def default_s_grid(points: int = 64) -> np.ndarray:
    return np.concatenate(([0.0], np.geomspace(1e-3, 1e3, points)))


def _verdict(kind, grid, xs, ys, slack, tol):
    bad = np.flatnonzero(xs < ys - slack)
    violation = None
    if bad.size:
        i = int(bad[0])
        violation = {"point": float(grid[i]), "x": float(xs[i]), "y": float(ys[i])}
    return OrderVerdict(kind, violation is None, tuple(float(g) for g in grid), violation, tol)


def _check_grid(grid):
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0 or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be nonempty and strictly increasing")
    return grid


def check_st(x: LifetimeDistribution, y: LifetimeDistribution, grid=None, tolerance: float = ST_TOL) -> OrderVerdict:
    """Does ``x`` dominate ``y`` in the usual stochastic order (``S_x >= S_y``)?"""
    grid = _check_grid(default_grid(x, y) if grid is None else grid)
    return _verdict(ST, grid, x.sf(grid), y.sf(grid), tolerance, tolerance)


def check_lt(x: LifetimeDistribution, y: LifetimeDistribution, s_grid=None, tolerance: float = LT_RTOL) -> OrderVerdict:
    """Does ``x`` dominate ``y`` in the Laplace transform order of survival functions?"""
    s_grid = _check_grid(default_s_grid() if s_grid is None else s_grid)
    xs = np.array([dist.survival_transform(x, float(s)) for s in s_grid])
    ys = np.array([dist.survival_transform(y, float(s)) for s in s_grid])
    return _verdict(LT, s_grid, xs, ys, tolerance * np.abs(ys) + 1e-12, tolerance)


def check_mrl(x: LifetimeDistribution, y: LifetimeDistribution, grid=None, tolerance: float = MRL_RTOL) -> OrderVerdict:
    """Does ``x`` dominate ``y`` in the mean residual life order?"""
    grid = _check_grid(default_grid(x, y, joint="min") if grid is None else grid)
    xs = dist.mrl_on_grid(x, grid)
    ys = dist.mrl_on_grid(y, grid)
    return _verdict(MRL, grid, xs, ys, tolerance * np.abs(ys), tolerance)


def mttfr(d: LifetimeDistribution, t):
    """Mean time to failure until replacement, ``int_0^t S / F(t)``."""
    arr = np.asarray(t, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"t must be positive, got {t!r}")
    cdf = d.cdf(arr)
    if np.any(cdf <= 0):
        raise DomainError("distribution function is zero at t")
    if arr.ndim:
        return dist.integrated_survival_on_grid(d, arr) / cdf
    return dist.integrated_survival(d, float(arr)) / float(cdf)


# ---------------------------------------------------------------------------
# two-system comparisons


def _mu_table(m1: SystemModel, m2: SystemModel) -> dict[str, float]:
    return {
        "mu11": sysm.mu(m1, sysm.REPAIR),
        "mu12": sysm.mu(m1, sysm.MAINTENANCE),
        "mu21": sysm.mu(m2, sysm.REPAIR),
        "mu22": sysm.mu(m2, sysm.MAINTENANCE),
    }


def default_T_grid(m1: SystemModel, m2: SystemModel, points: int = 100) -> np.ndarray:
    scale = min(dist.mean(m1.main), dist.mean(m2.main))
    horizon = max(dist.survival_horizon(m1.main), dist.survival_horizon(m2.main))
    return np.geomspace(1e-2 * scale, horizon, points)


def compare_mttf(m1: SystemModel, m2: SystemModel, T_grid: Sequence[float] | None = None) -> ComparisonReport:
    """Check ``M1(T) >= M2(T)`` for a pair of ordered systems.

    System 1 is the one expected to last longer. The hypotheses are reported
    one by one in ``hypothesis_verdicts`` (``main_st``, ``standby_rate``,
    ``repair_lt``, ``maintenance_lt``); repair and maintenance times of
    system 1 must be smaller in the Laplace transform order.
    """
    grid = _check_grid(default_T_grid(m1, m2) if T_grid is None else T_grid)
    hyps: dict[str, Verdict] = {
        "main_st": check_st(m1.main, m2.main),
        "standby_rate": ScalarCheck(
            "lambda1 <= lambda2", m1.standby_rate, m2.standby_rate, m1.standby_rate <= m2.standby_rate
        ),
        "repair_lt": check_lt(m2.repair, m1.repair),
        "maintenance_lt": check_lt(m2.maintenance, m1.maintenance),
    }
    M1 = sysm.mttf_on_grid(m1, grid)
    M2 = sysm.mttf_on_grid(m2, grid)
    checked = all(_holds(v) for v in hyps.values())
    holds = bool(np.all(M1 >= M2 - 1e-9))
    details = {
        "T": grid.tolist(),
        "M1": M1.tolist(),
        "M2": M2.tolist(),
        "mu": _mu_table(m1, m2),
    }
    return ComparisonReport(hyps, checked, holds, details)


def compare_thresholds(m1: SystemModel, m2: SystemModel) -> ComparisonReport:
    """Check ``T10 >= T20`` when the main units have equal means and are mrl-ordered.

    Standby rates and repair/maintenance descriptions must be identical.
    """
    a1, a2 = dist.mean(m1.main), dist.mean(m2.main)
    hyps: dict[str, Verdict] = {
        "standby_rate_equal": ScalarCheck(
            "lambda1 == lambda2", m1.standby_rate, m2.standby_rate, m1.standby_rate == m2.standby_rate
        ),
        "repair_identical": ScalarCheck("Y11 =st Y21 (structural)", 0.0, 0.0, m1.repair == m2.repair),
        "maintenance_identical": ScalarCheck(
            "Y12 =st Y22 (structural)", 0.0, 0.0, m1.maintenance == m2.maintenance
        ),
        "mean_equal": ScalarCheck("a1 == a2", a1, a2, abs(a1 - a2) <= 1e-8 * a1),
        "main_mrl": check_mrl(m1.main, m2.main),
    }
    checked = all(_holds(v) for v in hyps.values())
    details: dict[str, Any] = {"a": [a1, a2]}
    if not checked:
        return ComparisonReport(hyps, False, False, details)
    t01, s1 = solvers.threshold_time(m1)
    t02, s2 = solvers.threshold_time(m2)
    details.update(t0=[t01, t02], status=[s1, s2], K=[sysm.threshold_constant(m1), sysm.threshold_constant(m2)])
    if t01 is not None and t02 is not None:
        holds = t01 >= t02 - 1e-6
    else:
        # benefit set of system 1 is contained in that of system 2
        holds = t01 is None
    return ComparisonReport(hyps, True, bool(holds), details)


def compare_optimal_times(m1: SystemModel, m2: SystemModel) -> ComparisonReport:
    """Check that ``T1* >= T2*`` exactly when ``mu21 mu12 >= mu11 mu22``.

    The main units must be identical, with a bathtub (or IFR) or upside-down
    bathtub hazard, and both systems must have an optimal time.
    """
    mus = _mu_table(m1, m2)
    K1, K2 = sysm.threshold_constant(m1), sysm.threshold_constant(m2)
    same_main = m1.main == m2.main
    hyps: dict[str, Verdict] = {
        "main_identical": ScalarCheck("X11 =st X21 (structural)", 0.0, 0.0, same_main),
        "delta_mu1_positive": ScalarCheck("mu11 - mu12 > 0", mus["mu11"] - mus["mu12"], 0.0, mus["mu11"] > mus["mu12"]),
        "delta_mu2_positive": ScalarCheck("mu21 - mu22 > 0", mus["mu21"] - mus["mu22"], 0.0, mus["mu21"] > mus["mu22"]),
    }
    left, right = mus["mu21"] * mus["mu12"], mus["mu11"] * mus["mu22"]
    predicted = left >= right
    details: dict[str, Any] = {
        "mu": mus,
        "products": {"mu21_mu12": left, "mu11_mu22": right},
        "K": [K1, K2],
        "predicted_t1_ge_t2": predicted,
        "lt_chain": [
            check_lt(m1.maintenance, m2.maintenance, tolerance=LT_RTOL).holds_on_grid,
            check_lt(m1.repair, m1.maintenance).holds_on_grid,
            check_lt(m2.repair, m1.repair).holds_on_grid,
        ],
    }
    shape = dist.classify_hazard_shape(m1.main)
    kind = BFR if shape.kind == IFR and not shape.flat else shape.kind
    hyps["shape"] = ScalarCheck(f"shared hazard shape is BFR or UBFR ({shape.kind})", 0.0, 0.0, same_main and kind in (BFR, UBFR))
    k_min = min(K1, K2)
    if _holds(hyps["shape"]) and k_min > 0:
        if kind == BFR:
            limit = dist.hazard_limit(m1.main).value
            hyps["existence"] = ScalarCheck("lim r(t) > 1/min(K1, K2)", limit, 1.0 / k_min, limit > 1.0 / k_min)
        else:
            a = dist.mean(m1.main)
            r0 = float(m1.main.hazard(0.0))
            hyps["hazard_at_zero"] = ScalarCheck("r(0) <= 1/a", r0, 1.0 / a, r0 <= 1.0 / a)
            c = solvers.mrl_extremum(m1, shape) if r0 < 1.0 / a else None
            rc = float(m1.main.hazard(c)) if c is not None else math.nan
            hyps["existence"] = ScalarCheck("r(c) > 1/min(K1, K2)", rc, 1.0 / k_min, c is not None and rc > 1.0 / k_min)
    else:
        hyps["existence"] = ScalarCheck("optimal times exist", 0.0, 0.0, False)
    checked = all(_holds(v) for v in hyps.values())
    if not checked:
        return ComparisonReport(hyps, False, False, details)
    try:
        t1 = solvers.optimal_time(m1, shape)
        t2 = solvers.optimal_time(m2, shape)
    except StandbyPMError as exc:
        details["error"] = str(exc)
        return ComparisonReport(hyps, False, False, details)
    scale = dist.mean(m1.main)
    observed = t1 >= t2 - 1e-6 * scale
    details.update(t_star=[t1, t2], observed_t1_ge_t2=observed)
    return ComparisonReport(hyps, True, bool(observed == predicted), details)
