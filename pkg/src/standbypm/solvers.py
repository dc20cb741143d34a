"""Solvers for the critical maintenance times of the standby model.

All searches follow the same recipe: evaluate the target function on a
log-spaced pre-scan grid (4096 points by default), take the leftmost sign
change in the expected direction, and refine it by bisection to
``1e-9 * a`` where ``a`` is the mean lifetime of the priority unit. The
search horizon is the time where the priority unit's survival drops to
``1e-12``; it is doubled up to three times if no crossing is found.

Outcomes where maintenance does not pay off are results, not errors; they
are reported through the ``status`` codes below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Any

import numpy as np

from . import distributions as dist
from . import numerics
from . import system as sysm
from .distributions import BFR, DFR, IFR, UBFR, UNCLASSIFIED, HazardShape
from .errors import NoCrossingError, NumericalError, PreconditionError
from .system import SystemModel

FOUND = "found"
DELTA_MU_NONPOSITIVE = "delta_mu_nonpositive"
NEVER_BENEFICIAL = "never_beneficial"
ANTI_AGING = "anti_aging"
UNCLASSIFIED_SHAPE = "unclassified_shape"
BOUNDARY_INDETERMINATE = "boundary_indeterminate"

STATUSES = (FOUND, DELTA_MU_NONPOSITIVE, NEVER_BENEFICIAL, ANTI_AGING, UNCLASSIFIED_SHAPE, BOUNDARY_INDETERMINATE)


@dataclass(frozen=True)
class SolverOptions:
    """Search settings; the defaults are the documented ones."""

    scan_points: int = 4096
    horizon_level: float = 1e-12
    max_doublings: int = 3
    boundary_rtol: float = 1e-6
    xtol_factor: float = 1e-9
    horizon: float | None = None


DEFAULT_OPTIONS = SolverOptions()


@dataclass(frozen=True)
class PolicyAnalysis:
    a: float
    mu1: float
    mu2: float
    delta_mu: float
    K: float
    mttf_no_pm: float
    shape: HazardShape
    status: str
    c: float | None = None
    t0: float | None = None
    t1: float | None = None
    t_star: float | None = None
    mttf_at_t_star: float | None = None

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["shape"] = self.shape.to_dict()
        return out


# ---------------------------------------------------------------------------
# helpers


def _scale(model: SystemModel) -> float:
    return dist.mean(model.main)


def _xtol(model: SystemModel, opts: SolverOptions) -> float:
    return opts.xtol_factor * _scale(model)


def _horizon(model: SystemModel, opts: SolverOptions) -> float:
    if opts.horizon is not None:
        return opts.horizon
    return dist.survival_horizon(model.main, opts.horizon_level)


def _start(model: SystemModel, opts: SolverOptions) -> float:
    return 1e-9 * _horizon(model, opts)


def _hazard_at_zero(d) -> float:
    r0 = float(d.hazard(0.0))
    return r0 if not math.isnan(r0) else math.inf


def _effective_shape(shape: HazardShape) -> tuple[str, float]:
    """Map IFR onto BFR with ``t_min = 0``; return ``(kind, change_point)``."""
    if shape.kind == IFR and not shape.flat:
        return BFR, 0.0
    return shape.kind, shape.change_point or 0.0


def _scan_root(model, opts, grid_fn, point_fn, lo, hi, direction, grow=True):
    """Leftmost crossing of a function on ``[lo, hi]``, growing ``hi`` if needed."""
    xtol = _xtol(model, opts)
    for _ in range(opts.max_doublings + 1):
        grid = np.geomspace(lo, hi, opts.scan_points)
        values = grid_fn(grid)
        if (direction < 0 and values[0] <= 0) or (direction > 0 and values[0] >= 0):
            return lo
        root = numerics.leftmost_root(point_fn, grid, values, direction, xtol)
        if root is not None:
            return root
        if not grow:
            break
        hi *= 2.0
    raise NoCrossingError(f"no crossing found on [{lo:.6g}, {hi:.6g}]")


# ---------------------------------------------------------------------------
# public operations


def mrl_extremum(
    model: SystemModel, shape: HazardShape | None = None, opts: SolverOptions = DEFAULT_OPTIONS
) -> float | None:
    """Turning point ``c`` of the mean residual life of the priority unit.

    For a bathtub hazard with ``r(0+) > 1/a`` this is the maximiser of ``m`` on
    ``(0, t_min)``; for an upside-down bathtub hazard with ``r(0+) < 1/a`` it is
    the minimiser of ``m`` on ``(0, t_max)``. In the remaining cases the mean
    residual life is monotone and ``None`` is returned.
    """
    d = model.main
    shape = shape or dist.classify_hazard_shape(d)
    kind, point = _effective_shape(shape)
    if kind not in (BFR, UBFR):
        raise PreconditionError(f"mean residual life extremum needs a BFR or UBFR hazard, got {shape.kind}")
    a = _scale(model)
    r0 = _hazard_at_zero(d)
    if kind == BFR and not (r0 > 1.0 / a and point > 0):
        return None
    if kind == UBFR and not r0 < 1.0 / a:
        return None
    lo = min(_start(model, opts), 1e-6 * point)

    def grid_fn(grid):
        return dist.mrl_on_grid(d, grid) * d.hazard(grid) - 1.0

    direction = -1 if kind == BFR else +1
    return _scan_root(model, opts, grid_fn, lambda t: dist.mrl_slope(d, t), lo, point, direction, grow=False)


@dataclass(frozen=True)
class _Threshold:
    t0: float | None
    status: str
    shape: HazardShape
    c: float | None = None


def _threshold(model: SystemModel, shape: HazardShape | None, opts: SolverOptions) -> _Threshold:
    d = model.main
    shape = shape or dist.classify_hazard_shape(d)
    if sysm.delta_mu(model) <= 0:
        return _Threshold(None, DELTA_MU_NONPOSITIVE, shape)
    if shape.kind == UNCLASSIFIED:
        return _Threshold(None, UNCLASSIFIED_SHAPE, shape)
    if shape.kind == DFR or (shape.kind == IFR and shape.flat):
        # constant or decreasing hazard: increasing mean residual life
        return _Threshold(None, ANTI_AGING, shape)

    K = sysm.threshold_constant(model)
    a = _scale(model)
    kind, _ = _effective_shape(shape)
    horizon = _horizon(model, opts)
    band = opts.boundary_rtol * K

    def grid_fn(grid):
        return dist.mrl_on_grid(d, grid) - K

    def point_fn(t):
        return dist.mrl(d, t) - K

    if kind == BFR:
        c = mrl_extremum(model, shape, opts)
        limit = dist.hazard_limit(d).value
        lim_m = math.inf if limit == 0 else 1.0 / limit
        if abs(lim_m - K) < band:
            return _Threshold(None, BOUNDARY_INDETERMINATE, shape, c)
        if lim_m >= K:
            return _Threshold(None, NEVER_BENEFICIAL, shape, c)
        lo = c if c is not None else _start(model, opts)
        t0 = _scan_root(model, opts, grid_fn, point_fn, lo, horizon, -1)
        return _Threshold(t0, FOUND, shape, c)

    if _hazard_at_zero(d) >= 1.0 / a:
        return _Threshold(None, ANTI_AGING, shape)
    c = mrl_extremum(model, shape, opts)
    m_c = dist.mrl(d, c)
    if abs(m_c - K) < band:
        return _Threshold(None, BOUNDARY_INDETERMINATE, shape, c)
    if m_c >= K:
        return _Threshold(None, NEVER_BENEFICIAL, shape, c)
    t0 = _scan_root(model, opts, grid_fn, point_fn, _start(model, opts), c, -1, grow=False)
    return _Threshold(t0, FOUND, shape, c)


def threshold_time(
    model: SystemModel, shape: HazardShape | None = None, opts: SolverOptions = DEFAULT_OPTIONS
) -> tuple[float | None, str]:
    """Smallest maintenance time beyond which maintenance starts to pay off.

    Returns ``(t0, status)``; ``t0`` is ``None`` unless ``status == "found"``.
    """
    info = _threshold(model, shape, opts)
    return info.t0, info.status


def benefit_window_end(
    model: SystemModel, shape: HazardShape | None = None, opts: SolverOptions = DEFAULT_OPTIONS
) -> float | None:
    """End ``T1`` of the benefit window for an upside-down bathtub hazard.

    ``None`` means the window is unbounded, i.e. ``lim m < K``.

    Raises
    ------
    PreconditionError
        If the hazard is not UBFR, no threshold exists, or ``lim m`` equals
        ``K`` within the boundary band.
    """
    d = model.main
    shape = shape or dist.classify_hazard_shape(d)
    if shape.kind != UBFR:
        raise PreconditionError(f"benefit window end is defined for UBFR hazards only, got {shape.kind}")
    info = _threshold(model, shape, opts)
    if info.status != FOUND:
        raise PreconditionError(f"no threshold time exists (status {info.status})")
    K = sysm.threshold_constant(model)
    limit = dist.hazard_limit(d).value
    lim_m = math.inf if limit == 0 else 1.0 / limit
    if abs(lim_m - K) < opts.boundary_rtol * K:
        raise PreconditionError("limiting mean residual life equals K within the boundary band")
    if lim_m < K:
        return None
    return _scan_root(
        model,
        opts,
        lambda g: dist.mrl_on_grid(d, g) - K,
        lambda t: dist.mrl(d, t) - K,
        info.c,
        _horizon(model, opts),
        +1,
    )


def optimal_time(
    model: SystemModel, shape: HazardShape | None = None, opts: SolverOptions = DEFAULT_OPTIONS
) -> float:
    """Maintenance time maximising the mean time to system failure.

    Solves ``phi(T) = mu1 / delta_mu`` on the branch where ``phi`` increases:
    ``[max(T0, t_min), inf)`` for bathtub hazards and ``(T0, c)`` for
    upside-down bathtub hazards.
    """
    d = model.main
    shape = shape or dist.classify_hazard_shape(d)
    info = _threshold(model, shape, opts)
    if info.status != FOUND:
        raise PreconditionError(f"optimal time needs an existing threshold (status {info.status})")
    target = sysm.phi_target(model)
    kind, point = _effective_shape(shape)

    def grid_fn(grid):
        return sysm.phi(model, grid) - target

    def point_fn(t):
        return sysm.phi(model, t) - target

    if kind == BFR:
        lo = max(info.t0, point)
        t_star = _scan_root(model, opts, grid_fn, point_fn, lo, max(_horizon(model, opts), 2.0 * lo), +1)
    else:
        t_star = _scan_root(model, opts, grid_fn, point_fn, info.t0, info.c, +1, grow=False)
    if t_star < info.t0 - _xtol(model, opts):
        raise NumericalError(f"optimal time {t_star:.9g} precedes the threshold {info.t0:.9g}")
    return t_star


def analyze(model: SystemModel, opts: SolverOptions = DEFAULT_OPTIONS) -> PolicyAnalysis:
    """Run the full case analysis and collect every derived quantity."""
    d = model.main
    shape = dist.classify_hazard_shape(d)
    a = dist.mean(d)
    mu1 = sysm.mu(model, sysm.REPAIR)
    mu2 = sysm.mu(model, sysm.MAINTENANCE)
    base = dict(
        a=a,
        mu1=mu1,
        mu2=mu2,
        delta_mu=mu1 - mu2,
        K=a * (mu1 - mu2) / mu1,
        mttf_no_pm=sysm.mttf_no_pm(model),
        shape=shape,
    )
    info = _threshold(model, shape, opts)
    if info.status != FOUND:
        return PolicyAnalysis(status=info.status, c=info.c, **base)
    status = FOUND
    t1 = None
    if shape.kind == UBFR:
        try:
            t1 = benefit_window_end(model, shape, opts)
        except PreconditionError:
            status = BOUNDARY_INDETERMINATE
    t_star = optimal_time(model, shape, opts)
    return PolicyAnalysis(
        status=status,
        c=info.c,
        t0=info.t0,
        t1=t1,
        t_star=t_star,
        mttf_at_t_star=sysm.mttf(model, t_star),
        **base,
    )
