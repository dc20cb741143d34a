"""Compositional lifetime distributions.

A lifetime is an :class:`Exponential`, a :class:`Weibull`, or the minimum
(:class:`MinOf`, units in series) or maximum (:class:`MaxOf`, units in
parallel) of independent lifetimes. Every object is an immutable dataclass;
evaluation is done in log-space so that survival probabilities far in the
tail do not underflow.

The module-level functions (:func:`survival`, :func:`hazard`, :func:`mean`,
:func:`mrl`, ...) validate their time arguments and are the public surface.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np
from scipy.special import gamma as gamma_fn

from . import numerics
from .errors import BeyondSupportError, DomainError, NonFiniteMeanError

#: survival level used to truncate improper integrals
TRUNCATION_LEVEL = 1e-12
#: survival level defining the default classification horizon
CLASSIFY_LEVEL = 1e-9


class LifetimeDistribution:
    """Base class; subclasses implement ``log_sf``, ``hazard`` and ``sample``."""

    def log_sf(self, t):
        raise NotImplementedError

    def hazard(self, t):
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, size=None):
        raise NotImplementedError

    def time_scale(self) -> float:
        """A characteristic time scale, used to seed searches."""
        raise NotImplementedError

    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError

    # derived quantities -------------------------------------------------

    def sf(self, t):
        return np.exp(self.log_sf(t))

    def log_cdf(self, t):
        if isinstance(t, float):
            return numerics.log1mexp(float(self.log_sf(t)))
        return numerics.log1mexp(self.log_sf(t))

    def cdf(self, t):
        return -np.expm1(self.log_sf(t))

    def pdf(self, t):
        return self.hazard(t) * self.sf(t)

    def closed_form_mean(self) -> float | None:
        return None

    def memoryless_rate(self) -> float | None:
        """Constant hazard if the lifetime is exponential, else ``None``."""
        return None


@dataclass(frozen=True)
class Exponential(LifetimeDistribution):
    rate: float

    def __post_init__(self):
        _check_positive(rate=self.rate)

    def log_sf(self, t):
        if isinstance(t, float):
            return -self.rate * t
        return -self.rate * np.asarray(t, dtype=float)

    def hazard(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.rate)

    def sample(self, rng, size=None):
        u = 1.0 - rng.random(size)
        return -np.log(u) / self.rate

    def time_scale(self):
        return 1.0 / self.rate

    def closed_form_mean(self):
        return 1.0 / self.rate

    def memoryless_rate(self):
        return self.rate

    def to_dict(self):
        return {"kind": "exponential", "rate": self.rate}


@dataclass(frozen=True)
class Weibull(LifetimeDistribution):
    scale: float
    shape: float

    def __post_init__(self):
        _check_positive(scale=self.scale, shape=self.shape)

    def log_sf(self, t):
        if isinstance(t, float):
            try:
                return -((t / self.scale) ** self.shape)
            except OverflowError:
                return -math.inf
        with np.errstate(over="ignore"):
            return -((np.asarray(t, dtype=float) / self.scale) ** self.shape)

    def hazard(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return (self.shape / self.scale) * (t / self.scale) ** (self.shape - 1.0)

    def sample(self, rng, size=None):
        u = 1.0 - rng.random(size)
        return self.scale * (-np.log(u)) ** (1.0 / self.shape)

    def time_scale(self):
        return self.scale

    def closed_form_mean(self):
        return self.scale * float(gamma_fn(1.0 + 1.0 / self.shape))

    def memoryless_rate(self):
        return 1.0 / self.scale if self.shape == 1.0 else None

    def to_dict(self):
        return {"kind": "weibull", "scale": self.scale, "shape": self.shape}


@dataclass(frozen=True)
class MinOf(LifetimeDistribution):
    """Minimum of independent lifetimes: survivals multiply, hazards add."""

    components: tuple[LifetimeDistribution, ...]

    def __init__(self, components):
        object.__setattr__(self, "components", tuple(components))
        if len(self.components) < 2:
            raise DomainError("MinOf needs at least two components")

    def log_sf(self, t):
        return sum(c.log_sf(t) for c in self.components)

    def hazard(self, t):
        return sum(c.hazard(t) for c in self.components)

    def sample(self, rng, size=None):
        draws = [c.sample(rng, size) for c in self.components]
        return np.minimum.reduce(draws) if size is not None else min(draws)

    def time_scale(self):
        return min(c.time_scale() for c in self.components)

    def closed_form_mean(self):
        rate = self.memoryless_rate()
        return None if rate is None else 1.0 / rate

    def memoryless_rate(self):
        rates = [c.memoryless_rate() for c in self.components]
        return None if any(r is None for r in rates) else sum(rates)

    def to_dict(self):
        return {"kind": "min_of", "components": [c.to_dict() for c in self.components]}


@dataclass(frozen=True)
class MaxOf(LifetimeDistribution):
    """Maximum of independent lifetimes: distribution functions multiply."""

    components: tuple[LifetimeDistribution, ...]

    def __init__(self, components):
        object.__setattr__(self, "components", tuple(components))
        if len(self.components) < 2:
            raise DomainError("MaxOf needs at least two components")

    def log_cdf(self, t):
        return sum(c.log_cdf(t) for c in self.components)

    def log_sf(self, t):
        if isinstance(t, float):
            return numerics.log1mexp(float(self.log_cdf(t)))
        return numerics.log1mexp(self.log_cdf(t))

    def cdf(self, t):
        return np.exp(self.log_cdf(t))

    def hazard(self, t):
        # f = sum_i f_i * prod_{j != i} F_j, accumulated in log-space
        t = np.asarray(t, dtype=float)
        log_cdfs = [c.log_cdf(t) for c in self.components]
        total_log_cdf = sum(log_cdfs)
        log_sf = numerics.log1mexp(total_log_cdf)
        out = np.zeros_like(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            for i, c in enumerate(self.components):
                rest = sum(lc for j, lc in enumerate(log_cdfs) if j != i)
                term = np.exp(np.log(c.hazard(t)) + c.log_sf(t) + rest - log_sf)
                out = out + np.where(np.isnan(term), 0.0, term)
        return out

    def sample(self, rng, size=None):
        draws = [c.sample(rng, size) for c in self.components]
        return np.maximum.reduce(draws) if size is not None else max(draws)

    def time_scale(self):
        return max(c.time_scale() for c in self.components)

    def closed_form_mean(self):
        rates = [c.memoryless_rate() for c in self.components]
        if any(r is None for r in rates) or len(rates) > 12:
            return None
        # inclusion-exclusion over nonempty subsets of the exponential rates
        total = 0.0
        for k in range(1, len(rates) + 1):
            sign = 1.0 if k % 2 else -1.0
            total += sign * math.fsum(1.0 / sum(s) for s in itertools.combinations(rates, k))
        return total

    def to_dict(self):
        return {"kind": "max_of", "components": [c.to_dict() for c in self.components]}


def _check_positive(**params):
    for name, value in params.items():
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be a positive finite number, got {value!r}")


def from_dict(literal: dict[str, Any]) -> LifetimeDistribution:
    """Build a distribution from its tagged-object literal."""
    kind = literal.get("kind")
    if kind == "exponential":
        return Exponential(float(literal["rate"]))
    if kind == "weibull":
        return Weibull(float(literal["scale"]), float(literal["shape"]))
    if kind in ("min_of", "max_of"):
        parts = [from_dict(c) for c in literal["components"]]
        return MinOf(parts) if kind == "min_of" else MaxOf(parts)
    raise DomainError(f"unknown distribution kind {kind!r}")


# ---------------------------------------------------------------------------
# public evaluation functions


def _times(t):
    arr = np.asarray(t, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError(f"time must be nonnegative, got {t!r}")
    return arr


def _out(value, like):
    return float(value) if np.ndim(like) == 0 else value


def survival(d: LifetimeDistribution, t):
    """Survival probability ``P(X > t)``."""
    arr = _times(t)
    return _out(np.clip(d.sf(arr), 0.0, 1.0), t)


def log_survival(d: LifetimeDistribution, t):
    arr = _times(t)
    return _out(d.log_sf(arr), t)


def density(d: LifetimeDistribution, t):
    arr = _times(t)
    return _out(d.pdf(arr), t)


def hazard(d: LifetimeDistribution, t):
    """Hazard rate ``f(t) / S(t)``.

    Raises
    ------
    BeyondSupportError
        Where the survival function is numerically zero.
    """
    arr = _times(t)
    if np.any(np.isneginf(d.log_sf(arr))):
        raise BeyondSupportError(f"survival is zero at t={t!r}")
    return _out(d.hazard(arr), t)


def survival_horizon(d: LifetimeDistribution, level: float = TRUNCATION_LEVEL) -> float:
    """Time at which the survival function falls to ``level``."""
    target = math.log(level)
    hi = d.time_scale()
    for _ in range(2000):
        if float(d.log_sf(hi)) <= target:
            break
        hi *= 2.0
    else:
        raise NonFiniteMeanError("survival does not decay to the truncation level")
    lo = hi / 2.0
    while float(d.log_sf(lo)) <= target and lo > 1e-300:
        lo /= 2.0
    return numerics.bisect(lambda x: float(d.log_sf(x)) - target, lo, hi, xtol=1e-12 * hi)


def integrated_survival(d: LifetimeDistribution, t: float) -> float:
    """``int_0^t S(x) dx`` by adaptive quadrature (closed form when memoryless)."""
    t = float(_times(t))
    rate = d.memoryless_rate()
    if rate is not None:
        return -math.expm1(-rate * t) / rate
    end = min(t, survival_horizon(d))
    value = numerics.quad(lambda x: float(d.sf(x)), 0.0, end, points=_breaks(0.0, end, d))
    if t > end:
        value += float(d.sf(end)) * mrl(d, end)
    return value


def _breaks(a, b, d):
    pts = numerics.geometric_breakpoints(a, b)
    s = d.time_scale()
    pts += [s * 2.0**k for k in range(-6, 7)]
    return sorted(set(pts))


def mean(d: LifetimeDistribution) -> float:
    """Expected lifetime, closed form when available, quadrature otherwise."""
    closed = d.closed_form_mean()
    if closed is not None:
        return closed
    end = survival_horizon(d)
    return numerics.quad(lambda x: float(d.sf(x)), 0.0, end, points=_breaks(0.0, end, d))


def _tail_ratio_integral(d: LifetimeDistribution, t: float, log_s: float) -> float:
    """``int_0^inf S(t+u)/S(t) du`` with the upper limit found by doubling."""
    target = math.log(TRUNCATION_LEVEL)
    u = d.time_scale()
    for _ in range(2000):
        if float(d.log_sf(t + u)) - log_s <= target:
            break
        u *= 2.0
    else:
        raise NonFiniteMeanError("tail integral does not converge")

    def integrand(x):
        return math.exp(float(d.log_sf(t + x)) - log_s)

    return numerics.quad(integrand, 0.0, u, points=_breaks(0.0, u, d))


def mrl(d: LifetimeDistribution, t):
    """Mean residual life ``E[X - t | X > t]``."""
    arr = _times(t)
    if arr.ndim:
        return np.array([mrl(d, float(x)) for x in arr.ravel()]).reshape(arr.shape)
    rate = d.memoryless_rate()
    if rate is not None:
        return 1.0 / rate
    t = float(arr)
    log_s = float(d.log_sf(t))
    if not math.isfinite(log_s):
        raise BeyondSupportError(f"survival is zero at t={t!r}")
    return _tail_ratio_integral(d, t, log_s)


def mrl_slope(d: LifetimeDistribution, t):
    """Derivative of the mean residual life, ``m(t) r(t) - 1``."""
    return mrl(d, t) * hazard(d, t) - 1.0


def integrated_survival_on_grid(d: LifetimeDistribution, grid) -> np.ndarray:
    """``int_0^t S`` at every point of an increasing grid (vectorised)."""
    grid = np.asarray(grid, dtype=float)
    rate = d.memoryless_rate()
    if rate is not None:
        return -np.expm1(-rate * grid) / rate
    first = integrated_survival(d, float(grid[0]))
    if grid.size == 1:
        return np.array([first])
    segs = numerics.segment_integrals(
        d.sf,
        grid,
        fallback=lambda i, a, b: numerics.quad(lambda x: float(d.sf(x)), a, b),
    )
    return first + np.concatenate(([0.0], np.cumsum(segs)))


def mrl_on_grid(d: LifetimeDistribution, grid) -> np.ndarray:
    """Mean residual life at every point of an increasing grid.

    Uses a backward recursion ``m_i = int_{t_i}^{t_{i+1}} S/S(t_i) + S(t_{i+1})/S(t_i) m_{i+1}``
    so that no survival value is ever formed outside log-space.
    """
    grid = np.asarray(grid, dtype=float)
    rate = d.memoryless_rate()
    if rate is not None:
        return np.full_like(grid, 1.0 / rate)
    log_s = d.log_sf(grid)
    if np.any(~np.isfinite(log_s)):
        raise BeyondSupportError("survival is zero on part of the grid")
    out = np.empty_like(grid)
    out[-1] = mrl(d, float(grid[-1]))
    if grid.size == 1:
        return out
    ref = log_s[:-1]

    def f(nodes):
        return np.exp(d.log_sf(nodes) - ref[:, None])

    def fallback(i, a, b):
        return numerics.quad(lambda x: math.exp(float(d.log_sf(x)) - ref[i]), a, b)

    segs = numerics.segment_integrals(f, grid, fallback=fallback)
    step = np.exp(log_s[1:] - log_s[:-1])
    for i in range(grid.size - 2, -1, -1):
        out[i] = segs[i] + step[i] * out[i + 1]
    return out


# ---------------------------------------------------------------------------
# hazard shape


@dataclass(frozen=True)
class HazardShape:
    """Verdict of :func:`classify_hazard_shape`.

    ``change_point`` is ``t_min`` for BFR, ``t_max`` for UBFR and ``None``
    otherwise. ``flat`` marks a hazard that is constant on the whole grid.
    """

    kind: str
    change_point: float | None
    grid: tuple[float, float, int]
    sign_changes: int
    flat: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.lower(),
            "change_point": self.change_point,
            "grid": {"start": self.grid[0], "stop": self.grid[1], "points": self.grid[2]},
            "sign_changes": self.sign_changes,
            "flat": self.flat,
        }


IFR, DFR, BFR, UBFR, UNCLASSIFIED = "IFR", "DFR", "BFR", "UBFR", "Unclassified"

_FLAT_RTOL = 1e-10


def _slope_sign(d: LifetimeDistribution, t: float) -> int:
    # no flatness band here: near the turning point the slope is tiny but its sign is still meaningful
    delta = 1e-6
    diff = float(d.hazard(t * (1.0 + delta))) - float(d.hazard(t * (1.0 - delta)))
    return int(np.sign(diff))


def classify_hazard_shape(
    d: LifetimeDistribution, horizon: float | None = None, points: int = 4096
) -> HazardShape:
    """Classify the hazard as IFR, DFR, BFR, UBFR or Unclassified.

    The slope sign is scanned on a log-spaced grid starting at ``1e-9*horizon``;
    each sign change is refined by bisection to ``1e-9*horizon``. A constant
    hazard is reported as IFR with ``flat=True``.
    """
    if horizon is None:
        horizon = survival_horizon(d, CLASSIFY_LEVEL)
    start = 1e-9 * horizon
    grid = np.geomspace(start, horizon, points)
    r = d.hazard(grid)
    diffs = np.diff(r)
    scale = np.maximum(np.abs(r[:-1]), np.abs(r[1:]))
    signs = np.where(np.abs(diffs) <= _FLAT_RTOL * scale, 0, np.sign(diffs)).astype(int)
    nonzero = np.flatnonzero(signs)
    info = (float(start), float(horizon), int(points))
    if nonzero.size == 0:
        return HazardShape(IFR, None, info, 0, flat=True)
    seq = signs[nonzero]
    change_at = np.flatnonzero(seq[1:] != seq[:-1])
    n_changes = int(change_at.size)
    if n_changes == 0:
        return HazardShape(IFR if seq[0] > 0 else DFR, None, info, 0)
    if n_changes > 1:
        return HazardShape(UNCLASSIFIED, None, info, n_changes)
    old = int(seq[change_at[0]])
    i = int(nonzero[change_at[0]])
    lo, hi = float(grid[i]), float(grid[min(i + 2, points - 1)])
    tol = 1e-9 * horizon
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _slope_sign(d, mid) == old:
            lo = mid
        else:
            hi = mid
    point = 0.5 * (lo + hi)
    return HazardShape(BFR if old < 0 else UBFR, point, info, 1)


class HazardLimit(NamedTuple):
    value: float
    numeric: bool


def _analytic_limit(d: LifetimeDistribution) -> float | None:
    if isinstance(d, Exponential):
        return d.rate
    if isinstance(d, Weibull):
        if d.shape > 1.0:
            return math.inf
        return 1.0 / d.scale if d.shape == 1.0 else 0.0
    parts = [_analytic_limit(c) for c in getattr(d, "components", ())]
    if not parts or any(p is None for p in parts):
        return None
    if isinstance(d, MinOf):
        return math.fsum(parts) if all(math.isfinite(p) for p in parts) else math.inf
    if isinstance(d, MaxOf):
        return min(parts)
    return None


def hazard_limit(d: LifetimeDistribution) -> HazardLimit:
    """``lim_{t->inf} r(t)``, analytic for the supported compositions."""
    value = _analytic_limit(d)
    if value is not None:
        return HazardLimit(value, False)
    t = survival_horizon(d)
    return HazardLimit(float(d.hazard(t)), True)


def survival_transform(d: LifetimeDistribution, s: float) -> float:
    """Laplace transform of the survival function, ``int_0^inf e^{-st} S(t) dt``.

    At ``s = 0`` this is the mean.
    """
    if s < 0:
        raise DomainError(f"transform argument must be nonnegative, got {s!r}")
    if s == 0:
        return mean(d)
    rate = d.memoryless_rate()
    if rate is not None:
        return 1.0 / (s + rate)
    if isinstance(d, MaxOf):
        rates = [c.memoryless_rate() for c in d.components]
        if all(r is not None for r in rates) and len(rates) <= 12:
            total = 0.0
            for k in range(1, len(rates) + 1):
                sign = 1.0 if k % 2 else -1.0
                total += sign * math.fsum(1.0 / (s + sum(c)) for c in itertools.combinations(rates, k))
            return total
    target = math.log(TRUNCATION_LEVEL)
    end = min(d.time_scale(), 1.0 / s)
    for _ in range(2000):
        if float(d.log_sf(end)) - s * end <= target:
            break
        end *= 2.0

    def integrand(x):
        return math.exp(float(d.log_sf(x)) - s * x)

    return numerics.quad(integrand, 0.0, end, points=_breaks(0.0, end, d))
