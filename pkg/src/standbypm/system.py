"""The two-unit priority standby model with repair and preventive maintenance.

The priority unit (lifetime ``main``) runs whenever it is available. It is
overhauled after ``T`` units of continuous operation unless it fails first.
While it is under repair (time ``repair``) or maintenance (time
``maintenance``) the exponential standby unit (rate ``standby_rate``) runs;
the system fails if the standby dies before the priority unit is back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import distributions as dist
from .distributions import LifetimeDistribution
from .errors import DomainError

REPAIR = "repair"
MAINTENANCE = "maintenance"


@dataclass(frozen=True)
class SystemModel:
    main: LifetimeDistribution
    standby_rate: float
    repair: LifetimeDistribution
    maintenance: LifetimeDistribution

    def __post_init__(self):
        if not (math.isfinite(self.standby_rate) and self.standby_rate > 0):
            raise DomainError(f"standby_rate must be positive, got {self.standby_rate!r}")
        for name in ("main", "repair", "maintenance"):
            if not isinstance(getattr(self, name), LifetimeDistribution):
                raise DomainError(f"{name} must be a LifetimeDistribution")

    @property
    def standby(self) -> dist.Exponential:
        return dist.Exponential(self.standby_rate)

    def to_dict(self) -> dict[str, Any]:
        return {
            "main": self.main.to_dict(),
            "standby_rate": self.standby_rate,
            "repair": self.repair.to_dict(),
            "maintenance": self.maintenance.to_dict(),
        }

    @classmethod
    def from_dict(cls, literal: dict[str, Any]) -> "SystemModel":
        return cls(
            main=dist.from_dict(literal["main"]),
            standby_rate=float(literal["standby_rate"]),
            repair=dist.from_dict(literal["repair"]),
            maintenance=dist.from_dict(literal["maintenance"]),
        )


def mu(model: SystemModel, which: str) -> float:
    """``E[min(X2, Y)]`` for the repair or maintenance time ``Y``.

    Equals the Laplace transform of the survival of ``Y`` at the standby rate.
    """
    if which == REPAIR:
        y = model.repair
    elif which == MAINTENANCE:
        y = model.maintenance
    else:
        raise DomainError(f"which must be 'repair' or 'maintenance', got {which!r}")
    return dist.survival_transform(y, model.standby_rate)


def delta_mu(model: SystemModel) -> float:
    return mu(model, REPAIR) - mu(model, MAINTENANCE)


def _check_T(T):
    arr = np.asarray(T, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"maintenance time T must be positive, got {T!r}")
    return arr


def cycle_failure_prob(model: SystemModel, T):
    """Probability that a single operating cycle ends in system failure.

    Computed as ``lambda * (mu1 F(T) + mu2 S(T))``, the convex-combination form
    of ``lambda * (mu1 - delta_mu S(T))``.
    """
    arr = _check_T(T)
    mu1, mu2 = mu(model, REPAIR), mu(model, MAINTENANCE)
    p = model.standby_rate * (mu1 * model.main.cdf(arr) + mu2 * model.main.sf(arr))
    return float(p) if np.ndim(T) == 0 else p


def mttf(model: SystemModel, T):
    """Mean time to system failure when maintenance is scheduled every ``T``."""
    arr = _check_T(T)
    if arr.ndim:
        return mttf_on_grid(model, arr)
    T = float(arr)
    mu1, mu2 = mu(model, REPAIR), mu(model, MAINTENANCE)
    s = float(model.main.sf(T))
    denom = mu1 * float(model.main.cdf(T)) + mu2 * s
    return (1.0 + dist.integrated_survival(model.main, T) / denom) / model.standby_rate


def mttf_on_grid(model: SystemModel, grid) -> np.ndarray:
    """:func:`mttf` on an increasing grid of maintenance times (vectorised)."""
    grid = _check_T(grid)
    mu1, mu2 = mu(model, REPAIR), mu(model, MAINTENANCE)
    integral = dist.integrated_survival_on_grid(model.main, grid)
    denom = mu1 * model.main.cdf(grid) + mu2 * model.main.sf(grid)
    return (1.0 + integral / denom) / model.standby_rate


def mttf_no_pm(model: SystemModel) -> float:
    """Mean time to system failure without preventive maintenance."""
    return (1.0 + dist.mean(model.main) / mu(model, REPAIR)) / model.standby_rate


def threshold_constant(model: SystemModel) -> float:
    """``K = a * delta_mu / mu1``; maintenance at ``T`` helps iff ``m(T) < K``."""
    mu1 = mu(model, REPAIR)
    return dist.mean(model.main) * (mu1 - mu(model, MAINTENANCE)) / mu1


def benefit(model: SystemModel, T: float) -> tuple[float, bool]:
    """Return ``(M(T) - M(inf), m(T) < K)``.

    The difference is evaluated in the factored form of :func:`benefit_on_grid`,
    which keeps its sign reliable where both terms agree to machine precision.
    """
    T = float(_check_T(T))
    d = model.main
    mu1, mu2 = mu(model, REPAIR), mu(model, MAINTENANCE)
    s = float(d.sf(T))
    m = dist.mrl(d, T)
    K = threshold_constant(model)
    gain = s * (K - m) / (model.standby_rate * (mu1 * float(d.cdf(T)) + mu2 * s))
    return gain, bool(m < K)


def benefit_on_grid(model: SystemModel, grid) -> np.ndarray:
    """``M(T) - M(inf)`` on a grid, free of cancellation in the tail.

    Uses the factored form ``S(T) (K - m(T)) / (lambda (mu1 F(T) + mu2 S(T)))``.
    """
    grid = _check_T(grid)
    d = model.main
    mu1, mu2 = mu(model, REPAIR), mu(model, MAINTENANCE)
    s = d.sf(grid)
    denom = model.standby_rate * (mu1 * d.cdf(grid) + mu2 * s)
    return s * (threshold_constant(model) - dist.mrl_on_grid(d, grid)) / denom


def phi(model: SystemModel, t):
    """``r(t) int_0^t S + S(t)``; ``M'(T)`` has the sign of ``mu1/delta_mu - phi(T)``."""
    arr = _check_T(t)
    d = model.main
    if arr.ndim:
        return d.hazard(arr) * dist.integrated_survival_on_grid(d, arr) + d.sf(arr)
    t = float(arr)
    return dist.hazard(d, t) * dist.integrated_survival(d, t) + float(d.sf(t))


def phi_target(model: SystemModel) -> float:
    """The level ``mu1 / delta_mu`` that ``phi`` reaches at the optimum."""
    mu1 = mu(model, REPAIR)
    return mu1 / (mu1 - mu(model, MAINTENANCE))
