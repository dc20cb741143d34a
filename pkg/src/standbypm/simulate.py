"""Monte-Carlo oracle for the mean time to system failure.

Each replication plays out operating cycles until the standby unit dies
before the priority unit is back from repair or maintenance. Nothing here
uses the closed-form mean time to failure, so the estimates can be used to
check it.

Reproducibility: replications are grouped into fixed blocks of
:data:`BLOCK_SIZE`; block ``b`` draws from a Philox stream keyed by
``(seed, b)``. Blocks may run on any number of threads and are reassembled
in block order, so results are bit-identical for a given seed whatever the
worker count.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Union

import numpy as np

from .distributions import LifetimeDistribution
from .errors import DomainError
from .system import SystemModel

BLOCK_SIZE = 1 << 16


class Schedule(enum.Enum):
    """Maintenance schedule variants other than a finite interval."""

    NO_MAINTENANCE = "infinity"


NO_MAINTENANCE = Schedule.NO_MAINTENANCE

MaintenanceTime = Union[float, Schedule]


@dataclass(frozen=True)
class SimulationResult:
    estimate: float
    std_error: float
    replications: int
    seed: int
    mean_cycles: float
    cycles_std_error: float
    mean_cycle_length: float

    def to_dict(self) -> dict:
        return asdict(self)


def sample_lifetime(d: LifetimeDistribution, rng: np.random.Generator, size=None):
    """Draw lifetimes by inverse transform (min/max of component draws for compositions)."""
    return d.sample(rng, size)


def _check_schedule(T: MaintenanceTime) -> MaintenanceTime:
    if T is NO_MAINTENANCE:
        return T
    if isinstance(T, Schedule) or not (isinstance(T, (int, float)) and T > 0):
        raise DomainError(f"T must be positive or NO_MAINTENANCE, got {T!r}")
    return float(T)


def simulate_tau(
    model: SystemModel,
    T: MaintenanceTime,
    rng: np.random.Generator,
    sample: Callable[[LifetimeDistribution, np.random.Generator], float] = sample_lifetime,
) -> tuple[float, int]:
    """Simulate one system lifetime; returns ``(time to failure, cycles)``.

    Per cycle the draws are taken in the order priority lifetime, standby
    lifetime, then repair or maintenance time. A tie between the standby
    lifetime and the repair time counts as a completed repair.
    """
    T = _check_schedule(T)
    standby = model.standby
    total = 0.0
    cycles = 0
    while True:
        cycles += 1
        x1 = float(sample(model.main, rng))
        x2 = float(sample(standby, rng))
        if T is NO_MAINTENANCE or x1 <= T:
            y = float(sample(model.repair, rng))
            total += x1
        else:
            y = float(sample(model.maintenance, rng))
            total += T
        total += min(x2, y)
        if x2 < y:
            return total, cycles


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def _run_block(model: SystemModel, T: MaintenanceTime, n: int, rng: np.random.Generator):
    tau = np.zeros(n)
    nu = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    standby = model.standby
    while active.size:
        k = active.size
        x1 = sample_lifetime(model.main, rng, k)
        x2 = sample_lifetime(standby, rng, k)
        if T is NO_MAINTENANCE:
            y = sample_lifetime(model.repair, rng, k)
            up = x1
        else:
            failed = x1 <= T
            y = np.where(failed, sample_lifetime(model.repair, rng, k), sample_lifetime(model.maintenance, rng, k))
            up = np.minimum(x1, T)
        tau[active] += up + np.minimum(x2, y)
        nu[active] += 1
        active = active[~(x2 < y)]
    return tau, nu


def estimate_mttf(
    model: SystemModel,
    T: MaintenanceTime,
    replications: int,
    seed: int,
    workers: int = 1,
) -> SimulationResult:
    """Monte-Carlo estimate of the mean time to system failure.

    Parameters
    ----------
    model : SystemModel
    T : float or NO_MAINTENANCE
        Maintenance interval; ``NO_MAINTENANCE`` disables maintenance.
    replications : int
        Number of simulated system lifetimes (at least 2).
    seed : int
        Unsigned 64-bit seed.
    workers : int
        Threads used to run blocks. Does not affect the result.
    """
    T = _check_schedule(T)
    if not isinstance(replications, (int, np.integer)) or replications < 2:
        raise DomainError(f"replications must be an integer >= 2, got {replications!r}")
    if not (0 <= seed < 2**64):
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    sizes = [BLOCK_SIZE] * (replications // BLOCK_SIZE)
    if replications % BLOCK_SIZE:
        sizes.append(replications % BLOCK_SIZE)

    def job(b):
        return _run_block(model, T, sizes[b], _block_rng(seed, b))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(len(sizes))))
    else:
        parts = [job(b) for b in range(len(sizes))]
    tau = np.concatenate([p[0] for p in parts])
    nu = np.concatenate([p[1] for p in parts]).astype(float)
    n = float(replications)
    return SimulationResult(
        estimate=float(np.mean(tau)),
        std_error=float(np.std(tau, ddof=1) / math.sqrt(n)),
        replications=int(replications),
        seed=int(seed),
        mean_cycles=float(np.mean(nu)),
        cycles_std_error=float(np.std(nu, ddof=1) / math.sqrt(n)),
        mean_cycle_length=float(np.sum(tau) / np.sum(nu)),
    )
