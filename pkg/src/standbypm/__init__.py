"""Preventive maintenance analysis for a two-unit priority standby system.

The priority unit runs whenever it is available; a cold standby unit with an
exponential lifetime covers for it during repair or scheduled maintenance.
The main entry point is :func:`analyze`, which reports the mean time to
system failure and the maintenance times where it changes behaviour.
:mod:`standbypm.orders` compares two systems and :mod:`standbypm.simulate`
provides an independent Monte-Carlo estimate.
"""

__version__ = "0.1.0"

from .distributions import (
    Exponential,
    HazardShape,
    LifetimeDistribution,
    MaxOf,
    MinOf,
    Weibull,
    classify_hazard_shape,
    from_dict,
    hazard,
    mean,
    mrl,
    survival,
)
from .errors import (
    BeyondSupportError,
    DomainError,
    NoCrossingError,
    NonFiniteMeanError,
    NumericalError,
    PreconditionError,
    StandbyPMError,
)
from .simulate import NO_MAINTENANCE, SimulationResult, estimate_mttf
from .solvers import PolicyAnalysis, SolverOptions, analyze, benefit_window_end, optimal_time, threshold_time
from .system import SystemModel, benefit, mttf, mttf_no_pm, phi, threshold_constant

__all__ = [
    "BeyondSupportError",
    "DomainError",
    "Exponential",
    "HazardShape",
    "LifetimeDistribution",
    "MaxOf",
    "MinOf",
    "NO_MAINTENANCE",
    "NoCrossingError",
    "NonFiniteMeanError",
    "NumericalError",
    "PolicyAnalysis",
    "PreconditionError",
    "SimulationResult",
    "SolverOptions",
    "StandbyPMError",
    "SystemModel",
    "Weibull",
    "analyze",
    "benefit",
    "benefit_window_end",
    "classify_hazard_shape",
    "estimate_mttf",
    "from_dict",
    "hazard",
    "mean",
    "mrl",
    "mttf",
    "mttf_no_pm",
    "optimal_time",
    "phi",
    "survival",
    "threshold_constant",
    "threshold_time",
]
