"""Shared models for the test suite."""

import math

from standbypm.distributions import Exponential, MaxOf, MinOf, Weibull
from standbypm.system import SystemModel


def model(main, lam=1.0, g1=1.0, g2=3.0):
    return SystemModel(main, lam, Exponential(g1), Exponential(g2))


def weibull2(g1, g2):
    return model(Weibull(1.0, 2.0), 1.0, g1, g2)


LN2 = math.log(2.0)
BATHTUB = MinOf([Weibull(1.0, 0.5), Weibull(1.0, 3.0)])
UPSIDE_DOWN = MaxOf([Exponential(1.0), Exponential(2.0)])
