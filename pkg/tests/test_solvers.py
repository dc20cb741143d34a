import math

import numpy as np
import pytest

from standbypm import distributions as dist
from standbypm import solvers
from standbypm import system as sysm
from standbypm.distributions import Exponential, Weibull
from standbypm.errors import PreconditionError
from standbypm.solvers import (
    ANTI_AGING,
    DELTA_MU_NONPOSITIVE,
    FOUND,
    NEVER_BENEFICIAL,
    UNCLASSIFIED_SHAPE,
    SolverOptions,
)

from .helpers import BATHTUB, UPSIDE_DOWN, model, weibull2
from .oracle_values import BFR, MEAN_MATCHED, UBFR, UBFR_WINDOW, WEIBULL2

TIME_RTOL = 1e-7


def test_bfr_scenario(bfr):
    res = solvers.analyze(bfr)
    assert res.status == FOUND
    assert res.shape.kind == dist.BFR
    assert res.K == pytest.approx(BFR["K"], rel=1e-9)
    assert res.c == pytest.approx(BFR["c"], rel=TIME_RTOL)
    assert res.t0 == pytest.approx(BFR["t0"], rel=TIME_RTOL)
    assert res.t_star == pytest.approx(BFR["t_star"], rel=TIME_RTOL)
    assert res.mttf_at_t_star == pytest.approx(BFR["M_star"], rel=1e-9)
    assert res.t1 is None


def test_ubfr_scenario(ubfr):
    res = solvers.analyze(ubfr)
    assert (res.status, res.shape.kind) == (FOUND, dist.UBFR)
    assert res.c == pytest.approx(UBFR["c"], rel=TIME_RTOL)
    assert res.t0 == pytest.approx(UBFR["t0"], rel=TIME_RTOL)
    assert res.t_star == pytest.approx(UBFR["t_star"], rel=TIME_RTOL)
    assert res.mttf_at_t_star == pytest.approx(UBFR["M_star"], rel=1e-9)
    # unbounded window: the limiting mean residual life 1 is below K
    assert res.t1 is None
    assert solvers.benefit_window_end(ubfr) is None


def test_ubfr_finite_window(ubfr_window):
    res = solvers.analyze(ubfr_window)
    assert res.status == FOUND
    assert res.t0 == pytest.approx(UBFR_WINDOW["t0"], rel=TIME_RTOL)
    assert res.t1 == pytest.approx(UBFR_WINDOW["t1"], rel=TIME_RTOL)
    assert res.t_star == pytest.approx(UBFR_WINDOW["t_star"], rel=TIME_RTOL)
    assert res.t0 < res.t_star < res.c < res.t1


@pytest.mark.parametrize("gammas", sorted(WEIBULL2))
def test_weibull2_family(gammas):
    ref = WEIBULL2[gammas]
    m = weibull2(*gammas)
    t0, status = solvers.threshold_time(m)
    assert status == FOUND
    assert t0 == pytest.approx(ref["t0"], rel=TIME_RTOL)
    assert solvers.optimal_time(m) == pytest.approx(ref["t_star"], rel=TIME_RTOL)


def test_weibull2_t_star_bracket():
    # root of sqrt(pi) t erf(t) + exp(-t^2) = 2 on [1.0, 1.2]
    from scipy.optimize import brentq

    t = brentq(lambda t: math.sqrt(math.pi) * t * math.erf(t) + math.exp(-t * t) - 2.0, 1.0, 1.2, xtol=1e-14)
    assert solvers.optimal_time(weibull2(1, 3)) == pytest.approx(t, rel=TIME_RTOL)


@pytest.mark.parametrize("k", [2, 3])
def test_mean_matched_weibull(k):
    scale = 1.0 / math.gamma(1.0 + 1.0 / k)
    m = model(Weibull(scale, float(k)), 1.0, 1.0, 3.0)
    assert solvers.threshold_time(m)[0] == pytest.approx(MEAN_MATCHED[k]["t0"], rel=TIME_RTOL)
    assert solvers.optimal_time(m) == pytest.approx(MEAN_MATCHED[k]["t_star"], rel=TIME_RTOL)


def test_status_codes():
    assert solvers.analyze(model(Exponential(1.0))).status == ANTI_AGING
    assert solvers.analyze(model(Weibull(1.0, 0.7))).status == ANTI_AGING
    assert solvers.analyze(model(BATHTUB, 1.0, 2.0, 2.0)).status == DELTA_MU_NONPOSITIVE
    assert solvers.analyze(model(BATHTUB, 1.0, 3.0, 1.0)).status == DELTA_MU_NONPOSITIVE
    # UBFR with m(c) above K: maintenance barely faster than repair
    assert solvers.analyze(model(UPSIDE_DOWN, 0.1, 0.01, 0.05)).status == NEVER_BENEFICIAL
    wiggly = dist.MinOf([UPSIDE_DOWN, Weibull(10.0, 5.0)])
    assert solvers.analyze(model(wiggly)).status == UNCLASSIFIED_SHAPE


def test_bfr_never_beneficial_when_limit_too_small():
    # bathtub whose hazard levels off: lim r = 1 + 0.2, so lim m = 1/1.2 > K
    flat_tail = dist.MinOf([Weibull(1.0, 0.5), dist.MaxOf([Exponential(1.0), Exponential(5.0)])])
    m = model(flat_tail, 1.0, 1.0, 1.5)
    res = solvers.analyze(m)
    assert res.shape.kind in (dist.BFR, dist.DFR)
    assert res.status in (NEVER_BENEFICIAL, ANTI_AGING)
    assert res.t0 is None


def test_preconditions():
    with pytest.raises(PreconditionError):
        solvers.benefit_window_end(weibull2(1, 3))
    with pytest.raises(PreconditionError):
        solvers.optimal_time(model(Exponential(1.0)))
    with pytest.raises(PreconditionError):
        solvers.mrl_extremum(model(Weibull(1.0, 0.7)))
    with pytest.raises(PreconditionError):
        solvers.benefit_window_end(model(UPSIDE_DOWN, 0.1, 0.01, 0.05))


def test_mrl_extremum_is_stationary(bfr, ubfr):
    for m in (bfr, ubfr):
        c = solvers.mrl_extremum(m)
        assert abs(dist.mrl_slope(m.main, c)) < 1e-7
    # IFR with finite r(0): mean residual life is monotone, no extremum
    assert solvers.mrl_extremum(weibull2(1, 3)) is None


def test_options_are_respected(bfr):
    coarse = SolverOptions(scan_points=64)
    assert solvers.threshold_time(bfr, opts=coarse)[0] == pytest.approx(BFR["t0"], rel=TIME_RTOL)
    loose = SolverOptions(xtol_factor=1e-3)
    t0 = solvers.threshold_time(bfr, opts=loose)[0]
    assert abs(t0 - BFR["t0"]) < 1e-3 * BFR["a"]


def test_to_dict(bfr):
    d = solvers.analyze(bfr).to_dict()
    assert d["shape"]["kind"] == "bfr"
    assert set(d) >= {"a", "mu1", "mu2", "delta_mu", "K", "shape", "t0", "t1", "t_star", "mttf_at_t_star", "mttf_no_pm", "status"}


def test_t_star_beats_neighbours(bfr, ubfr, ubfr_window):
    for m in (bfr, ubfr, ubfr_window):
        t = solvers.optimal_time(m)
        best = sysm.mttf(m, t)
        for f in (0.98, 1.02):
            assert sysm.mttf(m, f * t) < best
