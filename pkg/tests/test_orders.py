import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from standbypm import config, orders
from standbypm import system as sysm
from standbypm.distributions import Exponential, MaxOf, MinOf, Weibull
from standbypm.errors import DomainError

from .helpers import BATHTUB, UPSIDE_DOWN, model, weibull2
from .oracle_values import MEAN_MATCHED, WEIBULL2


def load_pair(name):
    cfg = config.load(config.scenario_path(name))
    return cfg.model, cfg.model2


def test_st_examples():
    assert orders.check_st(Exponential(1.0), Exponential(2.0)).holds_on_grid
    v = orders.check_st(Exponential(2.0), Exponential(1.0))
    assert not v.holds_on_grid and v.first_violation is not None
    assert orders.check_st(BATHTUB, BATHTUB).holds_on_grid
    # crossing survivals
    assert not orders.check_st(Weibull(1.0, 3.0), Exponential(1.0)).holds_on_grid


def test_lt_and_mrl_examples():
    assert orders.check_lt(Exponential(1.0), Exponential(2.0)).holds_on_grid
    v = orders.check_lt(Exponential(2.0), Exponential(1.0))
    # at s = 0 the comparison is between the means
    assert not v.holds_on_grid and v.first_violation["point"] == 0.0
    assert orders.check_mrl(Exponential(1.0), Exponential(2.0)).holds_on_grid
    # m_X(0) = 0.886 < 1
    v = orders.check_mrl(Weibull(1.0, 2.0), Exponential(1.0))
    assert not v.holds_on_grid
    assert orders.check_mrl(UPSIDE_DOWN, UPSIDE_DOWN).holds_on_grid


def st_pairs():
    # scale-ordered Weibulls and rate-ordered exponentials are st-ordered
    w = st.tuples(st.floats(0.2, 5.0), st.floats(1.0, 3.0), st.floats(0.3, 4.0)).map(
        lambda p: (Weibull(p[0] * p[1], p[2]), Weibull(p[0], p[2]))
    )
    e = st.tuples(st.floats(0.1, 5.0), st.floats(1.0, 4.0)).map(lambda p: (Exponential(p[0]), Exponential(p[0] * p[1])))
    return st.one_of(w, e)


@given(st_pairs())
@settings(max_examples=30, deadline=None)
def test_st_implies_lt(pair):
    x, y = pair
    assert orders.check_st(x, y).holds_on_grid
    assert orders.check_lt(x, y).holds_on_grid


def test_mttfr():
    grid = np.geomspace(1e-3, 30.0, 50)
    g = orders.mttfr(Exponential(2.0), grid)
    assert np.max(np.abs(g / 0.5 - 1.0)) < 1e-12
    assert orders.mttfr(BATHTUB, 40.0) == pytest.approx(sysm.dist.mean(BATHTUB), rel=1e-8)
    # st-ordered pair: g_X >= g_Y
    x, y = Exponential(1.0), Exponential(3.0)
    t = np.linspace(0.1, 5.0, 20)
    assert np.all(orders.mttfr(x, t) >= orders.mttfr(y, t))
    # direct quadrature oracle for a Weibull
    from scipy.integrate import quad

    w = Weibull(1.0, 2.0)
    num = quad(lambda s: math.exp(-s * s), 0, 0.7)[0]
    assert orders.mttfr(w, 0.7) == pytest.approx(num / (1 - math.exp(-0.49)), rel=1e-9)
    with pytest.raises(DomainError):
        orders.mttfr(w, 0.0)


def test_compare_mttf_pair():
    m1, m2 = load_pair("comparison_pair")
    rep = orders.compare_mttf(m1, m2)
    assert rep.hypotheses_hold and rep.conclusion_checked and rep.conclusion_holds
    grid = np.array(rep.details["T"])
    assert np.all(sysm.mttf_on_grid(m1, grid) >= sysm.mttf_on_grid(m2, grid))


def test_compare_mttf_identical_and_failed_hypothesis():
    m = weibull2(1, 3)
    rep = orders.compare_mttf(m, m)
    assert rep.conclusion_holds
    assert rep.details["M1"] == rep.details["M2"]
    swapped = orders.compare_mttf(model(Weibull(1.0, 2.0), 2.0, 1, 3), m)
    assert not swapped.hypotheses_hold
    assert not swapped.conclusion_checked
    assert len(swapped.details["M1"]) == 100


def test_rate_pair_mechanism():
    m1, m2 = load_pair("comparison_rates")
    for which in (sysm.REPAIR, sysm.MAINTENANCE):
        assert m1.standby_rate * sysm.mu(m1, which) <= m2.standby_rate * sysm.mu(m2, which)
    assert orders.compare_mttf(m1, m2).conclusion_holds


def test_repair_pair_mechanism():
    m1, m2 = load_pair("comparison_repairs")
    for which in (sysm.REPAIR, sysm.MAINTENANCE):
        assert sysm.mu(m1, which) <= sysm.mu(m2, which)
    rep = orders.compare_mttf(m1, m2)
    assert rep.hypotheses_hold and rep.conclusion_holds


def test_compare_thresholds():
    m1, m2 = load_pair("comparison_thresholds")
    rep = orders.compare_thresholds(m1, m2)
    assert rep.conclusion_checked and rep.conclusion_holds
    assert rep.details["t0"] == pytest.approx([MEAN_MATCHED[2]["t0"], MEAN_MATCHED[3]["t0"]], rel=1e-7)
    same = orders.compare_thresholds(m1, m1)
    assert same.conclusion_holds and same.details["t0"][0] == same.details["t0"][1]
    unequal_means = orders.compare_thresholds(weibull2(1, 3), model(Weibull(2.0, 2.0), 1.0, 1, 3))
    assert not unequal_means.conclusion_checked


@pytest.mark.parametrize(
    "name, predicted", [("optimal_product_holds", True), ("optimal_product_fails", False)]
)
def test_compare_optimal_times(name, predicted):
    m1, m2 = load_pair(name)
    rep = orders.compare_optimal_times(m1, m2)
    assert rep.hypotheses_hold
    assert rep.details["predicted_t1_ge_t2"] is predicted
    assert rep.details["observed_t1_ge_t2"] is predicted
    assert rep.conclusion_holds


def test_compare_optimal_fails_example_values():
    rep = orders.compare_optimal_times(weibull2(1, 3), weibull2(2, 3))
    p = rep.details["products"]
    assert p["mu21_mu12"] == pytest.approx(1 / 12) and p["mu11_mu22"] == pytest.approx(1 / 8)
    assert rep.details["t_star"] == pytest.approx([WEIBULL2[(1, 3)]["t_star"], WEIBULL2[(2, 3)]["t_star"]], rel=1e-7)


def test_compare_optimal_identical_pair():
    m = weibull2(1, 3)
    rep = orders.compare_optimal_times(m, m)
    assert rep.conclusion_holds
    assert rep.details["t_star"][0] == rep.details["t_star"][1]


def test_compare_optimal_equal_K():
    # mu2/mu1 = (lambda + g1)/(lambda + g2) is 1/2 for both (1, 3) and (2, 5)
    rep = orders.compare_optimal_times(weibull2(1, 3), weibull2(2, 5))
    assert rep.details["K"][0] == pytest.approx(rep.details["K"][1], rel=1e-12)
    assert rep.conclusion_holds
    assert rep.details["t_star"][0] == pytest.approx(rep.details["t_star"][1], abs=1e-6)


def test_compare_optimal_needs_identical_mains():
    rep = orders.compare_optimal_times(weibull2(1, 3), model(Weibull(1.1, 2.0), 1.0, 1, 3))
    assert not rep.hypotheses_hold and not rep.conclusion_checked


def test_compare_optimal_ubfr():
    base = model(UPSIDE_DOWN, 0.1, 0.01, 6.0)
    other = model(UPSIDE_DOWN, 0.1, 0.01, 3.0)
    rep = orders.compare_optimal_times(base, other)
    assert rep.hypotheses_hold
    assert rep.conclusion_holds


def test_report_to_dict_is_plain():
    import json

    m1, m2 = load_pair("comparison_pair")
    json.dumps(orders.compare_mttf(m1, m2).to_dict(), allow_nan=False)
