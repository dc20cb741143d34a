import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from standbypm import numerics
from standbypm.errors import NoCrossingError, NumericalError


@given(st.floats(min_value=-700.0, max_value=-1e-300))
def test_log1mexp_scalar_matches_array_path(x):
    scalar = numerics.log1mexp(x)
    array = float(numerics.log1mexp(np.array([x]))[0])
    assert scalar == pytest.approx(array, rel=1e-14)


def test_log1mexp_accuracy_near_zero_and_far():
    # log(1 - e^x) ~ log(-x) for tiny |x|; ~ -e^x for very negative x
    assert numerics.log1mexp(-1e-20) == pytest.approx(math.log(1e-20), rel=1e-12)
    assert numerics.log1mexp(-50.0) == pytest.approx(-math.exp(-50.0), rel=1e-12)
    assert numerics.log1mexp(0.0) == -math.inf


def test_quad_polynomial_and_error():
    assert numerics.quad(lambda x: x**3, 0.0, 2.0) == pytest.approx(4.0, rel=1e-12)
    assert numerics.quad(lambda x: 1.0, 1.0, 1.0) == 0.0
    with pytest.raises(NumericalError):
        numerics.quad(lambda x: 1.0 / x, 0.0, 1.0)


def test_segment_integrals_exact_for_smooth_and_fallback_used():
    edges = np.linspace(0.0, 3.0, 7)
    segs = numerics.segment_integrals(np.exp, edges)
    assert segs == pytest.approx(np.exp(edges[1:]) - np.exp(edges[:-1]), rel=1e-13)

    calls = []

    def kink(x):
        return np.abs(x - 0.3) ** 0.5

    def fallback(i, a, b):
        calls.append(i)
        return numerics.quad(lambda x: abs(x - 0.3) ** 0.5, a, b, points=[0.3])

    segs = numerics.segment_integrals(kink, np.array([0.0, 1.0, 2.0]), fallback=fallback)
    exact = (2 / 3) * (0.3**1.5 + 0.7**1.5)
    assert calls == [0]
    assert segs[0] == pytest.approx(exact, rel=1e-9)
    with pytest.raises(NumericalError):
        numerics.segment_integrals(kink, np.array([0.0, 1.0]))


def test_bisect_and_no_crossing():
    root = numerics.bisect(lambda x: x * x - 2.0, 0.0, 2.0, 1e-13)
    assert root == pytest.approx(math.sqrt(2.0), abs=1e-12)
    assert numerics.bisect(lambda x: x, 0.0, 1.0, 1e-9) == 0.0
    with pytest.raises(NoCrossingError):
        numerics.bisect(lambda x: x + 1.0, 0.0, 1.0, 1e-9)


def test_first_sign_change_direction():
    v = np.array([1.0, 0.5, -0.2, 0.3, -1.0])
    assert numerics.first_sign_change(v, -1) == 1
    assert numerics.first_sign_change(v, +1) == 2
    assert numerics.first_sign_change(np.ones(4), -1) is None


def test_leftmost_root_picks_first_crossing():
    f = np.sin
    grid = np.linspace(1.0, 10.0, 50)
    root = numerics.leftmost_root(lambda t: float(f(t)), grid, f(grid), -1, 1e-12)
    assert root == pytest.approx(math.pi, abs=1e-11)
    assert numerics.leftmost_root(lambda t: 1.0, grid, np.ones_like(grid), -1, 1e-9) is None
