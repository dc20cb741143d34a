"""Independent high-precision reference values for the test suite.

Uses only mpmath (30 digits) and closed-form survival functions; nothing
from ``standbypm`` is imported. Run ``python3 tools/oracles.py`` and copy
the printed values into ``tests/oracle_values.py``.
"""

import mpmath as mp

mp.mp.dps = 30


def case(name, sf, tail, r, lam, g1, g2, brackets):
    """Print a, K, c, T0, T1, T* and M(T*) for exponential repair/maintenance."""
    a = tail(0)
    mu1, mu2 = 1 / (lam + g1), 1 / (lam + g2)
    K = a * (mu1 - mu2) / mu1
    m = lambda t: tail(t) / sf(t)
    phi = lambda t: r(t) * (a - tail(t)) + sf(t)
    M = lambda T: (1 + (a - tail(T)) / (mu1 * (1 - sf(T)) + mu2 * sf(T))) / lam
    out = {"a": a, "mu1": mu1, "mu2": mu2, "K": K, "M_inf": (1 + a / mu1) / lam}
    solve = lambda f, br: mp.findroot(f, br, solver="anderson")
    if "c" in brackets:
        out["c"] = solve(lambda t: m(t) * r(t) - 1, brackets["c"])
    if "t0" in brackets:
        out["t0"] = solve(lambda t: m(t) - K, brackets["t0"])
    if "t1" in brackets:
        out["t1"] = solve(lambda t: m(t) - K, brackets["t1"])
    if "t_star" in brackets:
        out["t_star"] = solve(lambda t: phi(t) - mu1 / (mu1 - mu2), brackets["t_star"])
        out["M_star"] = M(out["t_star"])
    print(name)
    for k, v in out.items():
        print(f"    {k!r}: {mp.nstr(v, 17)},")


def quad_tail(sf):
    return lambda t: mp.quad(sf, [t, t + 1, t + 4, mp.inf])


# bathtub: min of Weibull(1, 0.5) and Weibull(1, 3)
sf_b = lambda t: mp.exp(-mp.sqrt(t) - t**3)
r_b = lambda t: 0.5 / mp.sqrt(t) + 3 * t**2
t_min = mp.mpf(1) / 24 ** mp.mpf(0.4)
print("bfr t_min", mp.nstr(t_min, 17))
case("bfr_weibull_min", sf_b, quad_tail(sf_b), r_b, 1, mp.mpf("0.001"), 4,
     {"c": (mp.mpf("0.01"), mp.mpf("0.2")), "t0": (t_min, 2), "t_star": (mp.mpf("0.6"), 2)})

# upside-down bathtub: max of Exponential(1) and Exponential(2)
sf_u = lambda t: mp.exp(-t) + mp.exp(-2 * t) - mp.exp(-3 * t)
tail_u = lambda t: mp.exp(-t) + mp.exp(-2 * t) / 2 - mp.exp(-3 * t) / 3
f_u = lambda t: mp.exp(-t) + 2 * mp.exp(-2 * t) - 3 * mp.exp(-3 * t)
r_u = lambda t: f_u(t) / sf_u(t)
case("ubfr_exp_max", sf_u, tail_u, r_u, mp.mpf("0.1"), mp.mpf("0.01"), 6,
     {"c": (mp.mpf("0.5"), 2), "t0": (mp.mpf("0.001"), mp.mpf("0.5")), "t_star": (mp.mpf("0.05"), mp.mpf("0.5"))})
case("ubfr_finite_window", sf_u, tail_u, r_u, mp.mpf("0.1"), mp.mpf("0.01"), mp.mpf("0.4923"),
     {"c": (mp.mpf("0.5"), 2), "t0": (mp.mpf("0.1"), 1), "t1": (mp.mpf("1.1"), 4), "t_star": (mp.mpf("0.53"), 1)})

# Weibull(scale, 2) and Weibull(scale, 3) mains, exponential repairs
def weibull(scale, k):
    sf = lambda t: mp.exp(-((t / scale) ** k))
    tail = lambda t: scale / k * mp.gammainc(1 / mp.mpf(k), (t / scale) ** k)
    r = lambda t: k / scale * (t / scale) ** (k - 1)
    return sf, tail, r


for g1, g2 in [(1, 3), (2, 3), (2, 4), (1, 6)]:
    case(f"weibull2 gamma=({g1}, {g2})", *weibull(1, 2), 1, g1, g2,
         {"t0": (mp.mpf("0.05"), 3), "t_star": (mp.mpf("0.3"), 4)})

s2 = 1 / mp.gamma(mp.mpf(1.5))
s3 = 1 / mp.gamma(1 + mp.mpf(1) / 3)
case("mean-matched weibull shape 2", *weibull(s2, 2), 1, 1, 3, {"t0": (mp.mpf("0.05"), 3), "t_star": (mp.mpf("0.3"), 4)})
case("mean-matched weibull shape 3", *weibull(s3, 3), 1, 1, 3, {"t0": (mp.mpf("0.05"), 3), "t_star": (mp.mpf("0.3"), 4)})

# memoryless main: M(ln 2) and M(inf)
lam, mu1, mu2 = 1, mp.mpf(1) / 2, mp.mpf(1) / 4
T = mp.log(2)
print("exponential_main M(ln2)", mp.nstr((1 + (1 - mp.exp(-T)) / (mu1 * (1 - mp.exp(-T)) + mu2 * mp.exp(-T))) / lam, 17))
