"""Quadrature and bracketing root-finding helpers.

Defaults used across the package:

* adaptive quadrature (QUADPACK, Gauss-Kronrod 21) with ``epsabs=1e-10``,
  ``epsrel=1e-8``;
* fixed 16-point Gauss-Legendre rule for vectorised grid integrals, with a
  split-in-half consistency check that falls back to adaptive quadrature;
* bisection refinement of the leftmost sign change found by a grid pre-scan.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable

import numpy as np
from scipy import integrate, optimize

from .errors import NoCrossingError, NumericalError

EPSABS = 1e-10
EPSREL = 1e-8
QUAD_LIMIT = 200

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def log1mexp(x):
    """Return ``log(1 - exp(x))`` for ``x <= 0`` without cancellation."""
    if isinstance(x, float):
        if x >= 0.0:
            return -math.inf
        if x > -0.6931471805599453:
            return math.log(-math.expm1(x))
        return math.log1p(-math.exp(x))
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(
            x > -math.log(2.0),
            np.log(-np.expm1(np.minimum(x, 0.0))),
            np.log1p(-np.exp(np.minimum(x, 0.0))),
        )
    return out


def quad(f: Callable[[float], float], a: float, b: float, points=None) -> float:
    """Adaptive quadrature of ``f`` over the finite interval ``[a, b]``.

    Raises
    ------
    NumericalError
        If QUADPACK reports that the tolerance was not reached and its error
        estimate is not small in absolute terms either.
    """
    if b <= a:
        return 0.0
    if points is not None:
        points = [p for p in points if a < p < b] or None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info = integrate.quad(
            f, a, b, epsabs=EPSABS, epsrel=EPSREL, limit=QUAD_LIMIT, points=points, full_output=1
        )[:3]
    if not math.isfinite(value):
        raise NumericalError(f"quadrature on [{a:g}, {b:g}] returned {value}")
    if err > max(1e-7, 1e-5 * abs(value)):
        raise NumericalError(
            f"quadrature on [{a:g}, {b:g}] did not converge (value={value:.6g}, error={err:.3g})"
        )
    return float(value)


def geometric_breakpoints(a: float, b: float, count: int = 8) -> list[float]:
    """Interior breakpoints ``a + (b-a)/2**k`` that seed the adaptive subdivision."""
    return [a + (b - a) / 2.0**k for k in range(1, count + 1)]


def segment_integrals(f: Callable[[np.ndarray], np.ndarray], edges: np.ndarray, fallback=None) -> np.ndarray:
    """Integrals of a vectorised ``f`` over consecutive ``[edges[i], edges[i+1]]``.

    ``f`` receives a 2-D array of nodes, one row per segment, and must return an
    array of the same shape. Segments on which the 16-point rule disagrees with
    the rule applied to both halves are recomputed with ``fallback(i, lo, hi)``.
    """
    lo = edges[:-1, None]
    hi = edges[1:, None]

    def rule(left, right):
        half = 0.5 * (right - left)
        mid = 0.5 * (right + left)
        nodes = mid + half * _GL_NODES[None, :]
        return (half[:, 0]) * (f(nodes) @ _GL_WEIGHTS)

    whole = rule(lo, hi)
    centre = 0.5 * (lo + hi)
    split = rule(lo, centre) + rule(centre, hi)
    bad = np.abs(whole - split) > EPSABS + 1e-10 * np.abs(split)
    out = split
    if np.any(bad):
        if fallback is None:
            raise NumericalError("fixed-order rule failed on a grid segment and no fallback was given")
        out = out.copy()
        for i in np.flatnonzero(bad):
            out[i] = fallback(i, float(edges[i]), float(edges[i + 1]))
    return out


def bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float) -> float:
    """Bisection on a bracket whose end values have opposite signs (or a zero)."""
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NoCrossingError(f"no sign change on [{lo:.6g}, {hi:.6g}]")
    return float(optimize.bisect(f, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=400))


def first_sign_change(values: np.ndarray, direction: int) -> int | None:
    """Index ``i`` of the first crossing between ``values[i]`` and ``values[i+1]``.

    ``direction=-1`` looks for a change from positive to non-positive,
    ``direction=+1`` for negative to non-negative.
    """
    v = np.asarray(values)
    if direction < 0:
        hits = np.flatnonzero((v[:-1] > 0) & (v[1:] <= 0))
    else:
        hits = np.flatnonzero((v[:-1] < 0) & (v[1:] >= 0))
    return int(hits[0]) if hits.size else None


def leftmost_root(
    f_point: Callable[[float], float],
    grid: np.ndarray,
    values: np.ndarray,
    direction: int,
    xtol: float,
) -> float | None:
    """Refine the leftmost grid sign change of ``values`` by bisection on ``f_point``.

    ``values`` are pre-scan evaluations of the same function on ``grid``; the
    bracket is widened by one grid cell on each side if the pointwise signs at
    its ends disagree with the pre-scan.
    """
    i = first_sign_change(values, direction)
    if i is None:
        return None
    for widen in range(3):
        lo = float(grid[max(i - widen, 0)])
        hi = float(grid[min(i + 1 + widen, len(grid) - 1)])
        try:
            return bisect(f_point, lo, hi, xtol)
        except NoCrossingError:
            continue
    raise NoCrossingError(f"pre-scan crossing near {grid[i]:.6g} could not be bracketed pointwise")
