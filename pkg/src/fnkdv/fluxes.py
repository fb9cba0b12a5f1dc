"""Flux functions and numerical interface fluxes.

Two flux families drive the model equation u_t + f(u)_x - delta*g(u_xx)_x = 0:
a convex transport flux f (default Burgers, f(u) = u^2/2) and a concave,
even dispersion flux g (g(s) = -|s| or g(s) = -s^2).

Numerical interface formulas:

* Godunov flux for convex f, in closed form:
      h(a, b) = f(clamp(s*, a, b))        for a <= b   (s* the sonic point)
      h(a, b) = max(f(a), f(b))           for a > b
* Engquist-Osher flux for the dispersion nonlinearity:
      g_eo(a, b) = g(max(0, b)) + g(min(0, a))
* Limited slopes s_i = max(u_{i+1} - u_i, u_i - u_{i-1}) / dx feeding a
  second-order Godunov interface flux on slope-reconstructed edge values.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .grid import BoundaryRule, ConfigurationError, StateField, extend_with_ghosts

_CHECK_SAMPLES = np.linspace(-4.0, 4.0, 17)


@dataclass(frozen=True)
class ConvexFlux:
    """Convex transport flux with derivative and convexity constant.

    ``alpha`` is a lower bound on f'' (0 for merely convex fluxes such as
    linear advection; strictly positive for shock experiments). ``sonic``
    is the minimizer of f when known in closed form.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    alpha: float = 0.0
    sonic: float | None = None

    def __post_init__(self) -> None:
        if self.alpha < 0:
            raise ConfigurationError("alpha must be >= 0")
        d = np.asarray(self.derivative(_CHECK_SAMPLES), dtype=float)
        gaps = np.diff(d) - self.alpha * np.diff(_CHECK_SAMPLES)
        if np.any(gaps < -1e-9):
            raise ConfigurationError(
                f"flux {self.name!r} is not convex with modulus alpha={self.alpha}")


def burgers() -> ConvexFlux:
    return ConvexFlux(
        name="burgers",
        evaluate=lambda u: 0.5 * np.square(u),
        derivative=lambda u: np.asarray(u, dtype=float),
        alpha=1.0,
        sonic=0.0,
    )


def linear_flux(beta: float = 1.0) -> ConvexFlux:
    return ConvexFlux(
        name=f"linear[{beta:g}]",
        evaluate=lambda u: beta * np.asarray(u, dtype=float),
        derivative=lambda u: np.full_like(np.asarray(u, dtype=float), beta),
        alpha=0.0,
    )


@lru_cache(maxsize=None)
def sonic_point(f: ConvexFlux) -> float:
    """Minimizer of a convex flux; +-inf when the derivative never crosses 0."""
    if f.sonic is not None:
        return float(f.sonic)
    lo, hi = -1e9, 1e9
    dlo = float(f.derivative(np.asarray(lo)))
    dhi = float(f.derivative(np.asarray(hi)))
    if dlo >= 0.0:
        return -np.inf
    if dhi <= 0.0:
        return np.inf
    return float(brentq(lambda u: float(f.derivative(np.asarray(u))), lo, hi))


def godunov_flux(a, b, f: ConvexFlux):
    """Exact-Riemann interface flux for convex f.

    min of f over [a, b] when a <= b, max of the endpoint values when
    a > b. Valid in this closed form precisely because f is convex.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scalar = a.ndim == 0 and b.ndim == 0
    a, b = np.atleast_1d(a), np.atleast_1d(b)
    s = sonic_point(f)
    up = a <= b
    interior = np.clip(s, np.minimum(a, b), np.maximum(a, b))
    out = np.where(up, f.evaluate(interior),
                   np.maximum(f.evaluate(a), f.evaluate(b)))
    return float(out[0]) if scalar else out


class DispersionKind(Enum):
    ABS = "abs"
    SQUARE = "square"
    CUSTOM = "custom"


@dataclass(frozen=True)
class ConcaveDispersionFlux:
    """Even concave dispersion flux with g(0) = 0.

    ``derivative`` must be defined pointwise everywhere it is consulted;
    for the abs kind the convention g'(0) = 0 is used (the scheme itself
    only evaluates g through the Engquist-Osher flux, never g').
    ``second_derivative`` is optional and only needed by the
    modified-equation residual check.
    """

    kind: DispersionKind
    evaluate: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    second_derivative: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self) -> None:
        s = _CHECK_SAMPLES
        g = np.asarray(self.evaluate(s), dtype=float)
        if abs(float(self.evaluate(np.asarray(0.0)))) > 1e-12:
            raise ConfigurationError("dispersion flux must satisfy g(0) = 0")
        if np.max(np.abs(g - g[::-1])) > 1e-9 * max(1.0, np.max(np.abs(g))):
            raise ConfigurationError("dispersion flux must be even")
        mid = np.asarray(self.evaluate(0.5 * (s[:-1] + s[1:])), dtype=float)
        if np.any(mid < 0.5 * (g[:-1] + g[1:]) - 1e-9):
            raise ConfigurationError("dispersion flux must be concave")


def abs_dispersion() -> ConcaveDispersionFlux:
    """g(s) = -|s| (the nonsmooth kind); g'(0) taken as 0."""
    return ConcaveDispersionFlux(
        kind=DispersionKind.ABS,
        evaluate=lambda s: -np.abs(s),
        derivative=lambda s: -np.sign(s),
        second_derivative=lambda s: np.zeros_like(np.asarray(s, dtype=float)),
    )


def square_dispersion() -> ConcaveDispersionFlux:
    """g(s) = -s^2 (the smooth kind)."""
    return ConcaveDispersionFlux(
        kind=DispersionKind.SQUARE,
        evaluate=lambda s: -np.square(s),
        derivative=lambda s: -2.0 * np.asarray(s, dtype=float),
        second_derivative=lambda s: np.full_like(np.asarray(s, dtype=float), -2.0),
    )


def engquist_osher_flux(a, b, g: ConcaveDispersionFlux):
    """g_eo(a, b) = g(max(0, b)) + g(min(0, a)).

    Continuous in (a, b) even for the nonsmooth abs kind; for that kind it
    reduces to the closed form min(0, a) - max(0, b).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scalar = a.ndim == 0 and b.ndim == 0
    out = g.evaluate(np.maximum(0.0, b)) + g.evaluate(np.minimum(0.0, a))
    return float(out) if scalar else out


def limited_slopes(state: StateField,
                   rule: BoundaryRule = BoundaryRule.CONSTANT_EXTENSION) -> np.ndarray:
    """Limited reconstruction slopes s_i = max(D+ u_i, D- u_i) / dx."""
    ue = extend_with_ghosts(state.u, rule, 1)
    return np.maximum(ue[2:] - ue[1:-1], ue[1:-1] - ue[:-2]) / state.grid.dx


def limited_interface_flux(state: StateField, f: ConvexFlux,
                           rule: BoundaryRule = BoundaryRule.CONSTANT_EXTENSION
                           ) -> np.ndarray:
    """Godunov flux on slope-reconstructed edge values, one value per
    interface including the two boundary interfaces (n_points + 1 total)."""
    dx = state.grid.dx
    ue = extend_with_ghosts(state.u, rule, 2)               # nodes -2 .. n+1
    s = np.maximum(ue[2:] - ue[1:-1], ue[1:-1] - ue[:-2]) / dx  # nodes -1 .. n
    left = ue[1:-2] + 0.5 * dx * s[:-1]                     # interfaces -1/2 .. n-1/2
    right = ue[2:-1] - 0.5 * dx * s[1:]
    return godunov_flux(left, right, f)
