"""Uniform node-centered 1-D grids, discrete fields, and initial profiles.

Everything here is value-semantic: grids and fields are frozen, operations
return new arrays. The discrete calculus (second differences, one-sided
slope seminorm) shared by all schemes lives here as well.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable

import numpy as np


class ConfigurationError(ValueError):
    """Invalid grid, profile, or run parameterization."""


# A node counts as "the origin" when |x| <= dx * ORIGIN_REL_TOL.
ORIGIN_REL_TOL = 1e-12

# Minimum node count: every stencil used here needs two neighbors per side.
MIN_POINTS = 5


class BoundaryRule(Enum):
    CONSTANT_EXTENSION = "constant_extension"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of ``n_points`` nodes spanning [x_min, x_max].

    ``origin_node`` asserts that one node sits exactly on x = 0 (used by
    Riemann data that carries a stabilizing (0, 0) datum).
    """

    x_min: float
    x_max: float
    n_points: int
    origin_node: bool = False

    def __post_init__(self) -> None:
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)):
            raise ConfigurationError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise ConfigurationError(
                f"empty domain: x_min={self.x_min} must be < x_max={self.x_max}")
        if self.n_points < MIN_POINTS:
            raise ConfigurationError(
                f"n_points={self.n_points} is below the minimum of {MIN_POINTS} "
                "(stencils need two neighbors on each side)")
        if self.origin_node:
            if not (self.x_min < 0.0 < self.x_max):
                raise ConfigurationError("origin_node requires x_min < 0 < x_max")
            if self.origin_index is None:
                raise ConfigurationError(
                    "origin_node set but no node lands on x = 0; "
                    "use make_grid to adjust the node count")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def x(self) -> np.ndarray:
        coords = np.linspace(self.x_min, self.x_max, self.n_points)
        coords.setflags(write=False)
        return coords

    @cached_property
    def origin_index(self) -> int | None:
        i = int(np.argmin(np.abs(self.x)))
        if abs(self.x[i]) <= self.dx * ORIGIN_REL_TOL:
            return i
        return None


def make_grid(x_min: float, x_max: float, n_points: int,
              origin_node: bool = False) -> Grid1D:
    """Build a uniform grid, adjusting the node count when an origin node
    is requested.

    On a symmetric domain the count is made odd (one extra node if needed)
    so the middle node lands exactly on 0. On asymmetric domains the
    requested count must already place a node on 0.
    """
    if origin_node and not (x_min < 0.0 < x_max):
        raise ConfigurationError("origin_node requires x_min < 0 < x_max")
    if origin_node:
        span = x_max - x_min
        symmetric = abs(x_min + x_max) <= 1e-12 * span
        if symmetric and n_points % 2 == 0:
            n_points += 1
    return Grid1D(x_min, x_max, n_points, origin_node)


@dataclass(frozen=True)
class StateField:
    """Discrete solution values at one time level, tied to a grid."""

    grid: Grid1D
    u: np.ndarray
    t: float = 0.0

    def __post_init__(self) -> None:
        u = np.array(self.u, dtype=float)
        if u.shape != (self.grid.n_points,):
            raise ConfigurationError(
                f"field has {u.shape} values for a grid of {self.grid.n_points} nodes")
        if not np.all(np.isfinite(u)):
            raise ConfigurationError("field contains non-finite values")
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    def with_values(self, u: np.ndarray, t: float | None = None) -> "StateField":
        return StateField(self.grid, u, self.t if t is None else t)


class ProfileKind(Enum):
    EXPONENTIAL = "exponential"
    RIEMANN_WITH_ORIGIN = "riemann_with_origin"
    RIEMANN_PLAIN = "riemann_plain"
    CUSTOM_SAMPLES = "custom_samples"


@dataclass(frozen=True)
class InitialProfile:
    """Named initial-data family plus its parameters.

    exponential:          u0(x) = amplitude * exp(-decay_rate * x^2)
    riemann_with_origin:  left for x < 0, right for x > 0, 0 at the origin node
    riemann_plain:        left for x < 0, right for x >= 0 (no zero datum)
    custom_samples:       arbitrary sampler callable evaluated on the grid
    """

    kind: ProfileKind
    amplitude: float = 1.0
    decay_rate: float = 100.0
    left: float = 1.0
    right: float = -1.0
    sampler: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self) -> None:
        if self.kind in (ProfileKind.RIEMANN_WITH_ORIGIN, ProfileKind.RIEMANN_PLAIN):
            if not self.left >= self.right:
                raise ConfigurationError(
                    "Riemann profiles here model shocks of convex fluxes: "
                    f"need left >= right, got ({self.left}, {self.right})")
        if self.kind is ProfileKind.CUSTOM_SAMPLES and self.sampler is None:
            raise ConfigurationError("custom_samples profile needs a sampler")


def exponential_profile(amplitude: float = 1.0, decay_rate: float = 100.0) -> InitialProfile:
    return InitialProfile(ProfileKind.EXPONENTIAL, amplitude=amplitude,
                          decay_rate=decay_rate)


def riemann_profile(left: float = 1.0, right: float = -1.0,
                    with_origin: bool = True) -> InitialProfile:
    kind = ProfileKind.RIEMANN_WITH_ORIGIN if with_origin else ProfileKind.RIEMANN_PLAIN
    return InitialProfile(kind, left=left, right=right)


def custom_profile(sampler: Callable[[np.ndarray], np.ndarray]) -> InitialProfile:
    return InitialProfile(ProfileKind.CUSTOM_SAMPLES, sampler=sampler)


def sample_profile(profile: InitialProfile, grid: Grid1D) -> StateField:
    """Evaluate an initial profile on a grid at t = 0."""
    x = grid.x
    if profile.kind is ProfileKind.EXPONENTIAL:
        u = profile.amplitude * np.exp(-profile.decay_rate * x * x)
    elif profile.kind is ProfileKind.RIEMANN_WITH_ORIGIN:
        if not grid.origin_node or grid.origin_index is None:
            raise ConfigurationError(
                "riemann_with_origin needs a grid with a node at x = 0")
        u = np.where(x < 0.0, profile.left, profile.right).astype(float)
        u[grid.origin_index] = 0.0
    elif profile.kind is ProfileKind.RIEMANN_PLAIN:
        # A node that happens to land on 0 takes the right state: this
        # variant deliberately carries no (0, 0) datum.
        u = np.where(x < -grid.dx * ORIGIN_REL_TOL, profile.left,
                     profile.right).astype(float)
    else:
        u = np.asarray(profile.sampler(x), dtype=float)
    return StateField(grid, u, 0.0)


def extend_with_ghosts(u: np.ndarray, rule: BoundaryRule, k: int) -> np.ndarray:
    """Pad with k ghost nodes per side.

    constant_extension copies the boundary value. periodic identifies the
    last node with the first (period n_points - 1), so ghosts wrap past
    the duplicate endpoint.
    """
    if rule is BoundaryRule.PERIODIC:
        return np.concatenate([u[-1 - k:-1], u, u[1:k + 1]])
    return np.concatenate([np.full(k, u[0]), u, np.full(k, u[-1])])


def second_difference(state: StateField,
                      rule: BoundaryRule = BoundaryRule.CONSTANT_EXTENSION) -> np.ndarray:
    """w_i = (u_{i-1} - 2 u_i + u_{i+1}) / dx^2, ghosts per rule."""
    ue = extend_with_ghosts(state.u, rule, 1)
    dx = state.grid.dx
    return (ue[:-2] - 2.0 * ue[1:-1] + ue[2:]) / (dx * dx)


def forward_slope_max(state: StateField) -> float:
    """Discrete one-sided Lipschitz seminorm max_i ((u_{i+1} - u_i)/dx)_+.

    Zero for nonincreasing data.
    """
    d = np.diff(state.u) / state.grid.dx
    return float(max(0.0, d.max()))


def check_periodic_compatible(state: StateField) -> None:
    """Periodic runs identify the endpoints; the data must agree there."""
    a, b = float(state.u[0]), float(state.u[-1])
    if abs(a - b) > 1e-12 * max(1.0, abs(a), abs(b)):
        raise ConfigurationError(
            f"periodic boundary needs matching endpoint values, got {a} and {b}")
