"""Time-stepping engines.

Four schemes share the machinery here:

* ``model_fully_discrete`` -- forward Euler on the conservative method-of-
  lines discretization of u_t + f(u)_x - delta*g(u_xx)_x = 0, with a
  centered midpoint transport flux and an Engquist-Osher dispersion flux:

      du_i/dt = -(1/dx) * D-[ f((u_i + u_{i+1})/2) - delta*g_eo(w_i, w_{i+1}) ]

  where w is the second difference and D- the backward difference.
* ``model_mol`` -- the same right-hand side integrated with a classic
  explicit 4-stage integrator; used only to cross-check that the
  fully-discrete runs converge to the method-of-lines limit.
* ``limited_godunov`` -- the second-order slope-limited Godunov scheme for
  the plain conservation law u_t + f(u)_x = 0 (forward Euler, hard CFL).
* ``entropy_reference`` -- first-order Godunov with piecewise-constant
  data; on a fine grid this serves as the entropy-solution oracle.

Forward Euler is the only production integrator. For dispersion fluxes
with unbounded derivative (the square kind) an optional per-step substep
guard subdivides each configured step according to a stability estimate;
abs-kind runs at the standard step sizes never trigger it.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable

import numpy as np

from .fluxes import (ConcaveDispersionFlux, ConvexFlux, abs_dispersion, burgers,
                     godunov_flux, limited_interface_flux)
from .grid import (BoundaryRule, ConfigurationError, Grid1D, InitialProfile,
                   StateField, check_periodic_compatible, extend_with_ghosts,
                   forward_slope_max, sample_profile)


class BlowUpError(RuntimeError):
    """A state or right-hand side went non-finite (CFL violation / blow-up)."""

    def __init__(self, message: str, step_index: int | None = None,
                 node_index: int | None = None, time: float | None = None):
        super().__init__(message)
        self.step_index = step_index
        self.node_index = node_index
        self.time = time


@dataclass(frozen=True)
class DispersionStrength:
    """Coefficient delta > 0 multiplying the dispersion flux."""

    delta: float

    def __post_init__(self) -> None:
        if not self.delta > 0:
            raise ConfigurationError(f"delta must be positive, got {self.delta}")


class SchemeKind(Enum):
    MODEL_FULLY_DISCRETE = "model_fully_discrete"
    MODEL_MOL = "model_mol"
    LIMITED_GODUNOV = "limited_godunov"
    ENTROPY_REFERENCE = "entropy_reference"


# Dispersion part of the suggested step bound, dt <= K * dx^3 / delta.
# Calibrated so that at dx = 0.005 the suggestion is exactly dt = 1e-8/delta,
# the step family the bundled N=400 experiments use.
DISPERSION_DT_COEFF = 0.08


@dataclass(frozen=True)
class RunConfig:
    """Full parameterization of one simulation."""

    grid: Grid1D
    profile: InitialProfile
    f: ConvexFlux = field(default_factory=burgers)
    g: ConcaveDispersionFlux = field(default_factory=abs_dispersion)
    delta: float = 0.0
    dt: float | None = None
    t_end: float = 0.5
    boundary: BoundaryRule = BoundaryRule.CONSTANT_EXTENSION
    snapshot_times: tuple[float, ...] | None = None
    scheme_kind: SchemeKind = SchemeKind.MODEL_FULLY_DISCRETE
    substep_guard: bool = False

    def __post_init__(self) -> None:
        delta = self.delta
        if isinstance(delta, DispersionStrength):
            delta = delta.delta
            object.__setattr__(self, "delta", delta)
        if delta < 0:
            raise ConfigurationError(f"delta must be >= 0, got {delta}")
        if self.dt is not None and self.dt < 0:
            raise ConfigurationError(f"dt must be >= 0, got {self.dt}")
        if self.t_end < 0:
            raise ConfigurationError(f"t_end must be >= 0, got {self.t_end}")
        if self.snapshot_times is not None:
            times = tuple(float(t) for t in self.snapshot_times)
            if any(t < -1e-12 or t > self.t_end + 1e-12 for t in times):
                raise ConfigurationError("snapshot times must lie in [0, t_end]")
            object.__setattr__(self, "snapshot_times", times)


@dataclass(frozen=True)
class Trajectory:
    """Snapshots plus per-snapshot diagnostics for one run."""

    config: RunConfig
    snapshots: tuple[StateField, ...]
    diagnostics: dict[str, np.ndarray]
    metadata: dict

    @property
    def final_state(self) -> StateField:
        return self.snapshots[-1]

    @property
    def times(self) -> np.ndarray:
        return self.diagnostics["time"]


# ---------------------------------------------------------------------------
# right-hand sides and single steps
# ---------------------------------------------------------------------------

def _model_fluxes(u: np.ndarray, dx: float, f: ConvexFlux,
                  g: ConcaveDispersionFlux, delta: float,
                  boundary: BoundaryRule) -> tuple[np.ndarray, np.ndarray]:
    """Interface fluxes F_{i+1/2} = f(midpoint) - delta*g_eo(w_i, w_{i+1})
    for all n+1 interfaces, plus the extended second difference."""
    ue = extend_with_ghosts(u, boundary, 2)
    w = (ue[:-2] - 2.0 * ue[1:-1] + ue[2:]) / (dx * dx)   # nodes -1 .. n
    geo = g.evaluate(np.maximum(0.0, w[1:])) + g.evaluate(np.minimum(0.0, w[:-1]))
    mid = 0.5 * (ue[1:-2] + ue[2:-1])
    return f.evaluate(mid) - delta * geo, w


def _raise_if_not_finite(arr: np.ndarray, what: str, *, step_index=None,
                         time=None) -> None:
    if not np.all(np.isfinite(arr)):
        node = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise BlowUpError(f"non-finite {what} at node {node}"
                          + (f", step {step_index}" if step_index is not None else "")
                          + (f", t={time:.6g}" if time is not None else ""),
                          step_index=step_index, node_index=node, time=time)


def mol_rhs(state: StateField, f: ConvexFlux, g: ConcaveDispersionFlux,
            delta: float, boundary: BoundaryRule = BoundaryRule.CONSTANT_EXTENSION
            ) -> np.ndarray:
    """du_i/dt for the model equation's method of lines."""
    dx = state.grid.dx
    F, _ = _model_fluxes(state.u, dx, f, g, delta, boundary)
    rhs = -np.diff(F) / dx
    _raise_if_not_finite(rhs, "right-hand side", time=state.t)
    return rhs


def step_fully_discrete(state: StateField, config: RunConfig) -> StateField:
    """One forward-Euler application of the model right-hand side."""
    if config.dt is None:
        raise ConfigurationError("step_fully_discrete needs an explicit dt")
    u = _euler_model_step(state.u, state.grid.dx, config.dt, config.f, config.g,
                          config.delta, config.boundary, time=state.t)
    return state.with_values(u, state.t + config.dt)


def _euler_model_step(u: np.ndarray, dx: float, dt: float, f: ConvexFlux,
                      g: ConcaveDispersionFlux, delta: float,
                      boundary: BoundaryRule, *, step_index=None,
                      time=None) -> np.ndarray:
    F, _ = _model_fluxes(u, dx, f, g, delta, boundary)
    un = u - (dt / dx) * np.diff(F)
    _raise_if_not_finite(un, "state", step_index=step_index, time=time)
    return un


def step_mol_rk4(state: StateField, config: RunConfig) -> StateField:
    """Classic explicit 4-stage step on the method-of-lines right-hand side.

    Cross-check integrator only; production runs use forward Euler.
    """
    if config.dt is None:
        raise ConfigurationError("step_mol_rk4 needs an explicit dt")
    dt = config.dt
    args = (config.f, config.g, config.delta, config.boundary)
    k1 = mol_rhs(state, *args)
    k2 = mol_rhs(state.with_values(state.u + 0.5 * dt * k1), *args)
    k3 = mol_rhs(state.with_values(state.u + 0.5 * dt * k2), *args)
    k4 = mol_rhs(state.with_values(state.u + dt * k3), *args)
    u = state.u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    _raise_if_not_finite(u, "state", time=state.t)
    return state.with_values(u, state.t + dt)


def _check_cfl(u: np.ndarray, dx: float, dt: float, f: ConvexFlux) -> None:
    speed = float(np.max(np.abs(f.derivative(u))))
    if dt * speed > dx * (1.0 + 1e-12):
        raise ConfigurationError(
            f"CFL violation: dt*max|f'(u)| = {dt * speed:.3e} exceeds dx = {dx:.3e}")


def step_limited_godunov(state: StateField, f: ConvexFlux, dt: float,
                         boundary: BoundaryRule = BoundaryRule.CONSTANT_EXTENSION
                         ) -> StateField:
    """Conservative forward-Euler step of the slope-limited Godunov scheme."""
    dx = state.grid.dx
    _check_cfl(state.u, dx, dt, f)
    F = limited_interface_flux(state, f, boundary)
    u = state.u - (dt / dx) * np.diff(F)
    _raise_if_not_finite(u, "state", time=state.t)
    return state.with_values(u, state.t + dt)


def step_godunov_first_order(state: StateField, f: ConvexFlux, dt: float,
                             boundary: BoundaryRule = BoundaryRule.CONSTANT_EXTENSION
                             ) -> StateField:
    """First-order Godunov step (piecewise-constant data)."""
    dx = state.grid.dx
    _check_cfl(state.u, dx, dt, f)
    ue = extend_with_ghosts(state.u, boundary, 1)
    F = godunov_flux(ue[:-1], ue[1:], f)
    u = state.u - (dt / dx) * np.diff(F)
    _raise_if_not_finite(u, "state", time=state.t)
    return state.with_values(u, state.t + dt)


# ---------------------------------------------------------------------------
# step-size guidance
# ---------------------------------------------------------------------------

def suggest_dt(config: RunConfig) -> float:
    """min( 0.5*dx / max|f'(u0)|,  K*dx^3 / delta ) with K = 0.08.

    Adequate for the abs dispersion kind, whose flux derivative is bounded
    by 1. The square kind is stiffer near steep data; runs of that kind
    should enable ``substep_guard`` (see stable_dt_estimate).
    """
    u0 = sample_profile(config.profile, config.grid).u
    dx = config.grid.dx
    speed = float(np.max(np.abs(config.f.derivative(u0))))
    transport = 0.5 * dx / speed if speed > 0 else np.inf
    if config.delta > 0:
        dispersion = DISPERSION_DT_COEFF * dx**3 / config.delta
    else:
        dispersion = np.inf
    out = min(transport, dispersion)
    if not np.isfinite(out):
        raise ConfigurationError("cannot suggest dt: both flux terms vanish")
    return out


def stable_dt_estimate(u: np.ndarray, w: np.ndarray, dx: float, f: ConvexFlux,
                       g: ConcaveDispersionFlux, delta: float) -> float:
    """Forward-Euler stability estimate for the current state.

    Grid-scale modes of the dispersion term decay at rate about
    8*delta*|g'(w)|/dx^3; taking dt <= 1/rate keeps a factor-2 margin on
    the Euler limit. The transport term contributes the usual CFL bound.
    """
    speed = float(np.max(np.abs(f.derivative(u))))
    transport = 0.9 * dx / speed if speed > 0 else np.inf
    if delta > 0:
        gp = float(np.max(np.abs(g.derivative(w))))
        rate = 8.0 * delta * gp / dx**3
        dispersion = 1.0 / rate if rate > 0 else np.inf
    else:
        dispersion = np.inf
    return min(transport, dispersion)


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------

def _guarded_model_step(u: np.ndarray, dx: float, dt: float, config: RunConfig,
                        step_index: int, t: float) -> tuple[np.ndarray, int]:
    """Advance by dt, subdividing per the stability estimate when enabled."""
    if not config.substep_guard:
        un = _euler_model_step(u, dx, dt, config.f, config.g, config.delta,
                               config.boundary, step_index=step_index, time=t)
        return un, 1
    remaining = dt
    substeps = 0
    while remaining > 1e-18 * dt:
        _, w = _model_fluxes(u, dx, config.f, config.g, config.delta,
                             config.boundary)
        cap = stable_dt_estimate(u, w, dx, config.f, config.g, config.delta)
        h = min(remaining, cap)
        u = _euler_model_step(u, dx, h, config.f, config.g, config.delta,
                              config.boundary, step_index=step_index, time=t)
        t += h
        remaining -= h
        substeps += 1
    return u, substeps


def _advance(state_u: np.ndarray, grid: Grid1D, config: RunConfig, dt: float,
             step_index: int, t: float) -> tuple[np.ndarray, int]:
    kind = config.scheme_kind
    if kind is SchemeKind.MODEL_FULLY_DISCRETE:
        return _guarded_model_step(state_u, grid.dx, dt, config, step_index, t)
    state = StateField(grid, state_u, t)
    stepper = {
        SchemeKind.MODEL_MOL: lambda: step_mol_rk4(state, replace(config, dt=dt)),
        SchemeKind.LIMITED_GODUNOV: lambda: step_limited_godunov(
            state, config.f, dt, config.boundary),
        SchemeKind.ENTROPY_REFERENCE: lambda: step_godunov_first_order(
            state, config.f, dt, config.boundary),
    }[kind]
    return stepper().u, 1


def _mass(u: np.ndarray, grid: Grid1D, boundary: BoundaryRule) -> float:
    # periodic grids duplicate one endpoint; count distinct nodes only
    vals = u[:-1] if boundary is BoundaryRule.PERIODIC else u
    return float(grid.dx * np.sum(vals))


def _diagnostics_row(u: np.ndarray, grid: Grid1D, t: float,
                     boundary: BoundaryRule) -> tuple[float, float, float, float, float]:
    state = StateField(grid, u, t)
    return (t, _mass(u, grid, boundary), forward_slope_max(state),
            float(u.min()), float(u.max()))


def _base_metadata(config: RunConfig, dt: float) -> dict:
    md = {
        "scheme": config.scheme_kind.value,
        "boundary": config.boundary.value,
        "domain": [config.grid.x_min, config.grid.x_max],
        "dt_used": dt,
        "dt_was_suggested": config.dt is None,
    }
    if config.scheme_kind in (SchemeKind.MODEL_FULLY_DISCRETE, SchemeKind.MODEL_MOL):
        dx = config.grid.dx
        # both printed conventions for the emergent fourth-order coefficient
        md["fourth_order_coeff_half_dx_delta"] = 0.5 * dx * config.delta
        md["fourth_order_coeff_dx_delta"] = dx * config.delta
    return md


def run(config: RunConfig) -> Trajectory:
    """Integrate from t = 0 to t_end, recording snapshots and diagnostics.

    Snapshot times (and t_end) are rounded to the nearest whole step; the
    actual times reached are what the snapshots carry. Deterministic for a
    given config.
    """
    dt = config.dt if config.dt is not None else suggest_dt(config)
    if dt == 0 and config.t_end > 0:
        raise ConfigurationError("run needs dt > 0 to reach t_end > 0")
    state0 = sample_profile(config.profile, config.grid)
    if config.boundary is BoundaryRule.PERIODIC:
        check_periodic_compatible(state0)
    grid = config.grid

    n_total = int(round(config.t_end / dt)) if config.t_end > 0 else 0
    wanted = config.snapshot_times if config.snapshot_times is not None \
        else (0.0, config.t_end)
    snap_steps = sorted({min(n_total, max(0, int(round(t / dt)))) if dt > 0
                         else 0 for t in wanted})

    rows = []
    snaps: list[StateField] = []
    u = state0.u
    t = 0.0
    substeps = 0
    if snap_steps and snap_steps[0] == 0:
        snaps.append(state0)
        rows.append(_diagnostics_row(u, grid, 0.0, config.boundary))
        snap_steps = snap_steps[1:]
    try:
        for k in range(1, n_total + 1):
            u, ns = _advance(u, grid, config, dt, k, t)
            substeps += ns
            t = k * dt
            if snap_steps and k == snap_steps[0]:
                snaps.append(StateField(grid, u, t))
                rows.append(_diagnostics_row(u, grid, t, config.boundary))
                snap_steps = snap_steps[1:]
    except BlowUpError as err:
        raise BlowUpError(f"run aborted: {err}", step_index=err.step_index,
                          node_index=err.node_index, time=err.time) from err

    if not snaps:
        snaps.append(StateField(grid, u, t))
        rows.append(_diagnostics_row(u, grid, t, config.boundary))
    diag = {key: np.array(col) for key, col in zip(
        ("time", "mass", "forward_slope_max", "u_min", "u_max"), zip(*rows))}
    md = _base_metadata(config, dt)
    md.update(steps_taken=n_total, substeps_taken=substeps, actual_t_end=t)
    return Trajectory(config, tuple(snaps), diag, md)


def run_to_steady(config: RunConfig, linf_tol: float = 1e-8) -> Trajectory:
    """Step until the per-step L-infinity change drops below ``linf_tol``,
    capped at t_end. Records whether and when steadiness was reached."""
    dt = config.dt if config.dt is not None else suggest_dt(config)
    state0 = sample_profile(config.profile, config.grid)
    if config.boundary is BoundaryRule.PERIODIC:
        check_periodic_compatible(state0)
    grid, dx = config.grid, config.grid.dx
    if config.scheme_kind is not SchemeKind.MODEL_FULLY_DISCRETE:
        raise ConfigurationError("run_to_steady drives the fully-discrete model scheme")

    u = state0.u
    t = 0.0
    substeps = 0
    change = np.inf
    steady = False
    while t < config.t_end - 1e-15:
        h = min(dt, config.t_end - t)
        if config.substep_guard:
            _, w = _model_fluxes(u, dx, config.f, config.g, config.delta,
                                 config.boundary)
            h = min(h, stable_dt_estimate(u, w, dx, config.f, config.g,
                                          config.delta))
        un = _euler_model_step(u, dx, h, config.f, config.g, config.delta,
                               config.boundary, step_index=substeps, time=t)
        change = float(np.max(np.abs(un - u)))
        u = un
        t += h
        substeps += 1
        if change < linf_tol:
            steady = True
            break

    rows = [_diagnostics_row(state0.u, grid, 0.0, config.boundary),
            _diagnostics_row(u, grid, t, config.boundary)]
    diag = {key: np.array(col) for key, col in zip(
        ("time", "mass", "forward_slope_max", "u_min", "u_max"), zip(*rows))}
    md = _base_metadata(config, dt)
    md.update(steps_taken=substeps, substeps_taken=substeps, actual_t_end=t,
              steady_reached=steady, steady_time=t if steady else None,
              final_step_change=change, steady_tolerance=linf_tol)
    return Trajectory(config, (state0, StateField(grid, u, t)), diag, md)


def entropy_reference(profile: InitialProfile, f: ConvexFlux, t_end: float,
                      grid: Grid1D, fine_n: int | None = None,
                      cfl: float = 0.5) -> StateField:
    """Entropy-solution oracle: first-order Godunov on a fine grid, sampled
    back to ``grid`` by linear interpolation.

    ``fine_n`` defaults to 16x the comparison resolution and must keep at
    least an 8x interval ratio.
    """
    intervals = grid.n_points - 1
    if fine_n is None:
        fine_n = 16 * intervals + 1
    if (fine_n - 1) < 8 * intervals:
        raise ConfigurationError(
            f"fine_n={fine_n} is below the 8x refinement the oracle requires")
    from .grid import make_grid
    fine = make_grid(grid.x_min, grid.x_max, fine_n, grid.origin_node)
    state = sample_profile(profile, fine)
    if t_end > 0:
        speed = float(np.max(np.abs(f.derivative(state.u))))
        steps = max(1, int(np.ceil(t_end * speed / (cfl * fine.dx)))) \
            if speed > 0 else 1
        dt = t_end / steps
        for _ in range(steps):
            state = step_godunov_first_order(state, f, dt)
    u = np.interp(grid.x, fine.x, state.u)
    return StateField(grid, u, t_end)
