"""Named experiment catalog, parameter sweeps, and persistent result bundles.

A result bundle is a directory:

    <out>/<experiment-id>/
        summary.json                  # configs, diagnostics, metrics
        <run-label>/t<time>.csv       # snapshot per recorded time, header x,u
        <run-label>/reference_*.csv   # analysis reference curves, same format

Snapshot CSVs carry 17 significant digits; re-running a config reproduces
them bit-identically. summary.json holds everything needed to re-run.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

try:  # version string recorded in bundle metadata
    from importlib.metadata import version as _pkg_version
    __version__ = _pkg_version("fnkdv")
except Exception:  # pragma: no cover - not installed
    __version__ = "0.1.0"

from .analysis import (SmoothField, attractor_distance, check_oslc,
                       decompose_binary, envelope_prediction, fit_envelope,
                       modified_equation_residual, ripple_metrics,
                       traveling_wave)
from .fluxes import (ConcaveDispersionFlux, ConvexFlux, DispersionKind,
                     abs_dispersion, burgers, linear_flux, square_dispersion)
from .grid import (BoundaryRule, ConfigurationError, Grid1D, InitialProfile,
                   ProfileKind, exponential_profile, make_grid, riemann_profile)
from .stepping import (RunConfig, SchemeKind, Trajectory, entropy_reference,
                       run, run_to_steady)

DOMAIN = (-1.0, 1.0)


def _grid(n_intervals: int, origin: bool = False) -> Grid1D:
    return make_grid(DOMAIN[0], DOMAIN[1], n_intervals + 1, origin)


def _riemann_abs_dt(delta: float, dx: float, amp: float = 2.0) -> float:
    """Step size for weakly damped oscillatory Riemann runs (abs kind).

    Besides the transport CFL and the dx^3 dispersion bound, the centered
    transport flux needs the grid-mode damping to win over the forward-
    Euler advection growth, which requires dt <= 8*delta/(amp^2*dx).
    """
    return min(0.125 * dx, 0.08 * dx**3 / delta, 8.0 * delta / (amp**2 * dx))


@dataclass(frozen=True)
class ExperimentRun:
    label: str
    config: RunConfig
    driver: str = "run"            # "run" | "steady"


@dataclass(frozen=True)
class ExperimentSpec:
    experiment_id: str
    description: str
    runs: tuple[ExperimentRun, ...]
    analyses: tuple[str, ...] = ()


@dataclass(frozen=True)
class ResultBundle:
    experiment_id: str
    path: Path
    summary: dict


# ---------------------------------------------------------------------------
# config (de)serialization -- the documented JSON schema
# ---------------------------------------------------------------------------

def _take(d: dict, what: str, allowed: set[str], required: set[str]) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigurationError(f"unknown {what} fields: {sorted(unknown)}")
    missing = required - set(d)
    if missing:
        raise ConfigurationError(f"missing {what} fields: {sorted(missing)}")


def flux_to_dict(f: ConvexFlux) -> dict:
    if f.name == "burgers":
        return {"kind": "burgers"}
    if f.name.startswith("linear["):
        return {"kind": "linear", "beta": float(f.name[7:-1])}
    raise ConfigurationError(f"flux {f.name!r} has no JSON form")


def flux_from_dict(d: dict) -> ConvexFlux:
    _take(d, "flux", {"kind", "beta"}, {"kind"})
    if d["kind"] == "burgers":
        return burgers()
    if d["kind"] == "linear":
        return linear_flux(float(d.get("beta", 1.0)))
    raise ConfigurationError(f"unknown flux kind {d['kind']!r}")


def dispersion_to_dict(g: ConcaveDispersionFlux) -> dict:
    if g.kind is DispersionKind.CUSTOM:
        raise ConfigurationError("custom dispersion fluxes have no JSON form")
    return {"kind": g.kind.value}


def dispersion_from_dict(d: dict) -> ConcaveDispersionFlux:
    _take(d, "dispersion", {"kind"}, {"kind"})
    if d["kind"] == "abs":
        return abs_dispersion()
    if d["kind"] == "square":
        return square_dispersion()
    raise ConfigurationError(f"unknown dispersion kind {d['kind']!r}")


def profile_to_dict(p: InitialProfile) -> dict:
    if p.kind is ProfileKind.EXPONENTIAL:
        return {"kind": p.kind.value, "amplitude": p.amplitude,
                "decay_rate": p.decay_rate}
    if p.kind in (ProfileKind.RIEMANN_WITH_ORIGIN, ProfileKind.RIEMANN_PLAIN):
        return {"kind": p.kind.value, "left": p.left, "right": p.right}
    raise ConfigurationError("custom profiles have no JSON form")


def profile_from_dict(d: dict) -> InitialProfile:
    _take(d, "profile", {"kind", "amplitude", "decay_rate", "left", "right"},
          {"kind"})
    kind = ProfileKind(d["kind"])
    if kind is ProfileKind.EXPONENTIAL:
        return exponential_profile(float(d.get("amplitude", 1.0)),
                                   float(d.get("decay_rate", 100.0)))
    if kind in (ProfileKind.RIEMANN_WITH_ORIGIN, ProfileKind.RIEMANN_PLAIN):
        return riemann_profile(float(d.get("left", 1.0)),
                               float(d.get("right", -1.0)),
                               with_origin=kind is ProfileKind.RIEMANN_WITH_ORIGIN)
    raise ConfigurationError(f"profile kind {kind} not loadable from JSON")


def config_to_dict(config: RunConfig) -> dict:
    g = config.grid
    return {
        "grid": {"x_min": g.x_min, "x_max": g.x_max, "n_points": g.n_points,
                 "origin_node": g.origin_node},
        "profile": profile_to_dict(config.profile),
        "flux": flux_to_dict(config.f),
        "dispersion": dispersion_to_dict(config.g),
        "delta": config.delta,
        "dt": config.dt,
        "t_end": config.t_end,
        "boundary": config.boundary.value,
        "snapshot_times": list(config.snapshot_times)
        if config.snapshot_times is not None else None,
        "scheme": config.scheme_kind.value,
        "substep_guard": config.substep_guard,
    }


def config_from_dict(d: dict) -> RunConfig:
    _take(d, "config",
          {"grid", "profile", "flux", "dispersion", "delta", "dt", "t_end",
           "boundary", "snapshot_times", "scheme", "substep_guard"},
          {"grid", "profile"})
    gd = dict(d["grid"])
    _take(gd, "grid", {"x_min", "x_max", "n_points", "origin_node"},
          {"x_min", "x_max", "n_points"})
    grid = Grid1D(float(gd["x_min"]), float(gd["x_max"]), int(gd["n_points"]),
                  bool(gd.get("origin_node", False)))
    snap = d.get("snapshot_times")
    return RunConfig(
        grid=grid,
        profile=profile_from_dict(dict(d["profile"])),
        f=flux_from_dict(dict(d.get("flux", {"kind": "burgers"}))),
        g=dispersion_from_dict(dict(d.get("dispersion", {"kind": "abs"}))),
        delta=float(d.get("delta", 0.0)),
        dt=None if d.get("dt") is None else float(d["dt"]),
        t_end=float(d.get("t_end", 0.5)),
        boundary=BoundaryRule(d.get("boundary", "constant_extension")),
        snapshot_times=None if snap is None else tuple(float(t) for t in snap),
        scheme_kind=SchemeKind(d.get("scheme", "model_fully_discrete")),
        substep_guard=bool(d.get("substep_guard", False)),
    )


# ---------------------------------------------------------------------------
# the built-in catalog
# ---------------------------------------------------------------------------

def _exp_abs_run(delta: float, n: int = 400, dt: float | None = "caption",
                 t_end: float = 0.5, snapshot_times=None,
                 kind: str = "abs", guard: bool = False) -> RunConfig:
    if dt == "caption":
        dt = 1e-8 / delta
    g = abs_dispersion() if kind == "abs" else square_dispersion()
    return RunConfig(grid=_grid(n), profile=exponential_profile(),
                     g=g, delta=delta, dt=dt, t_end=t_end,
                     snapshot_times=snapshot_times, substep_guard=guard)


def _riemann_abs_run(delta: float, n: int, t_end: float = 0.5,
                     with_origin: bool = True, snapshot_times=None) -> RunConfig:
    grid = _grid(n, origin=with_origin)
    return RunConfig(grid=grid, profile=riemann_profile(with_origin=with_origin),
                     g=abs_dispersion(), delta=delta,
                     dt=_riemann_abs_dt(delta, grid.dx), t_end=t_end,
                     snapshot_times=snapshot_times)


def _trav_run(delta: float, n: int = 400) -> RunConfig:
    # t_end caps the steady-state search
    return RunConfig(grid=_grid(n, origin=True),
                     profile=riemann_profile(with_origin=True),
                     g=square_dispersion(), delta=delta, dt=None, t_end=3.0,
                     substep_guard=True)


_DELTA_FAMILY = (5e-3, 5e-4, 5e-5, 5e-6)   # reconstruction, not catalog data
_SWEEP_DELTAS = (5e-3, 5e-4, 5e-5)


def _build_catalog() -> dict[str, ExperimentSpec]:
    cat: dict[str, ExperimentSpec] = {}

    def add(spec: ExperimentSpec) -> None:
        cat[spec.experiment_id] = spec

    for i, delta in enumerate((1e-5, 1e-6), start=1):
        add(ExperimentSpec(
            f"fig-trav.{i}",
            f"square-kind Riemann run to steady state, delta={delta:g}, N=400; "
            "compared against the quadrature traveling-wave profile",
            (ExperimentRun(f"delta={delta:g}", _trav_run(delta), driver="steady"),),
            ("attractor",)))

    add(ExperimentSpec(
        "fig-ex1.1",
        "abs kind, exponential data, N=400, T=0.5, dt*delta=1e-8; "
        "single-ripple overlay across dispersion strengths vs entropy solution",
        tuple(ExperimentRun(f"delta={d:g}", _exp_abs_run(d))
              for d in _DELTA_FAMILY),
        ("ripple",)))

    add(ExperimentSpec(
        "fig-ex1.2",
        "abs kind, exponential data, delta=5e-4, T=0.5; grid refinement "
        "N=100/200/400 at the matching step sizes",
        tuple(ExperimentRun(f"N={n}", _exp_abs_run(5e-4, n=n, dt=dt))
              for n, dt in ((100, 2e-3), (200, 2e-4), (400, 2e-5))),
        ("grid_compare",)))

    add(ExperimentSpec(
        "fig-ex1.3",
        "abs kind, exponential data, N=400, delta=5e-4, dt=2e-5; "
        "time evolution snapshots",
        (ExperimentRun("delta=0.0005", _exp_abs_run(
            5e-4, dt=2e-5, snapshot_times=(0.0, 0.1, 0.2, 0.3, 0.4, 0.5))),),
        ()))

    add(ExperimentSpec(
        "fig-ex1.4",
        "abs kind, exponential data, small delta=1e-5 on coarse grids; "
        "spurious oscillations that vanish under refinement",
        (ExperimentRun("N=200", _exp_abs_run(1e-5, n=200, dt=1e-4)),
         ExperimentRun("N=100", _exp_abs_run(1e-5, n=100, dt=1e-3))),
        ("oscillation",)))

    add(ExperimentSpec(
        "fig-ex1.5",
        "square kind, exponential data, N=400, T=0.5, dt*delta=1e-8 "
        "(substep-guarded); single ripple across dispersion strengths",
        tuple(ExperimentRun(f"delta={d:g}",
                            _exp_abs_run(d, kind="square", guard=True))
              for d in _DELTA_FAMILY),
        ("ripple", "oslc")))

    add(ExperimentSpec(
        "fig-ex2.1",
        "abs kind, Riemann data with the origin datum, delta=1e-5, N=100, "
        "T=0.5; binary oscillations from the jump",
        (ExperimentRun("N=100", _riemann_abs_run(1e-5, 100)),),
        ("oscillation",)))
    add(ExperimentSpec(
        "fig-ex2.2",
        "abs kind, Riemann data with the origin datum, delta=1e-6, T=0.5; "
        "expanding (N=100) vs steady (N=200) oscillation support",
        (ExperimentRun("N=100", _riemann_abs_run(1e-6, 100)),
         ExperimentRun("N=200", _riemann_abs_run(1e-6, 200))),
        ("oscillation",)))
    add(ExperimentSpec(
        "fig-ex2.3",
        "abs kind, Riemann data with the origin datum, delta=1e-6, N=100; "
        "oscillation growth in time",
        (ExperimentRun("N=100", _riemann_abs_run(
            1e-6, 100, snapshot_times=(0.1, 0.2, 0.3, 0.4, 0.5))),),
        ("oscillation",)))
    for i, (delta, runs) in enumerate((
            (1e-5, ((100, None),)),
            (1e-6, ((100, None), (200, None))),
            (1e-6, ((100, (0.1, 0.2, 0.3, 0.4, 0.5)),))), start=1):
        add(ExperimentSpec(
            f"fig-ex2.a.{i}",
            f"as fig-ex2.{i} but with Riemann data that carries no origin "
            "datum (oscillations lose the stabilizing point)",
            tuple(ExperimentRun(f"N={n}", _riemann_abs_run(
                delta, n, with_origin=False, snapshot_times=snaps))
                for n, snaps in runs),
            ("oscillation",)))

    add(ExperimentSpec(
        "fig-factor.1",
        "abs kind, Riemann data with origin; fixed delta/dx^3 keeps the "
        "oscillation amplitude, decreasing delta at fixed N grows it",
        (ExperimentRun("N=100-matched", _riemann_abs_run(1e-5, 100)),
         ExperimentRun("N=200-matched", _riemann_abs_run(1.25e-6, 200)),
         ExperimentRun("N=200-small-delta", _riemann_abs_run(1.25e-7, 200))),
        ("oscillation",)))

    add(ExperimentSpec(
        "fig-env.1",
        "abs kind, Riemann data with origin, N=100, delta=1e-5, T=0.5; "
        "steady oscillation envelope with rate c = 8*delta/dx^3 = 10",
        (ExperimentRun("N=100", _riemann_abs_run(1e-5, 100)),),
        ("envelope", "oscillation")))
    add(ExperimentSpec(
        "fig-env.2",
        "abs kind, Riemann data with origin, N=200, delta=1e-6, T=0.5; "
        "envelope rate c = 8",
        (ExperimentRun("N=200", _riemann_abs_run(1e-6, 200)),),
        ("envelope", "oscillation")))

    add(ExperimentSpec(
        "sweep-conjecture",
        "abs kind, exponential data, N=400; L1 distance to the entropy "
        "solution as the dispersion strength decreases",
        tuple(ExperimentRun(f"delta={d:g}", _exp_abs_run(d))
              for d in _SWEEP_DELTAS),
        ("ripple", "oscillation")))

    add(ExperimentSpec(
        "check-modified-equation",
        "order check of the discrete operator's leading truncation term on "
        "a smooth test function (square kind, dx ladder 1/40, 1/80, 1/160)",
        (),
        ("modified_equation",)))
    return cat


_CATALOG: dict[str, ExperimentSpec] | None = None


def list_experiments() -> dict[str, ExperimentSpec]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return dict(_CATALOG)


def get_experiment(experiment_id: str) -> ExperimentSpec:
    cat = list_experiments()
    if experiment_id not in cat:
        raise ConfigurationError(
            f"unknown experiment {experiment_id!r}; "
            f"known ids: {', '.join(sorted(cat))}")
    return cat[experiment_id]


# ---------------------------------------------------------------------------
# bundle writing
# ---------------------------------------------------------------------------

def _fmt(v: float) -> str:
    return f"{v:.17g}"


def write_curve_csv(path: Path, x: np.ndarray, u: np.ndarray) -> None:
    lines = ["x,u"]
    lines += [f"{_fmt(float(a))},{_fmt(float(b))}" for a, b in zip(x, u)]
    path.write_text("\n".join(lines) + "\n")


def _snapshot_name(t: float) -> str:
    return f"t{t:.6g}.csv"


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def _write_run(run_dir: Path, traj: Trajectory) -> dict:
    run_dir.mkdir(parents=True, exist_ok=True)
    for snap in traj.snapshots:
        write_curve_csv(run_dir / _snapshot_name(snap.t), snap.grid.x, snap.u)
    return {
        "config": config_to_dict(traj.config),
        "diagnostics": _to_jsonable(traj.diagnostics),
        "metadata": _to_jsonable(traj.metadata),
        "snapshots": [_snapshot_name(s.t) for s in traj.snapshots],
    }


def _execute(spec: ExperimentSpec, jobs: int) -> list[tuple[ExperimentRun, Trajectory]]:
    def one(er: ExperimentRun) -> Trajectory:
        try:
            if er.driver == "steady":
                return run_to_steady(er.config)
            return run(er.config)
        except Exception as err:
            raise RuntimeError(
                f"run {er.label!r} of {spec.experiment_id} failed: {err}") from err

    if jobs > 1 and len(spec.runs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            trajs = list(pool.map(one, spec.runs))
    else:
        trajs = [one(er) for er in spec.runs]
    return list(zip(spec.runs, trajs))


# ---------------------------------------------------------------------------
# analysis tasks
# ---------------------------------------------------------------------------

def _task_oslc(spec, results, exp_dir):
    out = {}
    for er, traj in results:
        if len(traj.snapshots) < 2:
            continue
        rep = check_oslc(traj)
        out[er.label] = {"times": rep.times, "seminorms": rep.seminorms,
                         "passed": rep.passed, "worst_ratio": rep.worst_ratio}
    return out


def _task_ripple(spec, results, exp_dir):
    refs: dict[int, np.ndarray] = {}
    out = {}
    for er, traj in results:
        cfg = er.config
        key = cfg.grid.n_points
        if key not in refs:
            ref = entropy_reference(cfg.profile, cfg.f, cfg.t_end, cfg.grid)
            refs[key] = ref
            write_curve_csv(exp_dir / er.label / "reference_entropy.csv",
                            ref.grid.x, ref.u)
        else:
            ref = refs[key]
            write_curve_csv(exp_dir / er.label / "reference_entropy.csv",
                            ref.grid.x, ref.u)
        m = ripple_metrics(traj, ref)
        out[er.label] = {"l1": m.l1_distance, "undershoot": m.undershoot,
                         "overshoot": m.overshoot, "amplitude": m.amplitude,
                         "ripple_count": m.ripple_count}
    return out


def _task_oscillation(spec, results, exp_dir):
    out = {}
    for er, traj in results:
        dec = decompose_binary(traj.final_state)
        out[er.label] = {"max_w": float(np.max(np.abs(dec.w)))}
    return out


def _task_envelope(spec, results, exp_dir):
    out = {}
    for er, traj in results:
        cfg = er.config
        jump = cfg.profile.left - cfg.profile.right
        pred = envelope_prediction(cfg.delta, cfg.grid.dx, jump)
        dec = decompose_binary(traj.final_state)
        fit = fit_envelope(dec, cfg.grid)
        inside = np.abs(dec.w) <= (fit.amplitude
                                   * np.exp(-pred.c * np.abs(cfg.grid.x)) + 0.05)
        out[er.label] = {
            "c": pred.c, "c_hat_default": pred.c_hat,
            "fitted_rate": fit.rate, "fitted_amplitude": fit.amplitude,
            "per_side_rates": list(fit.rates),
            "amplitude_coverage": float(inside.mean()),
        }
    return out


def _task_attractor(spec, results, exp_dir):
    out = {}
    for er, traj in results:
        cfg = er.config
        u1 = 0.5 * (cfg.profile.left - cfg.profile.right)
        prof = traveling_wave(u1, cfg.delta, x_samples=cfg.grid.x)
        write_curve_csv(exp_dir / er.label / "reference_traveling_wave.csv",
                        prof.x, prof.u)
        out[er.label] = {
            "distance": attractor_distance(traj, prof),
            "steady_reached": traj.metadata.get("steady_reached"),
            "steady_time": traj.metadata.get("steady_time"),
        }
    return out


def _task_grid_compare(spec, results, exp_dir):
    ordered = sorted(results, key=lambda rt: rt[0].config.grid.n_points)
    pairs = []
    for (ec, tc), (ef, tf) in zip(ordered[:-1], ordered[1:]):
        nc, nf = ec.config.grid.n_points, ef.config.grid.n_points
        ratio = (nf - 1) // (nc - 1)
        if (nf - 1) != ratio * (nc - 1):
            raise ConfigurationError("grid_compare needs nested grids")
        uc = tc.final_state.u
        uf = tf.final_state.u[::ratio]
        l1 = float(ec.config.grid.dx * np.sum(np.abs(uc - uf)))
        pairs.append({"coarse": ec.label, "fine": ef.label, "l1": l1})
    return {"pairs": pairs}


MODIFIED_EQ_LADDER = (1.0 / 40.0, 1.0 / 80.0, 1.0 / 160.0)
MODIFIED_EQ_WINDOW = (0.2, 0.8)


def _task_modified_equation(spec, results, exp_dir):
    field = SmoothField(
        u=lambda x: x**4 + x**2,
        d1=lambda x: 4.0 * x**3 + 2.0 * x,
        d2=lambda x: 12.0 * x**2 + 2.0,
        d3=lambda x: 24.0 * x,
        d4=lambda x: np.full_like(np.asarray(x, dtype=float), 24.0),
    )
    g = square_dispersion()
    delta = 1.0
    rep = modified_equation_residual(field, g, delta, MODIFIED_EQ_LADDER,
                                     MODIFIED_EQ_WINDOW)
    # residual fields per dx, written as curve CSVs so they can be plotted
    f = burgers()
    for dx in MODIFIED_EQ_LADDER:
        a, b = MODIFIED_EQ_WINDOW
        m = int(round((b - a) / dx))
        xs = a + dx * np.arange(-2, m + 3)
        u = field.u(xs)
        w = (u[:-2] - 2.0 * u[1:-1] + u[2:]) / (dx * dx)
        from .fluxes import engquist_osher_flux
        geo = engquist_osher_flux(w[:-1], w[1:], g)
        mid = 0.5 * (u[1:-2] + u[2:-1])
        F = f.evaluate(mid) - delta * geo
        discrete = np.diff(F) / dx
        xi = xs[2:-2]
        analytic = (f.derivative(field.u(xi)) * field.d1(xi)
                    - delta * g.derivative(field.d2(xi)) * field.d3(xi))
        rd = exp_dir / f"dx={dx:.6g}"
        rd.mkdir(parents=True, exist_ok=True)
        write_curve_csv(rd / "t0.csv", xi, discrete - analytic)
    return {
        "dxs": rep.dxs, "raw_norms": rep.raw_norms,
        "corrected_norms": rep.corrected_norms,
        "raw_order": rep.raw_order, "corrected_order": rep.corrected_order,
        "window": list(MODIFIED_EQ_WINDOW), "delta": delta,
        "dispersion": "square",
    }


_TASKS = {
    "oslc": _task_oslc,
    "ripple": _task_ripple,
    "oscillation": _task_oscillation,
    "envelope": _task_envelope,
    "attractor": _task_attractor,
    "grid_compare": _task_grid_compare,
    "modified_equation": _task_modified_equation,
}


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def run_experiment(spec_or_id, out_dir, jobs: int = 1) -> ResultBundle:
    """Execute an experiment's runs, apply its analyses, write the bundle."""
    spec = get_experiment(spec_or_id) if isinstance(spec_or_id, str) else spec_or_id
    exp_dir = Path(out_dir) / spec.experiment_id
    exp_dir.mkdir(parents=True, exist_ok=True)

    results = _execute(spec, jobs)
    run_records = []
    for er, traj in results:
        rec = _write_run(exp_dir / er.label, traj)
        rec["label"] = er.label
        rec["driver"] = er.driver
        run_records.append(rec)

    metrics = {}
    for name in spec.analyses:
        if name not in _TASKS:
            raise ConfigurationError(f"unknown analysis task {name!r}")
        metrics[name] = _to_jsonable(_TASKS[name](spec, results, exp_dir))

    summary = {
        "experiment": spec.experiment_id,
        "description": spec.description,
        "version": __version__,
        "analyses": list(spec.analyses),
        "runs": run_records,
        "metrics": metrics,
    }
    (exp_dir / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return ResultBundle(spec.experiment_id, exp_dir, summary)


def run_config_file(path, out_dir, jobs: int = 1) -> ResultBundle:
    """Run a single config loaded from a JSON file as an ad-hoc experiment."""
    p = Path(path)
    config = config_from_dict(json.loads(p.read_text()))
    spec = ExperimentSpec(p.stem, f"ad-hoc config from {p.name}",
                          (ExperimentRun("run", config),), ())
    return run_experiment(spec, out_dir, jobs)


SWEEPABLE = ("delta", "n_points", "dt")


def sweep(base_config: RunConfig, parameter: str, values, out_dir,
          jobs: int = 1, analyses: tuple[str, ...] = ("ripple", "oscillation"),
          experiment_id: str | None = None) -> ResultBundle:
    """One run per parameter value plus a metrics table across the sweep."""
    values = list(values)
    if parameter not in SWEEPABLE:
        raise ConfigurationError(
            f"sweep parameter must be one of {SWEEPABLE}, got {parameter!r}")
    if not values:
        raise ConfigurationError("sweep needs at least one value")
    if any(v <= 0 for v in values):
        raise ConfigurationError("sweep values must be positive")

    runs = []
    for v in values:
        if parameter == "delta":
            cfg = replace(base_config, delta=float(v))
        elif parameter == "dt":
            cfg = replace(base_config, dt=float(v))
        else:
            grid = base_config.grid
            cfg = replace(base_config, grid=Grid1D(
                grid.x_min, grid.x_max, int(v), grid.origin_node))
        runs.append(ExperimentRun(f"{parameter}={v:g}", cfg))
    spec = ExperimentSpec(
        experiment_id or f"sweep-{parameter}",
        f"sweep of {parameter} over {len(values)} values", tuple(runs), analyses)
    return run_experiment(spec, out_dir, jobs)


def default_sweep_base() -> RunConfig:
    """Exponential-data abs-kind base at N=400; dt is suggested per value."""
    return RunConfig(grid=_grid(400), profile=exponential_profile(),
                     g=abs_dispersion(), delta=5e-4, dt=None, t_end=0.5)
