"""Acceptance suite: one test per criterion, each printing a PASS line.

The heavy runs (exponential-data families at dt*delta = 1e-8) are shared
across criteria through session fixtures. Run with -s to see the lines.
"""
import numpy as np
import pytest

from fnkdv import (BoundaryRule, RunConfig, SchemeKind, abs_dispersion,
                   burgers, check_oslc, custom_profile, decompose_binary,
                   engquist_osher_flux, entropy_reference, envelope_prediction,
                   exponential_profile, fit_envelope, forward_slope_max,
                   godunov_flux, integrate_two_phase, make_grid,
                   modified_equation_residual, riemann_profile, ripple_metrics,
                   run, run_to_steady, sample_profile, square_dispersion,
                   step_fully_discrete, traveling_wave, attractor_distance)
from fnkdv.analysis import SmoothField
from fnkdv.experiments import _riemann_abs_dt

DELTAS = (5e-3, 5e-4, 5e-5)


def _passline(num, name, detail=""):
    print(f"ACCEPTANCE {num:2d} ({name}): PASS{'  -- ' + detail if detail else ''}")


def grid_1n(n, origin=False):
    return make_grid(-1.0, 1.0, n + 1, origin)


@pytest.fixture(scope="session")
def grid400():
    return grid_1n(400)


@pytest.fixture(scope="session")
def entropy_ref_400(grid400):
    return entropy_reference(exponential_profile(), burgers(), 0.5, grid400)


@pytest.fixture(scope="session")
def abs_family(grid400):
    out = {}
    for delta in DELTAS:
        cfg = RunConfig(grid=grid400, profile=exponential_profile(),
                        g=abs_dispersion(), delta=delta, dt=1e-8 / delta,
                        t_end=0.5)
        out[delta] = run(cfg)
    return out


@pytest.fixture(scope="session")
def square_family(grid400):
    out = {}
    for delta in DELTAS:
        cfg = RunConfig(grid=grid400, profile=exponential_profile(),
                        g=square_dispersion(), delta=delta, dt=1e-8 / delta,
                        t_end=0.5, substep_guard=True,
                        snapshot_times=tuple(np.linspace(0.0, 0.5, 11)))
        out[delta] = run(cfg)
    return out


def test_c01_flux_exactness():
    f, ga, gs = burgers(), abs_dispersion(), square_dispersion()
    assert godunov_flux(-1.0, 1.0, f) == 0.0
    assert godunov_flux(1.0, -1.0, f) == 0.5
    assert godunov_flux(1.0, 2.0, f) == 0.5
    assert engquist_osher_flux(3.0, -2.0, ga) == 0.0
    assert engquist_osher_flux(-3.0, 2.0, ga) == -5.0
    assert engquist_osher_flux(-1.0, 2.0, gs) == -5.0

    rng = np.random.default_rng(2024)
    n = 100_000
    a = rng.uniform(-3.0, 3.0, n)
    b = rng.uniform(-3.0, 3.0, n)
    eps = 1e-3
    h = godunov_flux(a, b, f)
    assert np.all(godunov_flux(a + eps, b, f) >= h - 1e-12)
    assert np.all(godunov_flux(a, b + eps, f) <= h + 1e-12)
    for g in (ga, gs):
        e = engquist_osher_flux(a, b, g)
        assert np.all(engquist_osher_flux(a + eps, b, g) >= e - 1e-12)
        assert np.all(engquist_osher_flux(a, b + eps, g) <= e + 1e-12)
    _passline(1, "flux exactness + monotonicity", f"{n} samples per check")


def test_c02_conservation_periodic():
    g = grid_1n(100)
    cfg = RunConfig(grid=g,
                    profile=custom_profile(lambda x: 1.0 + 0.5 * np.sin(np.pi * x)),
                    g=abs_dispersion(), delta=1e-4, dt=2e-3, t_end=200.0,
                    boundary=BoundaryRule.PERIODIC, snapshot_times=(0.0, 200.0))
    traj = run(cfg)
    assert traj.metadata["steps_taken"] == 100_000
    mass = traj.diagnostics["mass"]
    drift = abs(mass[-1] - mass[0]) / abs(mass[0])
    assert drift <= 1e-10
    _passline(2, "conservation", f"relative drift {drift:.2e} over 1e5 steps")


def test_c03_rescaling_commutation():
    g = grid_1n(200)
    u0 = sample_profile(exponential_profile(), g)
    delta, dt = 1e-4, 1e-4
    worst = 0.0
    for lam in (0.5, 2.0, 10.0):
        stepped = step_fully_discrete(
            u0, RunConfig(grid=g, profile=exponential_profile(),
                          g=abs_dispersion(), delta=delta, dt=dt))
        scaled_then_stepped = step_fully_discrete(
            u0.with_values(lam * u0.u),
            RunConfig(grid=g, profile=exponential_profile(),
                      g=abs_dispersion(), delta=lam * delta, dt=dt / lam))
        err = np.max(np.abs(lam * stepped.u - scaled_then_stepped.u))
        worst = max(worst, err / lam)
        assert err <= 1e-12 * lam
    _passline(3, "rescaling commutation", f"worst scaled error {worst:.2e}")


def test_c04_limited_godunov_oslc_bound(grid400):
    state = sample_profile(exponential_profile(), grid400)
    p0 = forward_slope_max(state)
    cfg = RunConfig(grid=grid400, profile=exponential_profile(),
                    scheme_kind=SchemeKind.LIMITED_GODUNOV, dt=2e-3, t_end=1.0,
                    snapshot_times=tuple(np.linspace(0.05, 1.0, 20)))
    traj = run(cfg)
    worst = 0.0
    for snap in traj.snapshots:
        bound = 1.05 / (1.0 / p0 + snap.t)
        worst = max(worst, forward_slope_max(snap) / bound)
        assert forward_slope_max(snap) <= bound
    _passline(4, "slope-limited scheme one-sided bound",
              f"worst seminorm/bound {worst:.3f}")


def test_c05_smooth_dispersion_slope_decay(square_family):
    for delta in (5e-4, 5e-5):
        rep = check_oslc(square_family[delta], slack=1e-3)
        assert rep.passed, f"delta={delta}: worst ratio {rep.worst_ratio}"
    _passline(5, "smooth-kind slope seminorm decay", "delta in {5e-4, 5e-5}")


@pytest.fixture(scope="session")
def steady_waves():
    out = {}
    for delta in (1e-5, 1e-6):
        cfg = RunConfig(grid=grid_1n(400, origin=True),
                        profile=riemann_profile(), g=square_dispersion(),
                        delta=delta, dt=None, t_end=3.0, substep_guard=True)
        out[delta] = run_to_steady(cfg, linf_tol=1e-8)
    return out


def test_c06_traveling_wave_attraction(steady_waves):
    dists = {}
    for delta, traj in steady_waves.items():
        assert traj.metadata["steady_reached"], f"delta={delta} not steady"
        profile = traveling_wave(1.0, delta, x_samples=traj.config.grid.x)
        dists[delta] = attractor_distance(traj, profile)
        assert dists[delta] <= 0.05
    # quarter-power width rescale maps one steady profile onto the other
    x = steady_waves[1e-6].config.grid.x
    mask = np.abs(x) <= 10 ** -0.25
    x5 = steady_waves[1e-5].config.grid.x
    u5 = steady_waves[1e-5].final_state.u
    mapped = np.interp(10 ** 0.25 * x[mask], x5, u5)
    rescale_err = float(np.max(np.abs(mapped - steady_waves[1e-6].final_state.u[mask])))
    assert rescale_err <= 0.05
    _passline(6, "traveling-wave attraction",
              f"distances {dists[1e-5]:.4f}/{dists[1e-6]:.4f}, "
              f"rescale {rescale_err:.4f}")


def test_c07_single_ripple_strong_convergence(abs_family, square_family,
                                              entropy_ref_400):
    for name, family in (("abs", abs_family), ("square", square_family)):
        metrics = {d: ripple_metrics(family[d], entropy_ref_400) for d in DELTAS}
        for d in (5e-3, 5e-4):
            assert metrics[d].ripple_count == 1, \
                f"{name} delta={d}: count {metrics[d].ripple_count}"
        l1 = [metrics[d].l1_distance for d in DELTAS]
        assert l1[0] > l1[1] > l1[2], f"{name}: L1 not decreasing {l1}"
        assert l1[2] <= 0.5 * l1[0]
        _passline(7, f"single ripple + L1 convergence ({name})",
                  "L1 " + " > ".join(f"{v:.4f}" for v in l1))


def test_c08_grid_independence():
    sols = {}
    for n, dt in ((100, 2e-3), (200, 2e-4), (400, 2e-5)):
        cfg = RunConfig(grid=grid_1n(n), profile=exponential_profile(),
                        g=abs_dispersion(), delta=5e-4, dt=dt, t_end=0.5)
        sols[n] = run(cfg).final_state
    l1_coarse = sols[100].grid.dx * np.sum(
        np.abs(sols[100].u - sols[200].u[::2]))
    l1_fine = sols[200].grid.dx * np.sum(
        np.abs(sols[200].u - sols[400].u[::2]))
    assert l1_coarse >= 1.5 * l1_fine
    _passline(8, "grid independence",
              f"L1 pair ratio {l1_coarse / l1_fine:.2f} >= 1.5")


def test_c09_envelope_constants():
    details = []
    for n, delta, c_expected in ((100, 1e-5, 10.0), (200, 1e-6, 8.0)):
        g = grid_1n(n, origin=True)
        cfg = RunConfig(grid=g, profile=riemann_profile(), g=abs_dispersion(),
                        delta=delta, dt=_riemann_abs_dt(delta, g.dx), t_end=0.5)
        traj = run(cfg)
        pred = envelope_prediction(delta, g.dx, 2.0)
        assert pred.c == pytest.approx(c_expected, rel=1e-12)
        dec = decompose_binary(traj.final_state)
        fit = fit_envelope(dec, g)
        assert abs(fit.rate - c_expected) <= 0.15 * c_expected
        inside = np.abs(dec.w) <= fit.amplitude * pred.amplitude(g.x) / pred.c_hat + 0.05
        coverage = float(inside.mean())
        assert coverage >= 0.99
        details.append(f"c={c_expected:g}: rate {fit.rate:.2f}, "
                       f"coverage {coverage:.3f}")
    _passline(9, "envelope constants", "; ".join(details))


def test_c10_oscillation_control():
    def max_w(n, delta):
        g = grid_1n(n, origin=True)
        cfg = RunConfig(grid=g, profile=riemann_profile(), g=abs_dispersion(),
                        delta=delta, dt=_riemann_abs_dt(delta, g.dx), t_end=0.5)
        dec = decompose_binary(run(cfg).final_state)
        return float(np.max(np.abs(dec.w)))

    matched_100 = max_w(100, 1e-5)        # delta/dx^3 at the rate-10 value
    matched_200 = max_w(200, 1.25e-6)
    ratio = matched_100 / matched_200
    assert 0.5 <= ratio <= 2.0
    small_delta = max_w(200, 1.25e-7)     # 10x smaller delta at fixed N
    assert small_delta > matched_200
    _passline(10, "oscillation control",
              f"matched ratio {ratio:.2f}; control {small_delta:.3f} > "
              f"{matched_200:.3f}")


def test_c11_modified_equation_orders():
    quartic = SmoothField(
        u=lambda x: x**4 + x**2,
        d1=lambda x: 4.0 * x**3 + 2.0 * x,
        d2=lambda x: 12.0 * x**2 + 2.0,
        d3=lambda x: 24.0 * x,
        d4=lambda x: np.full_like(np.asarray(x, dtype=float), 24.0),
    )
    rep = modified_equation_residual(quartic, square_dispersion(), 1.0,
                                     (1 / 40, 1 / 80, 1 / 160), (0.2, 0.8))
    assert abs(rep.raw_order - 1.0) <= 0.2
    assert rep.corrected_order >= 1.8
    _passline(11, "modified-equation residual",
              f"raw order {rep.raw_order:.3f}, corrected {rep.corrected_order:.3f}")


def test_c12_two_phase_consistency():
    n, delta = 100, 1e-5
    g = grid_1n(n, origin=True)
    dt = _riemann_abs_dt(delta, g.dx)
    base = RunConfig(grid=g, profile=riemann_profile(), g=abs_dispersion(),
                     delta=delta, dt=dt, t_end=0.5)
    state = run(base).final_state
    dec = decompose_binary(state)

    # full-scheme continuation, decomposed at the checkpoints
    checkpoints = (0.02, 0.04, 0.06, 0.08, 0.10)
    cont = RunConfig(grid=g, profile=riemann_profile(), g=abs_dispersion(),
                     delta=delta, dt=dt, t_end=0.5 + 0.1,
                     snapshot_times=tuple(0.5 + c for c in checkpoints))
    full = {}
    for snap in run(cont).snapshots:
        full[round(snap.t - 0.5, 6)] = float(
            np.max(np.abs(decompose_binary(snap).w)))

    # two-phase integration; the origin nodes provide the inflow data for
    # the outgoing oscillation characteristics
    pin = np.abs(g.x) <= 1.5 * g.dx
    trace = integrate_two_phase(dec.v, dec.w, delta, g.dx, abs_dispersion(),
                                0.1, form="reduced_abs",
                                record_times=checkpoints, pin_mask=pin)
    worst = 0.0
    for t, mw in zip(trace.times, trace.max_w):
        ref = full[round(t, 6)]
        rel = abs(mw - ref) / ref
        worst = max(worst, rel)
        assert rel <= 0.25, f"t0+{t}: two-phase {mw:.3f} vs full {ref:.3f}"
    _passline(12, "two-phase consistency", f"worst tracking error {worst:.3f}")


def test_c13_quadrature_self_consistency():
    xs = np.linspace(-3.0, 3.0, 1201)
    fine = traveling_wave(1.0, 1.0, xs, n_quad=2048)
    half = traveling_wave(1.0, 1.0, xs, n_quad=1024)
    drift = float(np.max(np.abs(fine.u - half.u)))
    assert drift < 1e-6
    assert abs(float(fine.evaluate(0.0))) <= 1e-10
    sym = np.linspace(-2.0, 2.0, 401)
    anti = float(np.max(np.abs(fine.evaluate(-sym) + fine.evaluate(sym))))
    assert anti <= 1e-10
    _passline(13, "profile quadrature self-consistency",
              f"halving drift {drift:.2e}, antisymmetry {anti:.2e}")
