"""Solvers and experiments for u_t + f(u)_x - delta*g(u_xx)_x = 0 with a
convex transport flux f and a concave, even dispersion flux g."""

from .analysis import (AnalysisError, EnvelopeFit, EnvelopePrediction,
                       ModifiedEquationReport, OscillationDecomposition,
                       OslcReport, RippleMetrics, SmoothField,
                       TravelingWaveProfile, TwoPhaseTrace, attractor_distance,
                       check_oslc, decompose_binary, envelope_prediction,
                       fit_envelope, fit_envelope_rate, integrate_two_phase,
                       modified_equation_residual, reconstruct_binary,
                       ripple_metrics, traveling_wave, two_phase_rhs)
from .fluxes import (ConcaveDispersionFlux, ConvexFlux, DispersionKind,
                     abs_dispersion, burgers, engquist_osher_flux, godunov_flux,
                     limited_interface_flux, limited_slopes, linear_flux,
                     square_dispersion)
from .grid import (BoundaryRule, ConfigurationError, Grid1D, InitialProfile,
                   ProfileKind, StateField, custom_profile, exponential_profile,
                   extend_with_ghosts, forward_slope_max, make_grid,
                   riemann_profile, sample_profile, second_difference)
from .stepping import (BlowUpError, DispersionStrength, RunConfig, SchemeKind,
                       Trajectory, entropy_reference, mol_rhs, run,
                       run_to_steady, step_fully_discrete,
                       step_godunov_first_order, step_limited_godunov,
                       step_mol_rk4, suggest_dt)

__version__ = "0.1.0"
