"""Traveling fronts of the unrest/tension reaction-diffusion system."""

from ._core import (
    DomainError,
    FieldState,
    GridConfig,
    InitialData,
    ModelError,
    ModelParams,
    NoFront,
    NoPositiveEquilibrium,
    SimulationResult,
    StepOptions,
    concavity_scan,
    eigen_A,
    eigen_B,
    equilibrium_A,
    equilibrium_B,
    f_kpp,
    fprime_ubar,
    grid_x,
    kinetics,
    kpp_3d_eigenvalues,
    kpp_region_check,
    kpp_verdict,
    measure_front_speed,
    min_speed,
    nullcline_u_of_v,
    omega_thresholds,
    p_threshold,
    partials_at_B,
    reduced_rhs,
    rotation_angle,
    shoot_heteroclinic,
    sigma,
    simulate,
    simulate_from_state,
    simulate_scalar,
    solve_ubar,
    stable_eigenvector_A,
    stationarity_residual,
    vbar,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FieldState",
    "GridConfig",
    "InitialData",
    "ModelError",
    "ModelParams",
    "NoFront",
    "NoPositiveEquilibrium",
    "SimulationResult",
    "StepOptions",
    "concavity_scan",
    "eigen_A",
    "eigen_B",
    "equilibrium_A",
    "equilibrium_B",
    "f_kpp",
    "fprime_ubar",
    "grid_x",
    "kinetics",
    "kpp_3d_eigenvalues",
    "kpp_region_check",
    "kpp_verdict",
    "measure_front_speed",
    "min_speed",
    "nullcline_u_of_v",
    "omega_thresholds",
    "p_threshold",
    "partials_at_B",
    "reduced_rhs",
    "rotation_angle",
    "shoot_heteroclinic",
    "sigma",
    "simulate",
    "simulate_from_state",
    "simulate_scalar",
    "solve_ubar",
    "stable_eigenvector_A",
    "stationarity_residual",
    "vbar",
]
