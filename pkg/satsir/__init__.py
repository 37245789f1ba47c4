# satsir: SIR model with saturated incidence and treatment (equilibria, bifurcations, optimal control)

from satsir.errors import SatSirError, ParameterError, ConfigError, NumericalError
from satsir.params import ModelParams, ControlPair, SirState
from satsir.dynamics import (
    incidence_rate,
    treatment_rate,
    state_rhs,
    population_rhs,
    invariant_region_contains,
    state_field,
)
from satsir.numerics import (
    TimeGrid,
    Trajectory,
    rk4_integrate_forward,
    rk4_integrate_backward,
    simpson_integral,
    trapezoid_integral,
)
from satsir.schedule import ControlSchedule
from satsir.equilibria import (
    Stability,
    EquilibriumKind,
    ExistenceCase,
    EndemicCoefficients,
    EquilibriumPoint,
    DfeStability,
    TranscriticalThreshold,
    BackwardBifurcation,
    BranchSample,
    basic_reproduction_number,
    reproduction_number,
    beta_for_r0,
    disease_free_equilibrium,
    disease_free_point,
    dfe_eigenvalues,
    dfe_stability,
    a11_coefficient,
    dulac_divergence,
    equilibrium_gap,
    endemic_coefficients,
    existence_case,
    endemic_equilibria,
    endemic_stability,
    endemic_stability_condition,
    endemic_eigenvalues,
    jacobian,
    characteristic_coefficients,
    transcritical_u2_threshold,
    backward_bifurcation_condition,
    slope_dI_dR0_at_one,
    find_r0_star,
    bifurcation_scan,
)
from satsir.strategy import Strategy
from satsir.simulation import simulate, cumulative_infected, efficiency_index
from satsir.optctl import (
    CostWeights,
    AdjointState,
    OcOptions,
    OcSolution,
    objective_value,
    hamiltonian,
    adjoint_rhs,
    solve_adjoint,
    optimal_u1_pointwise,
    optimal_u2_pointwise,
    solve_u2_cubic,
    pointwise_residuals,
    control_gradient,
    directional_derivative,
    fbs_solve,
)
from satsir.report import (
    StrategyReport,
    EfficiencyReport,
    EquilibriumReport,
    uncontrolled_baseline,
    run_strategy,
    efficiency_table,
    build_equilibrium_report,
)
from satsir.config import RunConfig, ScanRange, load_config, config_from_dict, bundled_configs
from satsir.export import (
    export_trajectory,
    export_simulation,
    export_equilibria,
    export_scan,
    export_optimization,
    export_efficiency,
)

__all__ = [
    # Errors
    "SatSirError",
    "ParameterError",
    "ConfigError",
    "NumericalError",
    # Model
    "ModelParams",
    "ControlPair",
    "SirState",
    "incidence_rate",
    "treatment_rate",
    "state_rhs",
    "population_rhs",
    "invariant_region_contains",
    "state_field",
    # Numerics
    "TimeGrid",
    "Trajectory",
    "rk4_integrate_forward",
    "rk4_integrate_backward",
    "simpson_integral",
    "trapezoid_integral",
    "ControlSchedule",
    # Equilibria
    "Stability",
    "EquilibriumKind",
    "ExistenceCase",
    "EndemicCoefficients",
    "EquilibriumPoint",
    "DfeStability",
    "TranscriticalThreshold",
    "BackwardBifurcation",
    "BranchSample",
    "basic_reproduction_number",
    "reproduction_number",
    "beta_for_r0",
    "disease_free_equilibrium",
    "disease_free_point",
    "dfe_eigenvalues",
    "dfe_stability",
    "a11_coefficient",
    "dulac_divergence",
    "equilibrium_gap",
    "endemic_coefficients",
    "existence_case",
    "endemic_equilibria",
    "endemic_stability",
    "endemic_stability_condition",
    "endemic_eigenvalues",
    "jacobian",
    "characteristic_coefficients",
    "transcritical_u2_threshold",
    "backward_bifurcation_condition",
    "slope_dI_dR0_at_one",
    "find_r0_star",
    "bifurcation_scan",
    # Optimal control
    "Strategy",
    "simulate",
    "cumulative_infected",
    "efficiency_index",
    "CostWeights",
    "AdjointState",
    "OcOptions",
    "OcSolution",
    "objective_value",
    "hamiltonian",
    "adjoint_rhs",
    "solve_adjoint",
    "optimal_u1_pointwise",
    "optimal_u2_pointwise",
    "solve_u2_cubic",
    "pointwise_residuals",
    "control_gradient",
    "directional_derivative",
    "fbs_solve",
    # Reports
    "StrategyReport",
    "EfficiencyReport",
    "EquilibriumReport",
    "uncontrolled_baseline",
    "run_strategy",
    "efficiency_table",
    "build_equilibrium_report",
    # Config
    "RunConfig",
    "ScanRange",
    "load_config",
    "config_from_dict",
    "bundled_configs",
    # Export
    "export_trajectory",
    "export_simulation",
    "export_equilibria",
    "export_scan",
    "export_optimization",
    "export_efficiency",
]
