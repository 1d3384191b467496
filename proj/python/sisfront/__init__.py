"""Traveling fronts of the diffusive SIS model with saturating incidence."""

from ._sisfront import (
    ModelParams,
    SisfrontError,
    case2_eigs_A,
    case2_eigs_B,
    case2_reduced_rhs,
    case3_eigs_A,
    case3_eigs_B,
    case3_min_speed,
    case3_reduced_rhs,
    case3_slope_interval,
    equilibria,
    invasion_rate,
    params,
    run_cli,
    shoot,
    simulate_front_speed,
    trap_check_case2,
    trap_check_case3,
    wedge_rotation,
)

__all__ = [
    "ModelParams",
    "SisfrontError",
    "case2_eigs_A",
    "case2_eigs_B",
    "case2_reduced_rhs",
    "case3_eigs_A",
    "case3_eigs_B",
    "case3_min_speed",
    "case3_reduced_rhs",
    "case3_slope_interval",
    "equilibria",
    "invasion_rate",
    "params",
    "run_cli",
    "shoot",
    "simulate_front_speed",
    "trap_check_case2",
    "trap_check_case3",
    "wedge_rotation",
]
