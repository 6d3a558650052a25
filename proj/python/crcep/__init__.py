"""Circulant rational covariance extension.

Python bindings for the C++ core: quasi-Newton covariance-extension solvers
on the discrete circle and the integer line (scalar and vector data), and the
banded two-sweep fixed-interval smoother built on top of them.
"""

from ._crcep import (
    ConvergenceError,
    DataError,
    DegenerateScalingError,
    DimensionError,
    Error,
    FactorizationError,
    InfeasibleAtNError,
    LineArmaModel,
    ObservationChannel,
    PeriodicArmaModel,
    SingularityError,
    SmoothingResult,
    SolveReport,
    SolveStatus,
    SolverConfig,
    StateSpaceModel,
    VectorPeriodicArmaModel,
    block_toeplitz_pd,
    direct_smooth_oracle,
    fixed_point_residual,
    gradient,
    is_schur,
    line_lags,
    lyapunov_lags,
    matrix_schur_factor,
    objective,
    schur_factor,
    simulate_trajectory,
    smooth,
    solve_discrete_lyapunov,
    solve_line,
    solve_periodic,
    solve_vector,
    spectrum_lags,
    toeplitz_pd,
    vector_model_lags,
    verify_moments,
)

__all__ = [
    "ConvergenceError",
    "DataError",
    "DegenerateScalingError",
    "DimensionError",
    "Error",
    "FactorizationError",
    "InfeasibleAtNError",
    "LineArmaModel",
    "ObservationChannel",
    "PeriodicArmaModel",
    "SingularityError",
    "SmoothingResult",
    "SolveReport",
    "SolveStatus",
    "SolverConfig",
    "StateSpaceModel",
    "VectorPeriodicArmaModel",
    "block_toeplitz_pd",
    "direct_smooth_oracle",
    "fixed_point_residual",
    "gradient",
    "is_schur",
    "line_lags",
    "lyapunov_lags",
    "matrix_schur_factor",
    "objective",
    "schur_factor",
    "simulate_trajectory",
    "smooth",
    "solve_discrete_lyapunov",
    "solve_line",
    "solve_periodic",
    "solve_vector",
    "spectrum_lags",
    "toeplitz_pd",
    "vector_model_lags",
    "verify_moments",
]
