"""Implicitly restarted GSOAR eigensolver for quadratic eigenvalue problems."""

from ._core import (
    Eigenpair,
    QepError,
    QepProblem,
    RestartReport,
    RestartScheme,
    SolverConfig,
    SolveResult,
    SolveStatus,
    TransformMode,
    Variant,
    apply_shifts,
    example_config,
    example_problem,
    gen_example_41,
    gen_example_42,
    gen_example_43,
    relative_residual,
    restore_hessenberg,
    solve,
)

__all__ = [
    "Eigenpair",
    "QepError",
    "QepProblem",
    "RestartReport",
    "RestartScheme",
    "SolverConfig",
    "SolveResult",
    "SolveStatus",
    "TransformMode",
    "Variant",
    "apply_shifts",
    "example_config",
    "example_problem",
    "gen_example_41",
    "gen_example_42",
    "gen_example_43",
    "relative_residual",
    "restore_hessenberg",
    "solve",
]
