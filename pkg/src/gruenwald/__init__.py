"""Quadratic-node interpolation series at Bessel zeros and in de Branges
spaces: generating functions and their zero tables, the truncated series
engine, homogeneous-weight convergence experiments, Hermite-Biehler kernels,
and the command-line experiment runner."""

from .errors import (
    DomainError,
    GruenwaldError,
    HypothesisError,
    MissingSampleError,
    TypeEstimateError,
    UsageError,
    WitnessNotFoundError,
    ZeroFindingError,
)
from .special import (
    Order,
    ToleranceConfig,
    TOLERANCES,
    ZeroTable,
    a_nu,
    a_nu_prime,
    a_nu_second,
    b_nu,
    b_nu_prime,
    b_nu_second,
    bessel_j,
    magnitude_profile,
    zero_table,
)
from .series import (
    DEFAULT_POLICY,
    GruenwaldKernel,
    SeriesEvaluation,
    TruncationPolicy,
    estimate_type,
    eval_series,
    fejer_kernel,
    fejer_operator,
)
from .homogeneous import (
    HomogeneousWeight,
    MinorantSeries,
    ProbeWitness,
    SupErrorResult,
    TargetFunction,
    decomposition_check,
    gruenwald_G,
    gruenwald_H,
    interpolation_kernel,
    lemma_error_shape,
    minorant_L,
    sup_error,
    wrong_operator_probe,
)
from .debranges import (
    HermiteBiehler,
    PhaseData,
    SinhExample,
    cos_case_probe,
    dilation_failure,
    example_sinh,
    gruenwald_E,
    kernel_K,
    node_set,
    phase_derivative,
    theorem2_convergence,
    verify_hermite_biehler,
)
from .reports import (
    ConvergenceReport,
    ExperimentConfig,
    ReportRow,
)
from .harness import (
    cli_converge,
    cli_eval,
    cli_kernel_check,
    cli_probe,
    cli_zeros,
    make_grid,
    make_target,
    run_converge,
    target_callable,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "GruenwaldError",
    "HypothesisError",
    "MissingSampleError",
    "TypeEstimateError",
    "UsageError",
    "WitnessNotFoundError",
    "ZeroFindingError",
    "Order",
    "ToleranceConfig",
    "TOLERANCES",
    "ZeroTable",
    "a_nu",
    "a_nu_prime",
    "a_nu_second",
    "b_nu",
    "b_nu_prime",
    "b_nu_second",
    "bessel_j",
    "magnitude_profile",
    "zero_table",
    "DEFAULT_POLICY",
    "GruenwaldKernel",
    "SeriesEvaluation",
    "TruncationPolicy",
    "estimate_type",
    "eval_series",
    "fejer_kernel",
    "fejer_operator",
    "HomogeneousWeight",
    "MinorantSeries",
    "ProbeWitness",
    "SupErrorResult",
    "TargetFunction",
    "decomposition_check",
    "gruenwald_G",
    "gruenwald_H",
    "interpolation_kernel",
    "lemma_error_shape",
    "minorant_L",
    "sup_error",
    "wrong_operator_probe",
    "HermiteBiehler",
    "PhaseData",
    "SinhExample",
    "cos_case_probe",
    "dilation_failure",
    "example_sinh",
    "gruenwald_E",
    "kernel_K",
    "node_set",
    "phase_derivative",
    "theorem2_convergence",
    "verify_hermite_biehler",
    "ConvergenceReport",
    "ExperimentConfig",
    "ReportRow",
    "cli_converge",
    "cli_eval",
    "cli_kernel_check",
    "cli_probe",
    "cli_zeros",
    "make_grid",
    "make_target",
    "run_converge",
    "target_callable",
    "__version__",
]
