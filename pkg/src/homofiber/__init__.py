"""Homogeneous fibrations of compact matrix groups.

Build reductive splits from subalgebra chains, put diagonal invariant
metrics and a central magnetic field on them, evaluate the closed-form
charged-particle trajectories as products of two matrix exponentials,
and verify the governing equation independently through weak-form
residuals and conservation checks.
"""

from .catalog import (
    CatalogEntry,
    Model,
    catalog_names,
    export_entry,
    get_entry,
    hopf,
    kahler_s2,
    lie_group,
    load_custom,
    make_system,
    twistor_su3,
)
from .field import (
    ChargedSystem,
    DiagonalMetric,
    apply_I0,
    charged_system,
    em_two_form,
    metric_inner,
    metric_norm,
)
from .linalg import (
    DimensionError,
    DomainError,
    StructureError,
    Subspace,
    adjoint,
    bnorm,
    bracket,
    check_skew_hermitian,
    check_unitary,
    expm,
    inner_b,
    orthonormalize,
    project,
    span_residual,
)
from .motion import (
    ClosedFormMotion,
    TrajectorySample,
    body_velocity_numeric,
    build_motion,
    evaluate,
    perturb_motion,
    sample_trajectory,
)
from .oracle import (
    ResidualConfig,
    ResidualReport,
    algebraic_identity_check,
    conservation_sweep,
    convergence_ratios,
    great_circle_check,
    koszul_residual,
    lambda_collapse_check,
    velocity_agreement_sweep,
    magnetic_circle_check,
    metric_probe_basis,
    module_invariance_sweep,
    residual_sweep,
)
from .split import (
    ReductiveSplit,
    SubalgebraChain,
    ValidationReport,
    build_custom_split,
    build_split,
    center_basis,
    chain,
    structure_report,
    validate_pair,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "ChargedSystem",
    "ClosedFormMotion",
    "DiagonalMetric",
    "DimensionError",
    "DomainError",
    "Model",
    "ResidualConfig",
    "ResidualReport",
    "ReductiveSplit",
    "StructureError",
    "SubalgebraChain",
    "Subspace",
    "TrajectorySample",
    "ValidationReport",
    "adjoint",
    "algebraic_identity_check",
    "apply_I0",
    "bnorm",
    "body_velocity_numeric",
    "bracket",
    "build_custom_split",
    "build_motion",
    "build_split",
    "catalog_names",
    "center_basis",
    "chain",
    "charged_system",
    "check_skew_hermitian",
    "check_unitary",
    "conservation_sweep",
    "convergence_ratios",
    "em_two_form",
    "evaluate",
    "expm",
    "export_entry",
    "get_entry",
    "great_circle_check",
    "hopf",
    "inner_b",
    "kahler_s2",
    "koszul_residual",
    "lambda_collapse_check",
    "velocity_agreement_sweep",
    "lie_group",
    "load_custom",
    "magnetic_circle_check",
    "make_system",
    "metric_inner",
    "metric_norm",
    "metric_probe_basis",
    "module_invariance_sweep",
    "orthonormalize",
    "perturb_motion",
    "project",
    "residual_sweep",
    "sample_trajectory",
    "span_residual",
    "structure_report",
    "twistor_su3",
    "validate_pair",
]
