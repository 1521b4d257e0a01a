"""Complex kernel ridge regression in reproducing kernel Hilbert spaces,
reverse learning, superoscillation generators, closed-form output data with
matrix oracles, and free-particle Schrodinger evolution."""

from .kernels import (
    GAMMA_DEFAULT,
    KernelDomainError,
    KernelSpec,
    SeriesConvergenceError,
    fock_kernel,
    mittag_leffler_kernel,
    rbf_kernel,
    szego_kernel,
    touchard_kernel,
)
from .linalg import (
    NotPositiveDefiniteError,
    gram_matrix,
    hermitian_solve,
    wirtinger_gradient_check,
)
from .regression import (
    CoefficientExpansion,
    ComplexKernelRidge,
    LabeledDataset,
    empirical_risk,
    evaluate,
    fit,
    reverse_outputs,
    rkhs_norm_sq,
)
from .superosc import (
    SuperoscParams,
    TruncatedSeries,
    classical_params,
    classical_product_form,
    generate,
    generate_series,
    product_taylor_series,
    supershift_gap,
    touchard_operator,
)
from .closed_forms import BlaschkeProduct, OutputFormulaReport, verify_family
from .evolution import EvolutionField, fourier_propagate, phi_free, psi_free

__version__ = "0.1.0"

__all__ = [
    "GAMMA_DEFAULT",
    "BlaschkeProduct",
    "CoefficientExpansion",
    "ComplexKernelRidge",
    "EvolutionField",
    "KernelDomainError",
    "KernelSpec",
    "LabeledDataset",
    "NotPositiveDefiniteError",
    "OutputFormulaReport",
    "SeriesConvergenceError",
    "SuperoscParams",
    "TruncatedSeries",
    "classical_params",
    "classical_product_form",
    "empirical_risk",
    "evaluate",
    "fit",
    "fock_kernel",
    "fourier_propagate",
    "generate",
    "generate_series",
    "gram_matrix",
    "product_taylor_series",
    "hermitian_solve",
    "mittag_leffler_kernel",
    "phi_free",
    "psi_free",
    "rbf_kernel",
    "reverse_outputs",
    "rkhs_norm_sq",
    "supershift_gap",
    "szego_kernel",
    "touchard_kernel",
    "touchard_operator",
    "verify_family",
    "wirtinger_gradient_check",
]
