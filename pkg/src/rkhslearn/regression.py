"""Complex kernel ridge regression and reverse learning.

Forward: given data (z_j, w_j) and lambda > 0, the regularized minimizer is
f(z) = sum_j alpha_j K(z, z_j) with (K + lambda*I) alpha = w. Reverse: given
a target expansion alpha at fixed centers, the data for which it is the
exact minimizer has outputs w = (K + lambda*I) alpha.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .kernels import GAMMA_DEFAULT, KernelSpec
from .linalg import condition_estimate, cholesky_factor, gram_matrix, hermitian_solve
from .validation import as_complex_array, as_complex_vector, check_distinct, check_positive

CONDITION_WARN_THRESHOLD = 1e12


class ConditioningWarning(UserWarning):
    """Gram system condition estimate exceeded the warning threshold."""


@dataclass(frozen=True)
class LabeledDataset:
    """Paired inputs z_j and outputs w_j with ridge parameter lam > 0."""

    inputs: np.ndarray
    outputs: np.ndarray
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "inputs", check_distinct(self.inputs, "inputs"))
        object.__setattr__(self, "outputs", as_complex_vector(self.outputs, "outputs"))
        object.__setattr__(self, "lam", check_positive(self.lam, "lambda"))
        if self.inputs.size != self.outputs.size:
            raise ValueError("inputs and outputs must have equal length")


@dataclass(frozen=True)
class CoefficientExpansion:
    """f(z) = sum_j coefficients[j] * K(z, centers[j])."""

    centers: np.ndarray
    coefficients: np.ndarray
    kernel: KernelSpec

    def __post_init__(self):
        object.__setattr__(self, "centers", as_complex_vector(self.centers, "centers"))
        object.__setattr__(
            self, "coefficients", as_complex_vector(self.coefficients, "coefficients")
        )
        if self.centers.size != self.coefficients.size:
            raise ValueError("centers and coefficients must have equal length")
        self.kernel.check_domain(self.centers)

    def __call__(self, z):
        return evaluate(self, z)


def fit(data, kernel):
    """Solve (K + lambda*I) alpha = w; returns the fitted expansion."""
    K = gram_matrix(kernel, data.inputs)
    cond = condition_estimate(cholesky_factor(K, data.lam))
    if cond > CONDITION_WARN_THRESHOLD:
        warnings.warn(
            f"Gram system condition estimate {cond:.3g} exceeds "
            f"{CONDITION_WARN_THRESHOLD:.0e}; coefficients may be inaccurate",
            ConditioningWarning,
        )
    alpha = hermitian_solve(K, data.lam, data.outputs)
    return CoefficientExpansion(centers=data.inputs, coefficients=alpha, kernel=kernel)


def reverse_outputs(target, lam):
    """Outputs w = (K + lambda*I) alpha for which `target` is the minimizer."""
    lam = check_positive(lam, "lambda")
    check_distinct(target.centers, "centers")
    K = gram_matrix(target.kernel, target.centers)
    return K @ target.coefficients + lam * target.coefficients


def evaluate(expansion, z):
    """Evaluate the kernel expansion at z (scalar or array)."""
    z = as_complex_array(z, "z")
    if expansion.centers.size == 0:
        out = np.zeros(z.shape, dtype=np.complex128)
        return complex(out) if z.ndim == 0 else out
    zz = z[..., np.newaxis]
    vals = expansion.kernel.evaluate_many(zz, expansion.centers)
    out = vals @ expansion.coefficients
    return complex(out) if z.ndim == 0 else out


def empirical_risk(data, expansion):
    """J(alpha) = (w - K alpha)*(w - K alpha) + lambda * alpha* K alpha.

    Requires the expansion centers to coincide with the data inputs so the
    Gram quadratic form applies.
    """
    if data.inputs.size != expansion.centers.size or np.any(
        data.inputs != expansion.centers
    ):
        raise ValueError("expansion centers must equal the dataset inputs")
    K = gram_matrix(expansion.kernel, expansion.centers)
    alpha = expansion.coefficients
    resid = data.outputs - K @ alpha
    return float(np.vdot(resid, resid).real + data.lam * np.vdot(alpha, K @ alpha).real)


def rkhs_norm_sq(expansion, return_raw=False):
    """Squared RKHS norm alpha* K alpha, clamped below at zero.

    The raw (unclamped) value is available via return_raw for diagnosing
    round-off on near-singular Gram matrices.
    """
    check_distinct(expansion.centers, "centers")
    K = gram_matrix(expansion.kernel, expansion.centers)
    raw = float(np.vdot(expansion.coefficients, K @ expansion.coefficients).real)
    clamped = max(raw, 0.0)
    return (clamped, raw) if return_raw else clamped


class ComplexKernelRidge(BaseEstimator):
    """Kernel ridge regression over complex inputs and outputs.

    Parameters mirror KernelSpec: family selects the kernel, lam the ridge
    strength. After fit, `dual_coef_` holds alpha and `predict` evaluates
    sum_j alpha_j K(z, z_j).
    """

    def __init__(self, family="fock", lam=1.0, gamma=GAMMA_DEFAULT, q=1.0, p=0):
        self.family = family
        self.lam = lam
        self.gamma = gamma
        self.q = q
        self.p = p

    def _kernel_spec(self):
        return KernelSpec(family=self.family, gamma=self.gamma, q=self.q, p=int(self.p))

    def fit(self, z, w):
        data = LabeledDataset(inputs=z, outputs=w, lam=self.lam)
        self.expansion_ = fit(data, self._kernel_spec())
        self.centers_ = self.expansion_.centers
        self.dual_coef_ = self.expansion_.coefficients
        return self

    def predict(self, z):
        if not hasattr(self, "expansion_"):
            raise RuntimeError("estimator is not fitted")
        return evaluate(self.expansion_, z)

    def reverse_outputs(self, centers, coefficients):
        """Dataset outputs for which the given expansion is the minimizer."""
        target = CoefficientExpansion(
            centers=centers, coefficients=coefficients, kernel=self._kernel_spec()
        )
        return reverse_outputs(target, self.lam)
