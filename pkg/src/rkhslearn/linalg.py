"""Complex dense linear algebra: Gram assembly, Hermitian PD solves,
and a Wirtinger finite-difference gradient checker."""

import numpy as np
from scipy.linalg import solve_triangular

from .validation import as_complex_vector

PIVOT_RTOL = 1e-14


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """Cholesky pivot dropped below the positive-definiteness threshold."""

    def __init__(self, pivot_index, pivot_value):
        self.pivot_index = pivot_index
        self.pivot_value = pivot_value
        super().__init__(
            f"matrix is not positive definite: pivot {pivot_index} = {pivot_value:.6g}"
        )


def gram_matrix(kernel, points):
    """Gram matrix K[k, j] = kernel(points[k], points[j]).

    Only the upper triangle is evaluated; the lower triangle is the
    mirror conjugate, so Hermitian symmetry holds exactly as stored and
    the diagonal is exactly real.
    """
    z = as_complex_vector(points, "points")
    n = z.size
    iu, ju = np.triu_indices(n)
    vals = kernel.evaluate_many(z[iu], z[ju])
    K = np.zeros((n, n), dtype=np.complex128)
    K[iu, ju] = vals
    K[ju, iu] = np.conj(vals)
    d = np.diag_indices(n)
    K[d] = K[d].real
    return K


def cholesky_factor(A, shift=0.0):
    """Lower-triangular L with A + shift*I = L L*.

    Fails on any pivot <= PIVOT_RTOL * max shifted diagonal; strict
    positive definiteness is part of the contract, so no jitter is added.
    """
    A = np.asarray(A, dtype=np.complex128)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    diag = A.diagonal().real + shift
    tol = PIVOT_RTOL * max(np.max(diag), 0.0) if n else 0.0
    L = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        row = L[j, :j]
        pivot = diag[j] - np.vdot(row, row).real
        if pivot <= tol:
            raise NotPositiveDefiniteError(j, pivot)
        L[j, j] = np.sqrt(pivot)
        if j + 1 < n:
            L[j + 1:, j] = (A[j + 1:, j] - L[j + 1:, :j] @ np.conj(row)) / L[j, j]
    return L


def condition_estimate(L):
    """Cheap condition proxy: squared ratio of extreme Cholesky diagonals."""
    d = L.diagonal().real
    if d.size == 0:
        return 1.0
    return float((d.max() / d.min()) ** 2)


def hermitian_solve(A, shift, b):
    """Solve (A + shift*I) x = b for Hermitian positive definite A + shift*I."""
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    b = as_complex_vector(b, "b")
    L = cholesky_factor(A, shift)
    y = solve_triangular(L, b, lower=True)
    return solve_triangular(L.conj().T, y, lower=False)


def quadratic_form_gradient(A, c, z):
    """Analytic complex gradient of J(z) = c* z + z* A z for Hermitian A.

    Gradient rules for the Wirtinger operator grad_z = (d/dz_1, ..., d/dz_n):
    grad_z(c* z) = conj(c) and grad_z(z* A z) = conj(A) conj(z).
    """
    A = np.asarray(A, dtype=np.complex128)
    c = as_complex_vector(c, "c")
    z = as_complex_vector(z, "z")
    return np.conj(c) + np.conj(A) @ np.conj(z)


def wirtinger_gradient_check(A, c, z0, step=1e-6):
    """Max abs gap between the analytic gradient of c* z + z* A z and a
    central finite-difference Wirtinger derivative at z0."""
    if not (1e-8 <= step <= 1e-3):
        raise ValueError("step must lie in [1e-8, 1e-3]")
    A = np.asarray(A, dtype=np.complex128)
    c = as_complex_vector(c, "c")
    z0 = as_complex_vector(z0, "z0")

    def J(z):
        return np.vdot(c, z) + np.vdot(z, A @ z)

    numeric = np.zeros(z0.size, dtype=np.complex128)
    for k in range(z0.size):
        e = np.zeros(z0.size, dtype=np.complex128)
        e[k] = 1.0
        dx = (J(z0 + step * e) - J(z0 - step * e)) / (2 * step)
        dy = (J(z0 + 1j * step * e) - J(z0 - 1j * step * e)) / (2 * step)
        numeric[k] = 0.5 * (dx - 1j * dy)
    analytic = quadratic_form_gradient(A, c, z0)
    return float(np.max(np.abs(analytic - numeric)))
