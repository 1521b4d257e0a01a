import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rkhslearn.kernels import KernelSpec
from rkhslearn.linalg import (
    NotPositiveDefiniteError,
    cholesky_factor,
    condition_estimate,
    gram_matrix,
    hermitian_solve,
    quadratic_form_gradient,
    wirtinger_gradient_check,
)


def random_hpd(rng, n, shift=1.0):
    B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return B @ B.conj().T + shift * np.eye(n)


class TestGramMatrix:
    def test_single_point_fock(self):
        K = gram_matrix(KernelSpec("fock"), [0.0])
        assert_allclose(K, [[1.0]], rtol=0, atol=0)

    def test_fock_classical_two_points(self):
        # centers -i h with h = (1, -1): B(z_k, z_j) = e^{h_k h_j}
        K = gram_matrix(KernelSpec("fock"), [-1.0j, 1.0j])
        want = [[math.e, math.exp(-1)], [math.exp(-1), math.e]]
        assert_allclose(K, want, rtol=1e-15)

    def test_rbf_gram_from_fock_relation(self):
        # K_sqrt2(-i h_k, -i h_j) = e^{(h_k + h_j)^2 / 2} with h = (1, 0)
        K = gram_matrix(KernelSpec("rbf"), [-1.0j, 0.0])
        want = [[math.exp(2.0), math.exp(0.5)], [math.exp(0.5), 1.0]]
        assert_allclose(K, want, rtol=1e-15)

    def test_hermitian_exactly_as_stored(self):
        rng = np.random.default_rng(31)
        pts = rng.standard_normal(12) + 1j * rng.standard_normal(12)
        K = gram_matrix(KernelSpec("fock"), pts)
        assert np.array_equal(K, K.conj().T)
        assert np.all(np.diag(K).imag == 0.0)

    def test_nonfinite_input_rejected(self):
        with pytest.raises(ValueError):
            gram_matrix(KernelSpec("fock"), [0.0, np.inf])


class TestCholesky:
    def test_identity(self):
        L = cholesky_factor(np.eye(3, dtype=complex))
        assert_allclose(L, np.eye(3), rtol=0, atol=0)

    def test_random_hpd_factorization(self):
        rng = np.random.default_rng(37)
        for n in (1, 4, 9, 20):
            A = random_hpd(rng, n)
            L = cholesky_factor(A)
            assert_allclose(L @ L.conj().T, A, rtol=1e-12, atol=1e-12)
            assert np.allclose(np.triu(L, 1), 0.0)

    def test_shift_applied(self):
        A = np.diag([2.0, 3.0]).astype(complex)
        L = cholesky_factor(A, shift=1.0)
        assert_allclose(L @ L.conj().T, np.diag([3.0, 4.0]), rtol=1e-15)

    def test_not_positive_definite_reports_pivot(self):
        # rank-one matrix: second pivot collapses to zero
        A = np.ones((2, 2), dtype=complex)
        with pytest.raises(NotPositiveDefiniteError) as exc:
            cholesky_factor(A)
        assert exc.value.pivot_index == 1
        assert exc.value.pivot_value <= 0.0 + 1e-14

    def test_indefinite_rejected(self):
        A = np.diag([1.0, -1.0]).astype(complex)
        with pytest.raises(NotPositiveDefiniteError):
            cholesky_factor(A)


class TestHermitianSolve:
    def test_identity(self):
        x = hermitian_solve(np.eye(2, dtype=complex), 0.0, [1.0, 1.0j])
        assert_allclose(x, [1.0, 1.0j], rtol=1e-15)

    def test_diagonal_with_shift(self):
        x = hermitian_solve(np.diag([2.0, 3.0]).astype(complex), 1.0, [3.0, 8.0])
        assert_allclose(x, [1.0, 2.0], rtol=1e-15)

    def test_random_residual(self):
        rng = np.random.default_rng(41)
        A = random_hpd(rng, 8)
        b = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        x = hermitian_solve(A, 0.5, b)
        resid = np.linalg.norm((A + 0.5 * np.eye(8)) @ x - b) / np.linalg.norm(b)
        assert resid < 1e-12

    def test_multiply_back_large(self):
        rng = np.random.default_rng(43)
        for n in (64, 256):
            A = random_hpd(rng, n)
            b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            x = hermitian_solve(A, 0.0, b)
            assert np.linalg.norm(A @ x - b) / np.linalg.norm(b) <= 1e-10

    def test_negative_shift_rejected(self):
        with pytest.raises(ValueError):
            hermitian_solve(np.eye(2, dtype=complex), -1.0, [1.0, 2.0])


class TestConditionEstimate:
    def test_identity_is_one(self):
        assert condition_estimate(np.eye(4, dtype=complex)) == 1.0

    def test_tracks_diagonal_spread(self):
        L = np.diag([10.0, 1.0]).astype(complex)
        assert condition_estimate(L) == pytest.approx(100.0)


class TestWirtingerGradient:
    def test_linear_rule(self):
        # J(z) = c* z, gradient conj(c)
        c = np.array([1.0, 0.0], dtype=complex)
        A = np.zeros((2, 2), dtype=complex)
        grad = quadratic_form_gradient(A, c, np.array([0.3 + 0.1j, -1.0j]))
        assert_allclose(grad, np.conj(c), rtol=0, atol=0)
        assert wirtinger_gradient_check(A, c, [0.3 + 0.1j, -1.0j]) < 1e-6

    def test_quadratic_rule_identity_matrix(self):
        # J(z) = z* z, gradient conj(z)
        z0 = np.array([1.0 + 1.0j, 0.0])
        grad = quadratic_form_gradient(np.eye(2, dtype=complex), np.zeros(2), z0)
        assert_allclose(grad, np.conj(z0), rtol=0, atol=0)
        assert wirtinger_gradient_check(np.eye(2, dtype=complex), np.zeros(2), z0) < 1e-6

    def test_random_hermitian(self):
        rng = np.random.default_rng(47)
        for _ in range(5):
            A = random_hpd(rng, 3, shift=0.0)
            c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            z0 = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            assert wirtinger_gradient_check(A, c, z0) < 1e-6

    def test_step_range_enforced(self):
        with pytest.raises(ValueError):
            wirtinger_gradient_check(np.eye(2, dtype=complex), np.zeros(2), np.zeros(2), step=1.0)
