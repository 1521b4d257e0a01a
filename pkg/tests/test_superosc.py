import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rkhslearn.superosc import (
    SuperoscParams,
    TruncatedSeries,
    binomial_coefficient,
    classical_params,
    classical_product_form,
    classical_taylor_series,
    generate,
    generate_series,
    product_taylor_series,
    supershift_gap,
    supershift_limit,
    touchard_operator,
)


class TestClassicalParams:
    def test_hand_values_n1(self):
        params = classical_params(1, 2.0)
        assert_allclose(params.frequencies, [1.0, -1.0], rtol=0, atol=0)
        assert_allclose(params.coefficients, [1.5, -0.5], rtol=0, atol=0)

    def test_a_one_degenerates(self):
        params = classical_params(5, 1.0)
        want = np.zeros(6)
        want[0] = 1.0
        assert_allclose(params.coefficients, want, rtol=0, atol=0)

    def test_a_one_large_n(self):
        params = classical_params(100, 1.0)
        assert params.coefficients[0] == 1.0
        assert np.all(params.coefficients[1:] == 0.0)

    def test_coefficients_sum_to_one(self):
        # sum_j C_j(n, a) = F_n(0, a) = 1; the alternating sum is conditioned
        # like sum_j |C_j| = a^n, so the tolerance carries that scale
        for n in (1, 5, 20, 40, 60, 80, 100):
            c = classical_params(n, 2.0).coefficients
            scale = np.sum(np.abs(c))
            assert abs(np.sum(c) - 1.0) <= 1e-13 * scale

    def test_log_space_matches_exact_binomials(self):
        # the n > 60 log-space path against exact integer arithmetic
        n, a = 100, 2.0
        coeffs = classical_params(n, a).coefficients.real
        for j in (0, 3, 50, 97, 100):
            exact = float(math.comb(n, j) * 3 ** (n - j) * (-1) ** j) / 2.0**n
            assert_allclose(coeffs[j], exact, rtol=1e-12)

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            classical_params(0, 2.0)


class TestSuperoscParams:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            SuperoscParams(n=2, a=2.0, frequencies=[1.0, 0.0], coefficients=[1, 1, 1])

    def test_frequency_bound(self):
        with pytest.raises(ValueError):
            SuperoscParams(n=1, a=2.0, frequencies=[1.5, 0.0], coefficients=[1.0, 0.0])

    def test_centers(self):
        params = classical_params(2, 2.0)
        assert_allclose(params.centers, -1j * params.frequencies, rtol=0, atol=0)


class TestBinomialCoefficient:
    def test_exact_small(self):
        for n in (0, 10, 60):
            for j in range(0, n + 1, max(1, n // 6)):
                assert binomial_coefficient(n, j) == float(math.comb(n, j))

    def test_log_space_large(self):
        for n, j in ((61, 30), (100, 50), (200, 13)):
            assert_allclose(binomial_coefficient(n, j), float(math.comb(n, j)), rtol=1e-12)


class TestProductForm:
    def test_at_zero(self):
        for n in (1, 7, 30):
            assert classical_product_form(0.0, n, 2.0) == 1.0

    def test_hand_value(self):
        assert_allclose(classical_product_form(math.pi / 2, 1, 2.0), 2.0j,
                        rtol=0, atol=1e-15)

    def test_equals_kernel_sum_small_n(self):
        # plain relative comparison where binary64 cancellation is negligible
        x = np.linspace(-3.0, 3.0, 20)
        for a, sizes in ((1.5, (1, 4, 8, 12)), (2.0, (1, 4, 8, 12)), (4.0, (1, 4, 6))):
            for n in sizes:
                params = classical_params(n, a)
                lhs = classical_product_form(x, n, a)
                rhs = generate("fock", params, x.astype(complex))
                assert_allclose(rhs, lhs, rtol=1e-11, atol=1e-11)

    def test_equals_kernel_sum_conditioned_scale(self):
        # for larger n the literal sum rounds at the a^n term scale;
        # measure the residual against that scale
        x = np.linspace(-3.0, 3.0, 20)
        for a in (1.5, 2.0, 4.0):
            for n in (20, 35, 50):
                params = classical_params(n, a)
                lhs = classical_product_form(x, n, a)
                rhs = generate("fock", params, x.astype(complex))
                scale = np.sum(np.abs(params.coefficients))
                assert np.max(np.abs(lhs - rhs)) <= 1e-11 * scale


class TestGenerate:
    def test_rbf_first_factorization(self):
        # f_n(z) = e^{z^2/2} r_n(z), plain tolerance at moderate n
        rng = np.random.default_rng(97)
        for n in (2, 6, 12):
            params = classical_params(n, 2.0)
            z = rng.uniform(-2, 2, 12) + 1j * rng.uniform(-2, 2, 12)
            f = generate("fock", params, z)
            r = generate("rbf-first", params, z)
            assert_allclose(f, np.exp(z**2 / 2) * r, rtol=1e-10, atol=1e-10)

    def test_rbf_first_factorization_n30(self):
        rng = np.random.default_rng(98)
        params = classical_params(30, 2.0)
        z = rng.uniform(-2, 2, 12) + 1j * rng.uniform(-2, 2, 12)
        f = generate("fock", params, z)
        r = generate("rbf-second", params, z)  # exercised below separately
        lhs = f
        rhs = np.exp(z**2 / 2) * generate("rbf-first", params, z)
        scale = np.sum(np.abs(params.coefficients)) * np.exp(np.max(np.abs(z.imag)))
        assert np.max(np.abs(lhs - rhs)) <= 1e-10 * scale
        assert np.all(np.isfinite(r))

    def test_touchard_p0_equals_fock(self):
        params = classical_params(10, 2.0)
        z = np.linspace(-1, 1, 9).astype(complex)
        assert_allclose(
            generate("touchard", params, z, p=0),
            generate("fock", params, z),
            rtol=1e-12,
        )

    def test_ml_q1_equals_fock(self):
        params = classical_params(10, 2.0)
        z = np.linspace(-1, 1, 9).astype(complex)
        assert_allclose(
            generate("ml", params, z, q=1.0),
            generate("fock", params, z),
            rtol=1e-12,
        )

    def test_unknown_family(self):
        params = classical_params(2, 2.0)
        with pytest.raises(ValueError):
            generate("nope", params, 0.0)


class TestTaylorSeries:
    def test_product_route_matches_moment_route(self):
        # two independent constructions of the same coefficients
        for n in (4, 8, 14):
            params = classical_params(n, 2.0)
            a = classical_taylor_series(params, 30).coefficients
            b = product_taylor_series(n, 2.0, 30).coefficients
            assert_allclose(b, a, rtol=1e-11, atol=1e-13)

    def test_product_route_values(self):
        x = np.linspace(-1.0, 1.0, 11).astype(complex)
        for n in (8, 40, 200):
            series = product_taylor_series(n, 2.0, 64)
            assert_allclose(series(x), classical_product_form(x, n, 2.0),
                            rtol=1e-12, atol=1e-12)

    def test_series_generate_matches_direct(self):
        params = classical_params(12, 2.0)
        z = np.linspace(-1, 1, 7).astype(complex)
        for family, kwargs in (
            ("fock", {}),
            ("ml", {"q": 2.0}),
            ("touchard", {"p": 1}),
            ("rbf-first", {}),
        ):
            direct = generate(family, params, z, **kwargs)
            series = generate_series(family, params, z, **kwargs)
            assert_allclose(series, direct, rtol=1e-11, atol=1e-11)

    def test_series_requires_classical_grid(self):
        params = SuperoscParams(
            n=1, a=2.0, frequencies=[0.5, -0.5], coefficients=[1.0, 1.0]
        )
        with pytest.raises(ValueError):
            generate_series("fock", params, 0.0)

    def test_series_rejects_rbf_second(self):
        params = classical_params(12, 2.0)
        with pytest.raises(ValueError):
            generate_series("rbf-second", params, 0.0)


class TestSupershift:
    def test_fock_gap_zero_at_origin(self):
        params = classical_params(6, 2.0)
        assert supershift_gap("fock", params, 0.0, method="direct") == 0.0

    def test_fock_gap_decreases(self):
        g50 = supershift_gap("fock", classical_params(50, 2.0), 1.0 + 0.0j)
        g200 = supershift_gap("fock", classical_params(200, 2.0), 1.0 + 0.0j)
        assert g200 < g50

    def test_ml_gap_small_at_160(self):
        gap = supershift_gap("ml", classical_params(160, 2.0), 0.5 + 0.0j, q=2.0)
        assert gap < 1e-2

    def test_limits(self):
        z = np.complex128(0.3 - 0.2j)
        assert_allclose(supershift_limit("fock", 2.0, z), np.exp(2j * z), rtol=1e-15)
        assert_allclose(
            supershift_limit("rbf-first", 2.0, z),
            np.exp(-(z**2) / 2) * np.exp(2j * z),
            rtol=1e-15,
        )

    def test_rbf_second_unsupported(self):
        params = classical_params(6, 2.0)
        with pytest.raises(ValueError):
            supershift_gap("rbf-second", params, 0.5)


class TestTouchardOperator:
    def test_p0_identity(self):
        series = TruncatedSeries(coefficients=[1.0, 2.0, 3.0])
        out = touchard_operator(series, 0)
        assert_allclose(out.coefficients, series.coefficients, rtol=0, atol=0)

    def test_p1_multipliers(self):
        out = touchard_operator(TruncatedSeries(coefficients=[1.0, 1.0, 1.0]), 1)
        assert_allclose(out.coefficients, [1.0, 4.0, 9.0], rtol=0, atol=0)

    def test_operator_matches_kernel_sum(self):
        params = classical_params(6, 2.0)
        series = classical_taylor_series(params, 40)
        z = np.complex128(0.3)
        for p in (1, 2):
            transformed = touchard_operator(series, p)
            got = generate("touchard", params, z, p=p)
            assert_allclose(transformed(z), got, rtol=1e-9)

    def test_invalid_p(self):
        with pytest.raises(ValueError):
            touchard_operator(TruncatedSeries(coefficients=[1.0]), -1)
