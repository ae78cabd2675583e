"""Scalar special-function layer: log-gamma, Bernoulli, Stirling, Touchard."""

import math
from fractions import Fraction

import numpy as np
import pytest

from foxwright.special import (
    bernoulli_number,
    bernoulli_poly,
    gamma_real,
    log_abs_gamma_signed,
    log_gamma,
    log_gamma_complex,
    log_gamma_complex_vec,
    stirling2_row,
    touchard_sum,
)


class TestLogGamma:
    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 42.5, 171.0])
    def test_matches_stdlib_on_positive_axis(self, x):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-14)

    @pytest.mark.parametrize("z", [0.3 + 0.7j, 2.5 - 1.25j, -1.5 + 0.5j, 5.0 + 5.0j])
    def test_reflection_identity(self, z):
        # gamma(z) gamma(1-z) = pi / sin(pi z)
        lhs = log_gamma_complex(z) + log_gamma_complex(1.0 - z)
        rhs = np.log(np.pi / np.sin(np.pi * z))
        # compare exp() because the logs may differ by 2*pi*i
        assert np.exp(lhs) == pytest.approx(np.exp(rhs), rel=1e-11)

    def test_recurrence(self):
        z = 0.37 + 1.2j
        assert np.exp(log_gamma_complex(z + 1)) == pytest.approx(
            z * np.exp(log_gamma_complex(z)), rel=1e-12
        )

    def test_vectorized_agrees_with_scalar(self):
        zs = np.array([0.5 + 0.1j, 3.0 - 2.0j, 1.0 + 0.0j, 0.25 + 4.0j])
        vec = log_gamma_complex_vec(zs)
        for got, z in zip(vec, zs):
            assert got == pytest.approx(log_gamma_complex(complex(z)), rel=1e-13)

    def test_signed_log_gamma_negative_axis(self):
        # gamma(-1.5) = 4 sqrt(pi) / 3 > 0, gamma(-0.5) = -2 sqrt(pi) < 0
        mag, sign = log_abs_gamma_signed(-1.5)
        assert sign == 1.0
        assert math.exp(mag) == pytest.approx(4.0 * math.sqrt(math.pi) / 3.0, rel=1e-13)
        mag, sign = log_abs_gamma_signed(-0.5)
        assert sign == -1.0
        assert math.exp(mag) == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-13)

    def test_gamma_real_half_integers(self):
        assert gamma_real(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert gamma_real(5.0) == pytest.approx(24.0, rel=1e-14)


class TestBernoulli:
    def test_exact_small_numbers(self):
        expected = {
            0: Fraction(1),
            1: Fraction(-1, 2),
            2: Fraction(1, 6),
            4: Fraction(-1, 30),
            6: Fraction(1, 42),
            8: Fraction(-1, 30),
            10: Fraction(5, 66),
            12: Fraction(-691, 2730),
        }
        for n, want in expected.items():
            assert bernoulli_number(n) == want

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
    def test_odd_numbers_vanish(self, n):
        assert bernoulli_number(n) == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    @pytest.mark.parametrize("x", [0.0, 0.3, 1.0, 2.5, -1.2])
    def test_difference_identity(self, n, x):
        # B_n(x+1) - B_n(x) = n x^(n-1)
        got = bernoulli_poly(n, x + 1.0) - bernoulli_poly(n, x)
        assert got == pytest.approx(n * x ** (n - 1), abs=1e-10)

    def test_poly_at_zero_is_number(self):
        for n in range(8):
            assert bernoulli_poly(n, 0.0) == pytest.approx(float(bernoulli_number(n)), abs=1e-15)


class TestStirlingTouchard:
    def test_rows(self):
        assert stirling2_row(0) == (1,)
        assert stirling2_row(1) == (0, 1)
        assert stirling2_row(3) == (0, 1, 3, 1)
        assert stirling2_row(4) == (0, 1, 7, 6, 1)
        assert stirling2_row(5) == (0, 1, 15, 25, 10, 1)

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0, -0.7])
    def test_touchard_matches_brute_force(self, n, x):
        # sum_{k>=0} k^n x^k / k!, summed directly to convergence
        brute = sum((k**n if n or k else 1) * x**k / math.factorial(k)
                    for k in range(80))
        assert touchard_sum(n, x) == pytest.approx(brute, rel=1e-10, abs=1e-12)
