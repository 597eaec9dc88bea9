"""Tests for the truncated q-special functions and their derivatives."""

import cmath

import numpy as np
import pytest

from checks.acceptance import PASS, check_theta_suite
from core.errors import DomainError, PoleError
from qseries.context import QContext, cpow
from qseries.functions import (numeric_derivative, phi, phi_prime, pochhammer, q_factorial,
                               theta, theta_prime, theta_prime_lattice, theta_shift_factor)


def long_phi(x: complex, q: complex, terms: int = 400) -> complex:
    value = complex(1.0)
    for i in range(terms):
        value *= 1 - q ** i * x
    return value


class TestContext:
    """QContext validation"""

    def test_rejects_q_outside_unit_disc(self):
        with pytest.raises(DomainError):
            QContext(q=1.5)
        with pytest.raises(DomainError):
            QContext(q=0)

    def test_rejects_nonpositive_tolerance(self):
        with pytest.raises(DomainError):
            QContext(q=0.1, tol_rel=0)

    def test_with_overrides_keeps_other_fields(self, ctx):
        other = ctx.with_overrides(product_terms=80, q=None)
        assert other.product_terms == 80
        assert other.q == ctx.q

    def test_tail_bound_covers_truncation(self):
        short = QContext(q=0.5, product_terms=20)
        x = 0.9
        actual = abs(long_phi(x, 0.5) / phi(x, short) - 1)
        assert actual <= short.phi_tail_bound(x)

    def test_cpow_real_root(self):
        assert abs(cpow(8.0, "1/3") - 2.0) < 1e-14
        assert cpow(2.0, -3) == 0.125


class TestTheta:
    """Values and functional equations of theta"""

    def test_theta_vanishes_at_one(self, ctx):
        assert theta(1.0, ctx) == 0

    def test_theta_against_long_product(self, ctx):
        x = 0.5
        oracle = long_phi(x, 0.1) * long_phi(0.1 / x, 0.1)
        assert abs(theta(x, ctx) - oracle) < 1e-14

    def test_theta_zero_argument_rejected(self, ctx):
        with pytest.raises(DomainError):
            theta(0.0, ctx)

    def test_quasi_periodicity_and_inversion(self, ctx):
        x = 0.7 * cmath.exp(0.9j)
        assert abs(theta(ctx.q * x, ctx) + theta(x, ctx) / x) < 1e-13
        assert abs(theta(ctx.q / x, ctx) - theta(x, ctx)) < 1e-13
        assert abs(theta(1 / x, ctx) + theta(x, ctx) / x) < 1e-13

    def test_shift_factor_closed_form(self, ctx):
        x = 1.3 * cmath.exp(-0.4j)
        for n in range(-4, 5):
            exact = theta(ctx.q ** n * x, ctx)
            closed = theta_shift_factor(x, n, ctx) * theta(x, ctx)
            assert abs(exact - closed) / abs(exact) < 1e-11

    def test_vectorized_matches_scalar(self, ctx):
        xs = np.array([0.5, 0.3j, 2.0 - 1.0j])
        values = theta(xs, ctx)
        for x, v in zip(xs, values):
            assert abs(v - theta(complex(x), ctx)) < 1e-13

    @pytest.mark.parametrize("q", [0.05, 0.1, 0.3])
    def test_theta_suite_across_q(self, q):
        findings = check_theta_suite(QContext(q=q))
        assert len(findings) == 3
        assert all(f['status'] == PASS for f in findings), findings

    def test_phi_recursion(self, ctx):
        x = 0.45 * cmath.exp(2.1j)
        assert abs(phi(x, ctx) - (1 - x) * phi(ctx.q * x, ctx)) < 1e-14


class TestPochhammer:
    """Finite q-Pochhammer symbols"""

    def test_zero_length_is_one(self, ctx):
        assert pochhammer(0.3, 0, ctx) == 1

    def test_positive_length(self, ctx):
        x = 0.4 + 0.2j
        expected = (1 - x) * (1 - 0.1 * x) * (1 - 0.01 * x)
        assert abs(pochhammer(x, 3, ctx) - expected) < 1e-15

    def test_negative_length_inverts(self, ctx):
        x = 0.4 + 0.2j
        assert abs(pochhammer(x, -2, ctx) * (1 - x / 0.1) * (1 - x / 0.01) - 1) < 1e-13

    def test_negative_length_pole(self, ctx):
        with pytest.raises(PoleError):
            pochhammer(0.1, -1, ctx)

    def test_finite_ratio_of_infinite_products(self, ctx):
        x = 0.37 * cmath.exp(1.2j)
        assert abs(pochhammer(x, 4, ctx) - phi(x, ctx) / phi(ctx.q ** 4 * x, ctx)) < 1e-14

    def test_q_factorial(self, ctx):
        assert abs(q_factorial(2, ctx) - (1 - 0.1) * (1 - 0.01)) < 1e-15

    def test_concatenation(self, ctx):
        x = 0.37 * cmath.exp(1.2j)
        for m in range(7):
            for n in range(7):
                joined = pochhammer(x, m + n, ctx)
                split = pochhammer(x, m, ctx) * pochhammer(ctx.q ** m * x, n, ctx)
                assert abs(joined - split) <= 1e-12 * abs(joined), (m, n)


class TestDerivatives:
    """Analytic derivatives, including at the lattice zeros"""

    def test_phi_prime_matches_numeric(self, ctx):
        x = 0.6 * cmath.exp(0.5j)
        numeric = numeric_derivative(lambda t: phi(t, ctx), x)
        assert abs(phi_prime(x, ctx) - numeric) < 1e-9

    def test_theta_prime_matches_numeric(self, ctx):
        x = 1.4 * cmath.exp(-0.8j)
        numeric = numeric_derivative(lambda t: theta(t, ctx), x)
        assert abs(theta_prime(x, ctx) - numeric) < 1e-9

    def test_theta_prime_at_one(self, ctx):
        assert abs(theta_prime(1.0, ctx) + phi(ctx.q, ctx) ** 2) < 1e-14

    def test_theta_prime_lattice(self, ctx):
        for n in range(-3, 4):
            x = ctx.q ** (-n)
            analytic = theta_prime(x, ctx)
            closed = theta_prime_lattice(n, ctx)
            assert abs(analytic - closed) / abs(closed) < 1e-11

    def test_residue_of_inverse_phi(self, ctx):
        # Res_{s=1} ds/(s phi(q^{-n} s)) = 1/(q^{-n} phi'(1)) and its closed form
        for n in range(0, 4):
            residue = 1 / (ctx.q ** (-n) * phi_prime(ctx.q ** (-n), ctx))
            sign = 1 if n % 2 else -1
            closed = sign * ctx.q ** (n * (n + 1) // 2) / (phi(ctx.q, ctx) * q_factorial(n, ctx))
            assert abs(residue - closed) / abs(closed) < 1e-11
