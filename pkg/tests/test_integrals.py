"""Tests for the pole lattice, numeric residues and the contour integral."""

import cmath
from fractions import Fraction

import numpy as np
import pytest

from branes.basis import geometric_basis_brane
from branes.expr import zero_brane
from checks.acceptance import PASS, check_contour, check_wallcross
from core.errors import DomainError, GenericityError, PoleError
from glsm.model import MINUS, PLUS
from integrals.poles import (check_separation, default_contour_radius, enumerate_poles,
                             first_pole_modulus, residue_radius)
from integrals.quadrature import (check_contour_radius, contour_diagnostics, contour_integral,
                                  integrand, numeric_residue, residue_sum,
                                  residue_theorem_defect)
from qseries.functions import phi, q_factorial, theta

Z = 0.05 * cmath.exp(0.3j)


class TestPoles:
    """Pole enumeration and separation"""

    def test_plus_lattice(self, n3r2, ctx):
        poles = enumerate_poles(n3r2, PLUS, 2, ctx)
        assert len(poles) == 9
        assert [p.beta for p in poles[:3]] == [0, 0, 0]
        assert abs(poles[3].location - ctx.q / n3r2.equiv_params[0]) < 1e-15

    def test_minus_lattice(self, n3r2, ctx):
        poles = enumerate_poles(n3r2, MINUS, 2, ctx)
        assert len(poles) == 8
        assert {p.k for p in poles} == {3}
        assert poles[0].b == Fraction(-1, 2)
        assert abs(poles[0].location + poles[1].location) < 1e-14

    def test_coinciding_poles(self, n3r2, ctx):
        poles = enumerate_poles(n3r2, PLUS, 0, ctx)
        with pytest.raises(GenericityError):
            check_separation(poles + poles[:1], ctx)

    def test_default_radius(self, n3r2, ctx):
        assert abs(first_pole_modulus(n3r2, PLUS, ctx) - 1) < 1e-14
        assert abs(first_pole_modulus(n3r2, MINUS, ctx) - 10 ** 0.5) < 1e-12
        assert abs(default_contour_radius(n3r2, ctx) - 10 ** 0.25) < 1e-12

    def test_radius_must_separate(self, n3r2, ctx):
        check_contour_radius(n3r2, 1.5, ctx)
        with pytest.raises(PoleError):
            check_contour_radius(n3r2, 5.0, ctx)


class TestResidues:
    """Trapezoid residues and the residue theorem"""

    def test_simple_pole(self, ctx):
        assert abs(numeric_residue(lambda s: 1 / (s - 1), 1.0, 0.25, ctx) - 1) < 1e-14

    def test_analytic_numerator(self, ctx):
        value = numeric_residue(lambda s: np.exp(s) / (s - 0.5), 0.5, 0.25, ctx)
        assert abs(value - cmath.exp(0.5)) < 1e-13

    def test_residue_of_inverse_theta(self, ctx):
        f = lambda s: 1 / (s * theta(s, ctx))
        expected = -1 / phi(ctx.q, ctx) ** 2
        assert abs(numeric_residue(f, 1.0, 0.25, ctx) - expected) < 1e-10 * abs(expected)

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_residue_of_inverse_phi(self, ctx, n):
        f = lambda s: 1 / (s * phi(ctx.q ** (-n) * s, ctx))
        sign = 1 if n % 2 else -1
        expected = sign * ctx.q ** (n * (n + 1) // 2) / (phi(ctx.q, ctx) * q_factorial(n, ctx))
        assert abs(numeric_residue(f, 1.0, 0.25, ctx) - expected) < 1e-10 * abs(expected)

    def test_radius_independence(self, ctx):
        f = lambda s: 1 / (s * theta(s, ctx))
        wide = numeric_residue(f, 1.0, 0.25, ctx)
        narrow = numeric_residue(f, 1.0, 0.125, ctx)
        assert abs(wide - narrow) <= ctx.tol_rel * abs(wide)

    def test_residue_after_lattice_shift(self, n3r2, ctx):
        # Res at q s0 of f ds equals Res at s0 of q f(q t) dt
        f = integrand(n3r2, geometric_basis_brane(n3r2, 0), Z, ctx)
        poles = enumerate_poles(n3r2, PLUS, 2, ctx)
        pole = next(p for p in poles if p.beta == 1 and p.k == 0)
        r = residue_radius(pole, poles, n3r2, ctx)
        direct = numeric_residue(f, pole.location, r, ctx)
        s0 = pole.location / ctx.q
        shifted = numeric_residue(lambda t: ctx.q * f(ctx.q * t), s0, r / abs(ctx.q), ctx)
        assert abs(direct) > 0
        assert abs(direct - shifted) <= ctx.tol_rel * abs(direct)

    def test_too_few_nodes(self, ctx):
        with pytest.raises(DomainError):
            numeric_residue(lambda s: 1 / s, 0j, 0.1, ctx, M=16)

    def test_residue_theorem(self, n3r2, ctx):
        assert residue_theorem_defect(n3r2, ctx) < 1e-7

    def test_residue_sum_by_degree(self, n3r2, ctx):
        result = residue_sum(n3r2, geometric_basis_brane(n3r2, 0), Z, PLUS, 3, ctx)
        assert len(result.per_pole) == 12
        assert abs(sum(result.per_beta.values()) - result.total) < 1e-15 * max(1, abs(result.total))


class TestContour:
    """Contour integral against the residue sums of both phases"""

    def test_zero_brane(self, n3r2, ctx):
        assert contour_integral(n3r2, zero_brane(n3r2), Z, ctx) == 0

    def test_contour_check(self, n3r2, ctx):
        findings = check_contour(n3r2, ctx)
        assert len(findings) == 3
        assert all(f['status'] == PASS for f in findings)

    def test_wallcross_check(self, n3r2, ctx):
        findings = check_wallcross(n3r2, ctx)
        assert all(f['status'] == PASS for f in findings), findings

    def test_diagnostics_document(self, n3r2, ctx):
        dump = contour_diagnostics(n3r2, geometric_basis_brane(n3r2, 1), Z, ctx, max_beta=2)
        assert [row['M'] for row in dump['quadrature']] == [256, 512, 1024]
        assert dump['quadrature'][0]['change'] is None
        assert dump['residues']['phase'] == '+'
        assert len(dump['residues']['perPole']) == 9

    def test_diagnostics_follow_model_phase(self, n3r2, n3r2_minus, ctx):
        B = geometric_basis_brane(n3r2, 1)
        assert contour_diagnostics(n3r2_minus, B, Z, ctx, max_beta=2)['residues']['phase'] == '-'
        dump = contour_diagnostics(n3r2, B, 20.0, ctx, max_beta=2)
        assert dump['residues']['phase'] == '+'
        dump = contour_diagnostics(n3r2, B, Z, ctx, max_beta=2, phase=MINUS)
        assert dump['residues']['phase'] == '-'
