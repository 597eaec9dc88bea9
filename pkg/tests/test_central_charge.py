"""Tests for level structures, H-function coefficients and central-charge series."""

import cmath
from fractions import Fraction

import pytest

from branes.basis import TorsionLabel, geometric_basis_brane, lg_basis_brane, torsion_labels
from branes.expr import ThetaFactor, eval_brane, unit_brane, zero_brane
from central_charge.hfunction import (chern_restriction, gamma_class, hk_coefficient,
                                      orbifold_euler_terms, pair_orbifold_euler)
from central_charge.level import LevelStructure, LevelTerm, level_sign, level_value
from central_charge.series import (CentralChargeSeries, SeriesComponent, central_charge_series,
                                   eval_central_charge, evaluate_with_diagnostics,
                                   geometric_example_series, lg_example_series, pairing_series)
from core.errors import ConfigError
from glsm.combinatorics import sector_for
from glsm.model import MINUS, PLUS, GLSMData
from integrals.quadrature import residue_series
from qseries.functions import phi, theta

S = 0.83 * cmath.exp(0.4j)
Z = 0.05 * cmath.exp(0.7j)


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _assert_series_match(series, reference, tol):
    for ref in reference.components:
        comp = series.component(ref.key)
        assert comp is not None, ref.key
        for n, value in ref.coeffs.items():
            assert _rel(comp.coeffs[n], value) < tol, (ref.key, n)


class TestLevel:
    """Sign and determinant twist of the level structure"""

    def test_empty_level(self, n3r2, ctx):
        R = LevelStructure()
        assert level_sign(R, 1) == 1
        assert level_value(R, Fraction(3, 2), S, n3r2.equiv_params, ctx) == 1

    def test_quintic_sign_at_degree_one(self, quintic):
        R = LevelStructure.dual_of_phase_side(quintic, PLUS)
        assert level_sign(R, 1) == -1
        assert level_sign(R, 0) == 1

    def test_degree_zero_is_monomial(self, n3r2, ctx):
        R = LevelStructure.dual_of_phase_side(n3r2, PLUS)
        expected = 1
        for i in range(3):
            expected *= -n3r2.U(i, S)
        assert _rel(level_value(R, 0, S, n3r2.equiv_params, ctx), expected) < 1e-13

    def test_json_document(self, n3r2):
        R = LevelStructure.dual_of_phase_side(n3r2, MINUS)
        assert LevelStructure.from_json(R.to_json()) == R
        assert R.terms[0].s_exp == 2

    def test_zero_multiplicity_rejected(self):
        with pytest.raises(ValueError):
            LevelTerm((0, 0), 1, 0, 0)


class TestHFunction:
    """H-function coefficients, the Gamma class and Chern restrictions"""

    def test_hk_at_degree_zero(self, ctx):
        a1, a2 = 1.2 * cmath.exp(0.5j), 0.9 * cmath.exp(-1.1j)
        model = GLSMData((1, -1), (0, 0), (a1, a2))
        u1, u2 = 1 / (a1 * S), S / a2
        expected = (1 - u1) / (phi(u1, ctx) * phi(u2, ctx))
        value = hk_coefficient(model, 0, LevelStructure(), S, ctx, PLUS)
        assert _rel(value, expected) < 1e-13

    def test_hk_is_finite_at_fixed_point(self, quintic, ctx):
        R = LevelStructure.dual_of_phase_side(quintic, PLUS)
        value = hk_coefficient(quintic, 1, R, quintic.root_point(0, 0), ctx, PLUS)
        assert cmath.isfinite(value)
        assert value != 0

    def test_gamma_class_default_level(self, n3r2, ctx):
        R = LevelStructure.dual_of_phase_side(n3r2, PLUS)
        expected = 1
        for i in range(3):
            expected *= 1 - n3r2.equiv_params[i] * S
        for i in range(4):
            expected /= phi(n3r2.U(i, S) * ctx.qpow(n3r2.r_charges[i] / 2), ctx)
        assert _rel(gamma_class(n3r2, R, S, ctx, PLUS), expected) < 1e-12

    def test_chern_restriction_sectors(self, n3r2, ctx):
        B = geometric_basis_brane(n3r2, 1)
        trivial = sector_for(n3r2, Fraction(0))
        half = sector_for(n3r2, Fraction(1, 2))
        assert _rel(chern_restriction(B, trivial, S, Z, ctx), eval_brane(B, S, Z, ctx)) < 1e-14
        shifted = eval_brane(B, ctx.qpow(Fraction(1, 2)) * S, Z, ctx)
        assert _rel(chern_restriction(B, half, S, Z, ctx), shifted) < 1e-14


class TestEulerPairing:
    """Orbifold Euler characteristic by fixed-point localization"""

    @pytest.fixture
    def projective_line(self):
        return GLSMData((1, 1, -2), (0, 0, 0),
                        (1.1 * cmath.exp(0.2j), 0.8 * cmath.exp(1.7j), cmath.exp(-0.6j)))

    def test_structure_sheaf(self, projective_line, ctx):
        value = pair_orbifold_euler(projective_line, lambda v, k, s: 1.0, ctx, PLUS)
        assert abs(value - 1) < 1e-13

    def test_vanishing_factor_kills_point(self, projective_line, ctx):
        def f(v, k, s):
            return 1 - projective_line.U(0, s)

        terms = orbifold_euler_terms(projective_line, f, ctx, PLUS)
        assert [t.k for t in terms] == [0, 1]
        assert abs(terms[0].value) < 1e-14
        assert abs(pair_orbifold_euler(projective_line, f, ctx, PLUS) - 1) < 1e-13


class TestAssembly:
    """Residue assembly against the closed forms and the other two paths"""

    def test_geometric_closed_form(self, n3r2, ctx):
        # first eight coefficients
        for k in range(n3r2.n_plus):
            series = central_charge_series(n3r2, geometric_basis_brane(n3r2, k), None, 7, ctx)
            closed = geometric_example_series(n3r2, k, 7, ctx)
            assert sorted(closed.components[0].coeffs) == list(range(8))
            _assert_series_match(series, closed, 1e-10)
            for comp in series.components:
                if comp.key != (k, 0, 0):
                    assert all(abs(v) < 1e-12 for v in comp.coeffs.values())

    def test_geometric_closed_form_quintic(self, quintic, ctx):
        for k in range(quintic.n_plus):
            series = central_charge_series(quintic, geometric_basis_brane(quintic, k), None, 5, ctx)
            _assert_series_match(series, geometric_example_series(quintic, k, 5, ctx), 1e-8)

    def test_lg_closed_form(self, n3r2_minus, ctx):
        for label in torsion_labels(2):
            B = lg_basis_brane(n3r2_minus, label)
            series = central_charge_series(n3r2_minus, B, None, 3, ctx)
            closed = lg_example_series(n3r2_minus, label, 2, ctx)
            _assert_series_match(series, closed, 1e-9)
            keys = {comp.key for comp in closed.components}
            for comp in series.components:
                if comp.key not in keys:
                    assert all(abs(v) < 1e-12 for v in comp.coeffs.values())

    def test_pairing_path(self, n3r2, ctx):
        for k in range(3):
            B = geometric_basis_brane(n3r2, k)
            assembled = central_charge_series(n3r2, B, None, 4, ctx)
            paired = pairing_series(n3r2, B, None, 4, ctx)
            assert len(paired.components) == len(assembled.components)
            _assert_series_match(paired, assembled, 1e-12)

    def test_pairing_path_lg(self, n3r2_minus, ctx):
        labels = torsion_labels(2)
        assert len(labels) == 4
        for label in labels:
            B = lg_basis_brane(n3r2_minus, label)
            assembled = central_charge_series(n3r2_minus, B, None, 3, ctx)
            paired = pairing_series(n3r2_minus, B, None, 3, ctx)
            closed = lg_example_series(n3r2_minus, label, 2, ctx)
            _assert_series_match(paired, closed, 1e-9)
            for ref in closed.components:
                for n in ref.coeffs:
                    assert _rel(paired.component(ref.key).coeffs[n],
                                assembled.component(ref.key).coeffs[n]) < 1e-9

    def test_numeric_residue_path(self, n3r2, ctx):
        B = geometric_basis_brane(n3r2, 0)
        assembled = central_charge_series(n3r2, B, None, 3, ctx)
        numeric = residue_series(n3r2, B, None, 3, ctx)
        comp = numeric.component((0, 0, 0))
        for n, value in assembled.component((0, 0, 0)).coeffs.items():
            assert _rel(comp.coeffs[n], value) < 1e-6

    def test_zero_brane(self, n3r2, ctx):
        series = central_charge_series(n3r2, zero_brane(n3r2), None, 3, ctx)
        assert all(v == 0 for _, _, v in series.coefficient_table())

    def test_lg_series_has_no_constant_term(self, n3r2_minus, ctx):
        closed = lg_example_series(n3r2_minus, TorsionLabel(0, 0, 2), 4, ctx)
        for comp in closed.components:
            assert all(n < 0 for n in comp.coeffs)


class TestGradeRestrictionPrecondition:
    """Series are only read off for grade-restricted branes"""

    @pytest.fixture
    def unrestricted(self, n3r2):
        # theta(s/z) theta(s)^3: s-degree 4 instead of 3
        return unit_brane(n3r2, "custom").times(ThetaFactor(s_exp=1, z_exp=-1),
                                                 ThetaFactor(s_exp=1, power=3))

    @pytest.mark.parametrize("build", [central_charge_series, pairing_series, residue_series])
    def test_rejected_by_every_path(self, n3r2, ctx, unrestricted, build):
        with pytest.raises(ConfigError, match="not grade restricted"):
            build(n3r2, unrestricted, None, 2, ctx)

    def test_extra_theta_factor_rejected(self, n3r2, ctx):
        B = geometric_basis_brane(n3r2, 0).times(ThetaFactor(s_exp=1))
        with pytest.raises(ConfigError):
            central_charge_series(n3r2, B, None, 2, ctx)

    def test_basis_brane_of_the_other_phase(self, n3r2_minus, ctx):
        with pytest.raises(ConfigError):
            central_charge_series(n3r2_minus, geometric_basis_brane(n3r2_minus, 0), None, 2, ctx)

    def test_zero_brane_needs_no_restriction(self, n3r2_minus, ctx):
        series = pairing_series(n3r2_minus, zero_brane(n3r2_minus), None, 2, ctx)
        assert all(v == 0 for _, _, v in series.coefficient_table())


class TestEvaluation:
    """Summation of prefactored series"""

    def test_single_component(self, ctx):
        c = 0.7 * cmath.exp(0.3j)
        series = CentralChargeSeries([SeriesComponent(0, 0, Fraction(0), c, {0: 1})])
        expected = theta(1 / Z, ctx) / theta(c / Z, ctx)
        assert _rel(eval_central_charge(series, Z, ctx), expected) < 1e-14

    def test_direct_summation(self, n3r2, ctx):
        series = geometric_example_series(n3r2, 1, 12, ctx)
        comp = series.components[0]
        direct = comp.prefactor(Z, ctx) * sum(v * Z ** n for n, v in comp.coeffs.items())
        assert _rel(eval_central_charge(series, Z, ctx), direct) < 1e-12

    def test_converges_at_small_z(self, n3r2, ctx):
        evaluation = evaluate_with_diagnostics(geometric_example_series(n3r2, 0, 12, ctx), Z, ctx)
        assert evaluation.converged
        assert evaluation.tail_estimate < 1e-12

    def test_truncation_stable(self, n3r2, ctx):
        short = eval_central_charge(geometric_example_series(n3r2, 2, 8, ctx), Z, ctx)
        long = eval_central_charge(geometric_example_series(n3r2, 2, 16, ctx), Z, ctx)
        assert abs(short - long) < 1e-10 * max(1.0, abs(long))
