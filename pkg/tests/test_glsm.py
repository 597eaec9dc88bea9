"""Tests for model data, degree combinatorics and the QqDE operators."""

import cmath
from fractions import Fraction

import numpy as np
import pytest

from core.errors import ConfigError
from glsm.combinatorics import (age, box_sectors, d_of, def_obs_weights, effective_classes,
                                euler_value, frac, is_nonnegative_integer, pole_coordinates,
                                pole_degrees, sector_for, teardrop_determinant, teardrop_euler,
                                teardrop_euler_rational)
from glsm.model import GLSMData, MINUS, PLUS, parse_phase
from glsm.qde_operator import qde_operator
from qseries.context import cpow
from qseries.functions import theta


class TestModel:
    """GLSMData validation and characters"""

    def test_shape(self, n3r2):
        assert n3r2.size == 4
        assert n3r2.n_plus == 3
        assert n3r2.is_hypersurface()
        assert n3r2.phase_side(PLUS) == [0, 1, 2]
        assert n3r2.phase_side(MINUS) == [3]

    def test_positive_weights_first(self):
        with pytest.raises(ConfigError):
            GLSMData((1, -2, 1), (0, 2, 0), (1, 1, 1))

    def test_both_signs_required(self):
        with pytest.raises(ConfigError):
            GLSMData((1, 1), (0, 0), (1, 1))

    def test_length_mismatch(self):
        with pytest.raises(ConfigError):
            GLSMData((1, -1), (0,), (1, 1))

    def test_phase_spellings(self):
        assert parse_phase('+') == PLUS
        assert parse_phase('-') == MINUS
        assert parse_phase('−') == MINUS
        with pytest.raises(ConfigError):
            parse_phase('0')

    def test_root_point_is_zero_of_character(self, n3r2):
        for m in range(2):
            s0 = n3r2.root_point(3, m)
            assert abs(n3r2.U(3, s0) - 1) < 1e-14
        assert abs(n3r2.root_point(3, 1) + n3r2.root_point(3, 0)) < 1e-14


class TestDegrees:
    """Effective classes, pole coordinates and sectors"""

    def test_effective_classes_plus(self, n3r2):
        assert effective_classes(n3r2, 3, PLUS) == [0, 1, 2, 3]

    def test_effective_classes_minus(self, n3r2):
        expected = [Fraction(j, 2) for j in range(1, 7)]
        assert effective_classes(n3r2, 3, MINUS) == expected

    def test_negative_bound_is_empty(self, n3r2):
        assert effective_classes(n3r2, -1, PLUS) == []

    @pytest.mark.parametrize("weights,r_charges", [((1, 1, 1, -2), (0, 0, 0, 2)),
                                                    ((1, 2, -3), (0, 0, 0)),
                                                    ((2, 3, -1, -4), (0, 0, 0, 0))])
    @pytest.mark.parametrize("phase", [PLUS, MINUS])
    def test_effective_classes_closed_under_addition(self, weights, r_charges, phase):
        model = GLSMData(weights, r_charges, [cmath.exp(0.7j * (i + 1)) for i in range(len(weights))])
        max_beta = 4
        eff = effective_classes(model, max_beta, phase)
        for k in model.phase_side(phase):
            lattice = [beta for beta in eff
                       if is_nonnegative_integer(d_of(model, k, beta if phase == PLUS else -beta))]
            for b1 in lattice:
                for b2 in lattice:
                    if b1 + b2 <= max_beta:
                        assert b1 + b2 in eff, (k, b1, b2)

    def test_pole_degrees(self, n3r2):
        b, d = pole_degrees(n3r2, Fraction(3, 2), MINUS)
        assert b == Fraction(-3, 2)
        assert d == [Fraction(-3, 2)] * 3 + [Fraction(2)]
        assert d_of(n3r2, 3, b) == 2

    def test_pole_coordinates(self, n3r2):
        assert pole_coordinates(n3r2, Fraction(2), PLUS) == [0, 1, 2]
        assert pole_coordinates(n3r2, Fraction(-1, 2), MINUS) == [3]
        assert pole_coordinates(n3r2, Fraction(1, 2), PLUS) == []

    def test_sectors_and_ages(self, n3r2):
        sectors = box_sectors(n3r2, MINUS)
        assert [v.c for v in sectors] == [0, Fraction(1, 2)]
        half = sector_for(n3r2, Fraction(5, 2))
        assert half.c == Fraction(1, 2)
        assert half.fixed_coords == frozenset({3})
        assert half.order == 2
        assert age(n3r2, half, 0) == Fraction(1, 2)
        assert age(n3r2, half, 3) == 0

    def test_def_obs_weights(self, n3r2):
        deformations, obstructions = def_obs_weights(n3r2, 1)
        assert len(deformations) == 6
        assert len(obstructions) == 2
        assert sorted(w[2] for w in obstructions) == [1, 2]


class TestTeardrop:
    """Euler characteristics and determinant lines on the teardrop"""

    @pytest.mark.parametrize("n,a", [(7, 3), (0, 2), (-1, 2), (-2, 2), (-5, 2), (-7, 3)])
    def test_euler_matches_rational_form(self, ctx, n, a):
        finite = euler_value(teardrop_euler(n, a), ctx.q)
        rational = teardrop_euler_rational(Fraction(n, a), ctx.q)
        assert abs(finite - rational) < 1e-10 * max(1.0, abs(rational))

    def test_vanishing_range(self):
        assert all(teardrop_euler(n, 4) == [] for n in range(-4, 0))

    def test_euler_grid_at_random_q(self):
        rng = np.random.default_rng(11)
        qs = 0.05 + 0.45 * rng.random(20)
        qs = qs * np.exp(2j * np.pi * rng.random(20))
        for q in qs:
            for a in range(1, 5):
                for n in range(-12, 13):
                    finite = euler_value(teardrop_euler(n, a), q)
                    rational = teardrop_euler_rational(Fraction(n, a), q)
                    assert abs(finite - rational) <= 1e-12 * max(1.0, abs(rational)), (q, n, a)

    def test_window_is_exactly_zero(self):
        for a in range(1, 5):
            for n in range(-a, 0):
                assert teardrop_euler(n, a) == []
                assert euler_value(teardrop_euler(n, a), 0.3) == 0

    @pytest.mark.parametrize("phase", [PLUS, MINUS])
    def test_def_obs_weights_match_rational_form(self, n3r2, phase):
        rng = np.random.default_rng(5)
        qs = (0.05 + 0.45 * rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
        for beta in effective_classes(n3r2, 4, phase):
            b = beta if phase == PLUS else -beta
            deformations, obstructions = def_obs_weights(n3r2, b)
            for i in range(n3r2.size):
                d = d_of(n3r2, i, b)
                for q in qs:
                    value = (sum(cpow(q, e) for j, _, e in deformations if j == i)
                             - sum(cpow(q, e) for j, _, e in obstructions if j == i))
                    rational = teardrop_euler_rational(d, q)
                    assert abs(value - rational) <= 1e-10 * max(1.0, abs(rational)), (beta, i)

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            teardrop_euler(1, 0)

    @pytest.mark.parametrize("x", [Fraction(7, 3), Fraction(0), Fraction(-5, 2), Fraction(1, 4)])
    def test_determinant_is_theta_ratio(self, ctx, x):
        a = 0.8 * cmath.exp(0.4j)
        ratio = theta(-a * ctx.qpow(-x), ctx) / theta(-a * ctx.qpow(1 - frac(x)), ctx)
        value = teardrop_determinant(x, a, ctx)
        assert abs(value - ratio) / abs(ratio) < 1e-10


class TestOperator:
    """Shape of the QqDE operators"""

    def test_order_hypersurface(self, n3r2):
        assert qde_operator(n3r2, PLUS).order() == 4
        assert qde_operator(n3r2, MINUS).order() == 4

    def test_order_quintic(self, quintic):
        assert qde_operator(quintic, PLUS).order() == 25

    def test_order_on_random_weights(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            positive = [int(d) for d in rng.integers(1, 4, rng.integers(1, 4))]
            negative = [-int(d) for d in rng.integers(1, 4, rng.integers(1, 3))]
            weights = positive + negative
            params = [cmath.exp(1j * t) for t in rng.uniform(0, 2 * np.pi, len(weights))]
            model = GLSMData(weights, [0] * len(weights), params)
            expected = max(sum(d * d for d in positive), sum(d * d for d in negative))
            assert qde_operator(model, PLUS).order() == expected, weights
            assert qde_operator(model, MINUS).order() == expected, weights

    def test_term_count(self, n3r2):
        # 2^3 left terms and 2^2 right terms, never merged
        assert len(qde_operator(n3r2, PLUS)) == 12

    def test_minus_shifts(self, n3r2):
        assert qde_operator(n3r2, MINUS).shifts() == [-4, -3, -2, -1, 0]
