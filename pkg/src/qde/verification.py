#!/usr/bin/env python3
"""
Numerical checks of the q-difference equations: the prefactor's z-shift
property, the residual of the operator on a central-charge series, and the
s-shift identity of the integrand from which the operator is derived.
"""

import math
from fractions import Fraction
from typing import Iterable

from branes.expr import BraneExpr, eval_brane
from central_charge.series import CentralChargeSeries, evaluate_with_diagnostics
from core.errors import ConvergenceError
from glsm.model import GLSMData, PLUS, phase_symbol
from glsm.qde_operator import qde_operator
from integrals.quadrature import gamma_q
from qde.operator import apply_operator
from qseries.context import QContext
from qseries.functions import pochhammer, theta
from utils.logger import Logger

RESIDUAL_FLOOR = 1e-300


def _prefactor(beta: Fraction, c: complex, z: complex, ctx: QContext) -> complex:
    fl = math.floor(beta)
    return z ** fl * theta(1 / z, ctx) / theta(ctx.qpow(-(beta - fl)) * c / z, ctx)


def verify_prefactor_relation(beta, c: complex, z: complex, ctx: QContext) -> float:
    """
    Relative residual of T_z P = q^beta c^{-1} P for
    P(z) = z^{floor(beta)} theta(1/z) / theta(q^{-{beta}} c / z).
    """
    beta = Fraction(beta)
    z = complex(z)
    shifted = _prefactor(beta, c, ctx.q * z, ctx)
    target = ctx.qpow(beta) / c * _prefactor(beta, c, z, ctx)
    return abs(shifted - target) / max(abs(shifted), abs(target), RESIDUAL_FLOOR)


def qde_residual(model: GLSMData, phase: int, Z: CentralChargeSeries,
                 z_samples: Iterable[complex], ctx: QContext,
                 floor: float = RESIDUAL_FLOOR) -> float:
    """
    max over samples of |L Z(z)| / max_e |Z(q^e z)|.

    Raises ConvergenceError when the series is not reliable at one of the
    shifted points.
    """
    phase = model.phase if phase is None else phase
    L = qde_operator(model, phase)
    worst = 0.0
    for z in z_samples:
        z = complex(z)
        values = {}
        for e in L.shifts():
            point = ctx.q ** e * z
            evaluation = evaluate_with_diagnostics(Z, point, ctx)
            if not evaluation.converged:
                raise ConvergenceError(f"series is not reliable at z={point:.6g}")
            values[point] = evaluation.value

        def lookup(w: complex) -> complex:
            return values[min(values, key=lambda p: abs(p - w))]

        scale = max(max(abs(v) for v in values.values()), floor)
        residual = abs(apply_operator(L, lookup, z, ctx)) / scale
        Logger.debug(f"QqDE residual phase {phase_symbol(phase)} at z={z:.6g}: {residual:.3g}")
        worst = max(worst, residual)
    return worst


def ts_multiplier(model: GLSMData, s: complex, z: complex, ctx: QContext, phase: int) -> complex:
    """
    Right side of I(qs) = M(s, z) I(s) with V_i = a_i^{-1} s^{-D_i} q^{q_i/2}:

    + phase: z prod_{i>N+} (V_i; q)_{|D_i|} / prod_{i<=N+} (q/V_i; q)_{D_i}
    - phase: z prod_{i>N+} prod_{k<|D_i|} (1 - q^{-k}/V_i) / prod_{i<=N+} (V_i q^{-D_i}; q)_{D_i}
    """
    value = complex(z)
    for i, dk in enumerate(model.weights):
        v = complex(model.U(i, s)) * ctx.qpow(model.r_charges[i] / 2)
        if phase == PLUS:
            if dk > 0:
                value /= pochhammer(ctx.q / v, dk, ctx)
            else:
                value *= pochhammer(v, -dk, ctx)
        else:
            if dk > 0:
                value /= pochhammer(v * ctx.q ** (-dk), dk, ctx)
            else:
                for k in range(-dk):
                    value *= 1 - ctx.q ** (-k) / v
    return value


def ts_identity_residual(model: GLSMData, B: BraneExpr, s: complex, z: complex,
                         ctx: QContext, phase: int = None) -> float:
    """Relative residual of the s-shift identity of I(s) = Gamma_q(s) E(s, z)"""
    phase = model.phase if phase is None else phase
    s = complex(s)

    def I(t: complex) -> complex:
        return complex(gamma_q(model, t, ctx) * eval_brane(B, t, z, ctx))

    lhs = I(ctx.q * s)
    rhs = ts_multiplier(model, s, z, ctx, phase) * I(s)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), RESIDUAL_FLOOR)
