#!/usr/bin/env python3
"""
Restrictions of branes to (twisted) fixed points.

At a fixed point several theta factors may sit exactly on zeros of theta.
Each such factor vanishes to first order in s, so a balanced 0/0 is resolved
by replacing every vanishing theta(X(s)) with its s-derivative
theta'(X) * m * X / s. The powers of s cancel when the orders balance.
"""

import math
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from branes.basis import TorsionLabel, lg_omega
from branes.expr import BraneExpr, factor_argument
from core.errors import DegeneracyError, PoleError
from glsm.model import GLSMData
from qseries.context import QContext
from qseries.functions import theta, theta_prime
from utils.logger import Logger


def lattice_exponent(x: complex, ctx: QContext) -> Optional[int]:
    """n with x = q^n up to ctx.zero_tol, otherwise None"""
    x = complex(x)
    if x == 0:
        return None
    log_q_mod = math.log(abs(ctx.q))
    n = int(round(math.log(abs(x)) / log_q_mod))
    if abs(x / ctx.q ** n - 1.0) < ctx.zero_tol:
        return n
    return None


def limit_value(B: BraneExpr, s: complex, z: complex, ctx: QContext) -> complex:
    """
    Value of B at s, resolving removable singularities of first order per factor.

    Returns 0 when zeros outnumber poles, raises PoleError when poles
    outnumber zeros and DegeneracyError when a vanishing factor has a
    vanishing derivative.
    """
    if B.is_zero():
        return complex(0.0)
    s = complex(s)
    value = complex(B.prefactor.evaluate(B.equiv_params, ctx, s, z))
    order = 0
    for factor in B.factors:
        x = complex(factor_argument(B, factor, s, z, ctx))
        if lattice_exponent(x, ctx) is None:
            value *= theta(x, ctx) ** factor.power
            continue
        if factor.s_exp == 0:
            if factor.power < 0:
                raise PoleError(f"brane {B.label}: z-only denominator vanishes at z = {z}")
            return complex(0.0)
        derivative = theta_prime(x, ctx)
        if abs(derivative) < ctx.tol_abs:
            raise DegeneracyError(f"brane {B.label}: theta' vanishes at {x}")
        value *= (derivative * float(factor.s_exp) * x) ** factor.power
        order += factor.power
    if order > 0:
        return complex(0.0)
    if order < 0:
        raise PoleError(f"brane {B.label}: pole of order {-order} at s = {s}")
    return value


def fixed_point(model: GLSMData, k: int, label: Union[int, TorsionLabel], ctx: QContext) -> complex:
    """
    s = exp(2 pi i m/|D_k|) q^{l/|D_k|} a_k^{-1/D_k}.

    An integer label is a root of unity index (l = 0).
    """
    if isinstance(label, TorsionLabel):
        dk = abs(model.weights[k])
        return model.root_point(k, label.m) * ctx.qpow(Fraction(label.l, dk))
    return model.root_point(k, int(label))


def restrict_to_fixed_point(B: BraneExpr, model: GLSMData, k: int,
                            label: Union[int, TorsionLabel], z: complex,
                            ctx: QContext) -> complex:
    """Limit value of B at the fixed point (k, label)"""
    s0 = fixed_point(model, k, label, ctx)
    value = limit_value(B, s0, z, ctx)
    Logger.debug(f"restriction of {B.label} at ({k}, {label}) s={s0:.6g}: {value:.6g}")
    return value


def restriction_matrix(branes, model: GLSMData, points, z: complex, ctx: QContext) -> np.ndarray:
    """Matrix of restrictions: rows are branes, columns are (k, label) points"""
    matrix = np.zeros((len(branes), len(points)), dtype=complex)
    for row, B in enumerate(branes):
        for col, (k, label) in enumerate(points):
            matrix[row, col] = restrict_to_fixed_point(B, model, k, label, z, ctx)
    return matrix


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def geometric_restriction_closed_form(model: GLSMData, k: int, z: complex, ctx: QContext) -> complex:
    """E^{(+,k)} at s = a_k^{-1}: theta(q/z)/theta(q a_k/z) prod_{i != k} theta(a_k/a_i)"""
    a = model.equiv_params
    value = theta(ctx.q / z, ctx) / theta(ctx.q * a[k] / z, ctx)
    for i in range(model.n_plus):
        if i != k:
            value *= theta(a[k] / a[i], ctx)
    return value


def lg_restriction_closed_form(model: GLSMData, label: TorsionLabel, z: complex,
                               ctx: QContext) -> complex:
    """E^{(-,zeta)} at its support point: r zeta^r theta'(zeta^r)/theta'(1) theta(z)/theta(w z)"""
    r = label.r
    zeta_r = ctx.q ** label.l
    w = lg_omega(model, label, ctx)
    return (r * zeta_r * theta_prime(zeta_r, ctx) / theta_prime(1.0, ctx)
            * theta(z, ctx) / theta(w * z, ctx))

