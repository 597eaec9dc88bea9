#!/usr/bin/env python3
"""
The solid-torus integral (1/2 pi i) \\oint ds/s Gamma_q(s) E(s, z) by the
trapezoid rule on circles, and its evaluation as a sum of residues.

Integrands are evaluated on whole node arrays at once; every quadrature is
checked by doubling the node count.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from branes.expr import BraneExpr, eval_brane
from central_charge.level import LevelStructure, level_value
from central_charge.series import (CentralChargeSeries, Z_REF, coefficient_from_value,
                                   component_for_pole, require_grade_restriction)
from core.errors import ConvergenceError, DomainError, PoleError
from glsm.model import GLSMData, MINUS, PLUS, phase_symbol
from integrals.poles import (PoleSpec, default_contour_radius, enumerate_poles,
                             first_pole_modulus, residue_radius)
from qseries.context import QContext, cpow
from qseries.functions import phi
from utils.logger import Logger
from utils.parallel import ordered_map

MIN_NODES = 64
MAX_DOUBLINGS = 6

ComplexFunction = Callable[[np.ndarray], np.ndarray]


def gamma_q(model: GLSMData, s, ctx: QContext):
    """1 / prod_i phi(a_i^{-1} s^{-D_i} q^{q_i/2}); s may be an array"""
    denominator = 1.0
    for i in range(model.size):
        denominator = denominator * phi(model.U(i, s) * ctx.qpow(model.r_charges[i] / 2), ctx)
    if np.any(np.abs(denominator) < ctx.tol_abs):
        raise PoleError(f"{model.name}: Gamma_q has a pole on the evaluation points")
    return 1.0 / denominator


def integrand(model: GLSMData, B: BraneExpr, z: complex, ctx: QContext) -> ComplexFunction:
    """s -> Gamma_q(s) E(s, z) / s"""
    def f(s):
        return gamma_q(model, s, ctx) * eval_brane(B, s, z, ctx) / s
    return f


def circle_integral(f: ComplexFunction, center: complex, radius: float, M: int) -> complex:
    """(1/2 pi i) \\oint_{|s - center| = radius} f(s) ds by the M-point trapezoid rule"""
    angles = 2 * np.pi * np.arange(M) / M
    offsets = radius * np.exp(1j * angles)
    values = np.asarray(f(center + offsets), dtype=complex)
    return complex(np.sum(values * offsets) / M)


def _close(a: complex, b: complex, ctx: QContext) -> bool:
    return abs(a - b) <= ctx.tol_rel * max(abs(a), abs(b)) + ctx.tol_abs


def numeric_residue(f: ComplexFunction, s0: complex, r: float, ctx: QContext,
                    M: int = MIN_NODES, max_doublings: int = MAX_DOUBLINGS) -> complex:
    """
    Residue of f ds at s0 from the trapezoid rule on |s - s0| = r.

    M is doubled until two successive values agree to tol_rel.
    """
    if M < MIN_NODES:
        raise DomainError(f"numeric_residue needs M >= {MIN_NODES}, got {M}")
    previous = circle_integral(f, s0, r, M)
    for _ in range(max_doublings):
        M *= 2
        current = circle_integral(f, s0, r, M)
        if _close(previous, current, ctx):
            return current
        previous = current
    raise ConvergenceError(f"residue at {s0:.6g} (r={r:.3g}) not converged with M={M}")


# ---------------------------------------------------------------------------
# Residue sums
# ---------------------------------------------------------------------------

@dataclass
class ResidueSumResult:
    total: complex
    phase: int
    per_beta: Dict[Fraction, complex] = field(default_factory=dict)
    per_pole: List[Tuple[PoleSpec, complex]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            'phase': phase_symbol(self.phase),
            'total': [self.total.real, self.total.imag],
            'perBeta': {str(beta): [v.real, v.imag] for beta, v in self.per_beta.items()},
            'perPole': [dict(pole.to_json(), residue=[v.real, v.imag]) for pole, v in self.per_pole],
        }


def _pole_residues(model: GLSMData, f: ComplexFunction, poles: List[PoleSpec],
                   ctx: QContext, M: int) -> List[complex]:
    def residue(pole: PoleSpec) -> complex:
        r = residue_radius(pole, poles, model, ctx)
        return numeric_residue(f, pole.location, r, ctx, M)
    return ordered_map(residue, poles)


def residue_sum(model: GLSMData, B: BraneExpr, z: complex, phase: int, max_beta,
                ctx: QContext, M: int = MIN_NODES) -> ResidueSumResult:
    """
    Sum of the residues of ds/s Gamma_q E_z over the phase's pole lattice up
    to max_beta. The + phase shrinks the contour onto s = 0 (sign +1); the -
    phase expands it to infinity and reverses the orientation (sign -1).
    """
    phase = model.phase if phase is None else phase
    sign = 1 if phase == PLUS else -1
    result = ResidueSumResult(0j, phase)
    if B.is_zero():
        return result
    poles = enumerate_poles(model, phase, max_beta, ctx)
    residues = [sign * v for v in _pole_residues(model, integrand(model, B, z, ctx), poles, ctx, M)]
    for pole, value in zip(poles, residues):
        result.per_pole.append((pole, value))
        result.per_beta[pole.beta] = result.per_beta.get(pole.beta, 0j) + value
        result.total += value
    Logger.debug(f"residue sum {B.label} phase {phase_symbol(phase)}: {len(poles)} poles, "
                 f"total {result.total:.12g}")
    return result


def residue_series(model: GLSMData, B: BraneExpr, R: Optional[LevelStructure], max_beta,
                   ctx: QContext, phase: int = None, M: int = MIN_NODES,
                   z_ref: complex = Z_REF) -> CentralChargeSeries:
    """
    Central-charge series from numeric residues at z_ref. A level R other than
    the default multiplies each pole by level_R / level_default at that pole.
    """
    phase = model.phase if phase is None else phase
    require_grade_restriction(model, B, phase)
    default = LevelStructure.dual_of_phase_side(model, phase)
    R = default if R is None else R
    sums = residue_sum(model, B, z_ref, phase, max_beta, ctx, M)
    series = CentralChargeSeries(direction=phase, meta={
        'model': model.name, 'brane': B.label, 'phase': phase_symbol(phase),
        'maxBeta': str(Fraction(max_beta)), 'method': 'residue',
        'zRef': [z_ref.real, z_ref.imag],
    })
    for pole, value in sums.per_pole:
        comp = component_for_pole(series, model, pole.k, pole.m, pole.b)
        if R != default and value != 0:
            s0 = model.root_point(pole.k, pole.m)
            value *= (level_value(R, pole.b, s0, model.equiv_params, ctx)
                      / level_value(default, pole.b, s0, model.equiv_params, ctx))
        n = math.floor(pole.b)
        comp.add(n, coefficient_from_value(comp, n, value, ctx, z_ref))
    return series


# ---------------------------------------------------------------------------
# Contour quadrature
# ---------------------------------------------------------------------------

def check_contour_radius(model: GLSMData, delta: float, ctx: QContext):
    """The circle |s| = delta must pass strictly between the two pole lattices"""
    inner = first_pole_modulus(model, PLUS, ctx)
    outer = first_pole_modulus(model, MINUS, ctx)
    if not inner < delta < outer:
        raise PoleError(f"contour |s| = {delta:.6g} does not separate the poles "
                        f"(+ lattice up to {inner:.6g}, - lattice from {outer:.6g})")


def quadrature_table(f: ComplexFunction, delta: float, M: int, doublings: int) -> List[Tuple[int, complex]]:
    """Trapezoid values of (1/2 pi i) \\oint_{|s|=delta} f ds for M, 2M, ..."""
    return [(M * 2 ** j, circle_integral(f, 0j, delta, M * 2 ** j)) for j in range(doublings + 1)]


def contour_integral(model: GLSMData, B: BraneExpr, z: complex, ctx: QContext,
                     delta: float = None, M: int = 256, max_doublings: int = 4) -> complex:
    """
    (1/2 pi i) \\oint_{|s|=delta} ds/s Gamma_q E_z, doubling M until two
    successive values agree to tol_rel.
    """
    if B.is_zero():
        return 0j
    delta = default_contour_radius(model, ctx) if delta is None else float(delta)
    check_contour_radius(model, delta, ctx)
    f = integrand(model, B, z, ctx)
    previous = circle_integral(f, 0j, delta, M)
    for _ in range(max_doublings):
        M *= 2
        current = circle_integral(f, 0j, delta, M)
        Logger.debug(f"contour |s|={delta:.6g} M={M}: {current:.15g}")
        if _close(previous, current, ctx):
            return current
        previous = current
    raise ConvergenceError(f"contour integral not converged with M={M}")


def contour_diagnostics(model: GLSMData, B: BraneExpr, z: complex, ctx: QContext,
                        max_beta=4, delta: float = None, M: int = 256,
                        doublings: int = 2, phase: int = None) -> dict:
    """
    Pole list, per-pole residues, per-beta sums and the quadrature doubling
    table. The residues are summed over the lattice of the given phase, the
    model's own phase by default.
    """
    phase = model.phase if phase is None else phase
    delta = default_contour_radius(model, ctx) if delta is None else float(delta)
    check_contour_radius(model, delta, ctx)
    table = quadrature_table(integrand(model, B, z, ctx), delta, M, doublings)
    sums = residue_sum(model, B, z, phase, max_beta, ctx)
    return {
        'model': model.name,
        'brane': B.label,
        'z': [complex(z).real, complex(z).imag],
        'delta': delta,
        'quadrature': [{'M': m, 'value': [v.real, v.imag],
                        'change': abs(v - table[j - 1][1]) if j else None}
                       for j, (m, v) in enumerate(table)],
        'residues': sums.to_json(),
    }


# ---------------------------------------------------------------------------
# Residue theorem on rational surrogates
# ---------------------------------------------------------------------------

def surrogate_poles(model: GLSMData, depth: int, ctx: QContext) -> List[complex]:
    """Zeros of prod_i prod_{j < depth} (1 - q^{j + q_i/2} U_i(s))"""
    points = []
    for i, dk in enumerate(model.weights):
        for j in range(depth):
            w = ctx.qpow(j + model.r_charges[i] / 2) / model.equiv_params[i]
            base = cpow(w, Fraction(1, dk))
            points.extend(base * np.exp(2j * np.pi * m / abs(dk)) for m in range(abs(dk)))
    return points


def surrogate_integrand(model: GLSMData, depth: int, ctx: QContext) -> ComplexFunction:
    """Rational truncation 1/(s prod_i prod_{j<depth} (1 - q^{j+q_i/2} U_i(s))) of ds/s Gamma_q"""
    def f(s):
        value = 1.0 / s
        for i in range(model.size):
            u = model.U(i, s)
            for j in range(depth):
                value = value / (1 - ctx.qpow(j + model.r_charges[i] / 2) * u)
        return value
    return f


def residue_theorem_defect(model: GLSMData, ctx: QContext, depth: int = 2,
                           M: int = MIN_NODES) -> float:
    """
    |sum of finite nonzero residues + Res_0 + Res_inf| for the rational
    surrogate; Res_0 and Res_inf come from circles inside and outside all poles.
    """
    f = surrogate_integrand(model, depth, ctx)
    points = surrogate_poles(model, depth, ctx)
    moduli = [abs(p) for p in points]
    total = 0j
    for p in points:
        others = [abs(p - o) for o in points if o is not p]
        r = 0.25 * min(others + [abs(p)])
        total += numeric_residue(f, p, r, ctx, M)
    res_zero = circle_integral(f, 0j, 0.5 * min(moduli), 4 * M)
    res_inf = -circle_integral(f, 0j, 2.0 * max(moduli), 4 * M)
    defect = abs(total + res_zero + res_inf)
    Logger.debug(f"residue theorem defect for {model.name} (depth {depth}): {defect:.3g}")
    return defect
