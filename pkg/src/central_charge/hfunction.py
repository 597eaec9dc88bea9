#!/usr/bin/env python3
"""
H-function coefficients, orbifold Chern character restrictions and the
orbifold Euler pairing by fixed-point localization.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional

from branes.expr import BraneExpr, transport
from branes.restriction import limit_value
from central_charge.level import LevelStructure, level_det_factor, level_value
from core.errors import GenericityError, PoleError
from glsm.combinatorics import box_sectors, d_of, frac, is_nonnegative_integer
from glsm.model import GLSMData, Sector
from qseries.context import QContext
from qseries.functions import phi, pochhammer


def hk_coefficient(model: GLSMData, beta, R: LevelStructure, s: complex, ctx: QContext,
                   phase: int = None) -> complex:
    """
    beta-summand of H^K_R without the z-prefactor:

        level_R(beta) * prod_{phase side, age 0} (1 - U_i) / prod_i phi(U_i q^{-d_i(beta)})

    beta is the signed degree. When d_i(beta) is a nonnegative integer the
    pole factor cancels exactly, (1 - U)/phi(U q^{-d}) = 1/((U q^{-d}; q)_d phi(qU)),
    so the value is finite at the fixed points themselves.
    """
    beta = Fraction(beta)
    s = complex(s)
    c = frac(beta)
    side = set(model.phase_side(phase))
    value = level_value(R, beta, s, model.equiv_params, ctx)
    for i, dk in enumerate(model.weights):
        u = complex(model.U(i, s))
        d = d_of(model, i, beta)
        numerator = i in side and (c * dk).denominator == 1
        if numerator and is_nonnegative_integer(d):
            value /= pochhammer(u * ctx.qpow(-d), int(d), ctx) * phi(ctx.q * u, ctx)
            continue
        denominator = phi(u * ctx.qpow(-d), ctx)
        if abs(denominator) < ctx.tol_abs:
            raise PoleError(f"phi(U_{i} q^{-d}) vanishes at s = {s}")
        value *= (1 - u if numerator else 1.0) / denominator
    return value


def gamma_class(model: GLSMData, R: LevelStructure, s: complex, ctx: QContext,
                phase: int = None) -> complex:
    """
    K-theoretic Gamma class with the degree-0 determinant of R divided out:

        prod_{phase side} (1 - U_i) / (det_R(0) prod_i phi(U_i q^{q_i/2}))

    For R = V_+^dual the numerators become 1 - a_i s^{D_i}.
    """
    s = complex(s)
    value = 1.0 / level_det_factor(R, 0, s, model.equiv_params, ctx)
    for i in range(model.size):
        u = complex(model.U(i, s))
        value /= phi(u * ctx.qpow(model.r_charges[i] / 2), ctx)
    for i in model.phase_side(phase):
        value *= 1 - complex(model.U(i, s))
    return value


def chern_restriction(B: BraneExpr, v: Sector, s: complex, z: complex, ctx: QContext) -> complex:
    """Orbifold elliptic Chern character on sector v: B pulled back by s -> q^c s"""
    return limit_value(B, ctx.qpow(Fraction(v.c)) * complex(s), z, ctx)


def brane_at_pole(B: BraneExpr, b, s0: complex, z: complex, ctx: QContext) -> complex:
    """
    Limit value of B at q^b s0: the Chern restriction on the sector {b},
    transported over floor(b) steps of s -> qs.
    """
    b = Fraction(b)
    steps = math.floor(b)
    c = b - steps
    base = limit_value(B, ctx.qpow(c) * complex(s0), z, ctx)
    if base == 0:
        return base
    return base * transport(B, ctx.qpow(c) * complex(s0), z, steps, ctx)


# ---------------------------------------------------------------------------
# Orbifold Euler pairing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerTerm:
    sector: Sector
    k: int
    m: int
    point: complex
    value: complex


SectorFunction = Callable[[Sector, int, complex], complex]


def orbifold_euler_terms(model: GLSMData, f: SectorFunction, ctx: QContext,
                         phase: int = None, sectors: Optional[List[Sector]] = None) -> List[EulerTerm]:
    """
    Weighted fixed-point contributions

        f_v(s0) / (|D_i| prod_{j != i, phase side, fixed in v} (1 - U_j(s0)))

    at s0 = zeta a_i^{-1/D_i}, in the order sector, coordinate, root.
    """
    side = model.phase_side(phase)
    terms: List[EulerTerm] = []
    for v in (box_sectors(model, phase) if sectors is None else sectors):
        fixed = [i for i in side if v.is_fixed(i)]
        for i in fixed:
            di = abs(model.weights[i])
            for m in range(di):
                s0 = model.root_point(i, m)
                denominator = complex(di)
                for j in fixed:
                    if j != i:
                        denominator *= 1 - complex(model.U(j, s0))
                if abs(denominator) < ctx.genericity_gap:
                    raise GenericityError(f"fixed points of coordinates {i} and another coincide")
                value = f(v, i, s0)
                terms.append(EulerTerm(v, i, m, s0, value / denominator if value != 0 else 0j))
    return terms


def pair_orbifold_euler(model: GLSMData, f: SectorFunction, ctx: QContext,
                        phase: int = None) -> complex:
    """Sum of orbifold_euler_terms in their fixed order"""
    return complex(sum((t.value for t in orbifold_euler_terms(model, f, ctx, phase)), 0j))
