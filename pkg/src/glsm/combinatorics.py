#!/usr/bin/env python3
"""
Exact combinatorics of the model: effective degrees, Box sectors, the
degrees d_i(beta), ages, teardrop Euler characteristics and the
deformation/obstruction weights of fixed quasimaps.

Degrees are Fractions throughout; a signed degree b equals beta in the +
phase and -beta in the - phase, so that poles of the Gamma factor sit at
q^b times a root point in both phases.
"""

import math
from fractions import Fraction
from typing import List, Tuple

from glsm.model import GLSMData, PLUS, Sector
from qseries.context import QContext, cpow

DegreeClass = Fraction

# (sign, q-exponent) pairs of a teardrop Euler characteristic
EulerTerms = List[Tuple[int, Fraction]]
# (coordinate, s-exponent D_i, q-exponent)
WeightList = List[Tuple[int, int, Fraction]]


def frac(x: Fraction) -> Fraction:
    """Fractional part in [0, 1)"""
    return Fraction(x) - math.floor(Fraction(x))


def is_nonnegative_integer(x: Fraction) -> bool:
    return Fraction(x).denominator == 1 and x >= 0


def signed_degree(beta: DegreeClass, phase: int) -> Fraction:
    return Fraction(beta) if phase == PLUS else -Fraction(beta)


# ---------------------------------------------------------------------------
# Degrees
# ---------------------------------------------------------------------------

def d_of(model: GLSMData, i: int, beta: DegreeClass) -> Fraction:
    """d_i(beta) = D_i beta - q_i/2; beta may be a signed degree"""
    return model.weights[i] * Fraction(beta) - model.r_charges[i] / 2


def pole_coordinates(model: GLSMData, b: Fraction, phase: int = None) -> List[int]:
    """Phase-side coordinates k with d_k(b) a nonnegative integer"""
    return [k for k in model.phase_side(phase) if is_nonnegative_integer(d_of(model, k, b))]


def pole_degrees(model: GLSMData, beta: DegreeClass, phase: int = None) -> Tuple[Fraction, List[Fraction]]:
    """Signed degree b of beta and the degrees d_i(b) of every coordinate"""
    phase = model.phase if phase is None else phase
    b = signed_degree(beta, phase)
    return b, [d_of(model, i, b) for i in range(model.size)]


def effective_classes(model: GLSMData, max_beta, phase: int = None) -> List[DegreeClass]:
    """
    Degrees beta <= max_beta at which some phase-side coordinate has a pole.

    With vanishing phase-side R-charges this is the union of the lattices
    (1/|D_i|) Z_{>=0}.
    """
    phase = model.phase if phase is None else phase
    max_beta = Fraction(max_beta)
    if max_beta < 0:
        return []
    found = set()
    for k in model.phase_side(phase):
        dk = abs(model.weights[k])
        j = 0
        while True:
            beta = (j + model.r_charges[k] / 2) / dk
            if beta > max_beta:
                break
            found.add(beta)
            j += 1
    return sorted(found)


# ---------------------------------------------------------------------------
# Sectors and ages
# ---------------------------------------------------------------------------

def sector_for(model: GLSMData, c: Fraction) -> Sector:
    c = frac(c)
    fixed = frozenset(i for i, d in enumerate(model.weights) if (c * d).denominator == 1)
    return Sector(c=c, fixed_coords=fixed)


def box_sectors(model: GLSMData, phase: int = None) -> List[Sector]:
    """Sectors c = m/|D_i| for phase-side i, deduplicated and sorted"""
    values = set()
    for i in model.phase_side(phase):
        dk = abs(model.weights[i])
        values.update(Fraction(m, dk) for m in range(dk))
    return [sector_for(model, c) for c in sorted(values)]


def sector_of_degree(model: GLSMData, beta: DegreeClass) -> Sector:
    """The sector with c = beta mod 1"""
    return sector_for(model, Fraction(beta))


def age(model: GLSMData, v: Sector, i: int) -> Fraction:
    """Age {c D_i} of the i-th coordinate line on sector v"""
    return frac(v.c * model.weights[i])


# ---------------------------------------------------------------------------
# Teardrop line bundles
# ---------------------------------------------------------------------------

def teardrop_euler(n: int, a: int) -> EulerTerms:
    """
    Euler characteristic of O(n/a) on the teardrop P(a:1) as signed
    q-exponents. Cohomology vanishes for n in [-a, -1].
    """
    if a < 1:
        raise ValueError(f"orbifold order must be >= 1, got {a}")
    x = Fraction(n, a)
    fx = frac(x)
    fl = math.floor(x)
    if n >= 0:
        return [(1, -fx - k) for k in range(fl + 1)]
    if n >= -a:
        return []
    return [(-1, k + 1 - fx) for k in range(-fl - 1)]


def euler_value(terms: EulerTerms, q: complex) -> complex:
    """Evaluate signed q-exponent terms at a numeric q"""
    return sum(sign * cpow(q, e) for sign, e in terms) if terms else complex(0.0)


def teardrop_euler_rational(x: Fraction, q: complex) -> complex:
    """q^{-{x}}/(1 - q^{-1}) + q^{-x}/(1 - q)"""
    x = Fraction(x)
    return cpow(q, -frac(x)) / (1 - 1 / q) + cpow(q, -x) / (1 - q)


def def_obs_weights(model: GLSMData, beta: DegreeClass) -> Tuple[WeightList, WeightList]:
    """
    Deformation weights V_beta and obstruction weights W_beta.

    Coordinate i contributes q-exponents -k - {d} for 0 <= k <= floor(d) when
    d = d_i(beta) >= 0, and k + 1 - {d} for 0 <= k <= -floor(d) - 2 to W.
    """
    deformations: WeightList = []
    obstructions: WeightList = []
    for i, dk in enumerate(model.weights):
        d = d_of(model, i, beta)
        fd = frac(d)
        fl = math.floor(d)
        if d >= 0:
            deformations.extend((i, dk, -k - fd) for k in range(fl + 1))
        obstructions.extend((i, dk, k + 1 - fd) for k in range(-fl - 1))
    return deformations, obstructions


def teardrop_determinant(x: Fraction, a: complex, ctx: QContext) -> complex:
    """
    Determinant line of the teardrop cohomology with character a:
    (a q^{-{x}})^{floor(x)+1} q^{-floor(x)(floor(x)+1)/2}.

    Agrees with theta(-a q^{-x}) / theta(-a q^{1-{x}}) for every rational x.
    """
    x = Fraction(x)
    fl = math.floor(x)
    return (complex(a) * ctx.qpow(-frac(x))) ** (fl + 1) * ctx.q ** (-(fl * (fl + 1) // 2))
