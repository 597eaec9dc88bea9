#!/usr/bin/env python3
"""
Pole lattice of the q-Gamma factor.

phi(U_k q^{q_k/2}) vanishes at s = q^b s0 whenever d_k(b) is a nonnegative
integer, s0 = zeta a_k^{-1/D_k}. In the + phase b = beta >= 0 and the poles
accumulate at s = 0; in the - phase b = -beta and they run off to infinity.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List

import numpy as np

from core.errors import GenericityError
from glsm.combinatorics import effective_classes, pole_coordinates, signed_degree
from glsm.model import GLSMData, MINUS, PLUS, phase_symbol
from qseries.context import QContext
from utils.logger import Logger


@dataclass(frozen=True)
class PoleSpec:
    location: complex
    k: int
    beta: Fraction
    b: Fraction
    m: int
    order: int = 1

    def to_json(self) -> dict:
        return {
            'location': [self.location.real, self.location.imag],
            'k': self.k,
            'beta': str(self.beta),
            'b': str(self.b),
            'm': self.m,
            'order': self.order,
        }


def enumerate_poles(model: GLSMData, phase: int, max_beta, ctx: QContext,
                    check_genericity: bool = True) -> List[PoleSpec]:
    """
    All poles q^b s0(k, m) with k on the phase side, 0 <= beta <= max_beta
    and 0 <= m < |D_k|, ordered by beta, then k, then m.
    """
    phase = model.phase if phase is None else phase
    poles: List[PoleSpec] = []
    for beta in effective_classes(model, max_beta, phase):
        b = signed_degree(beta, phase)
        for k in pole_coordinates(model, b, phase):
            for m in range(abs(model.weights[k])):
                location = ctx.qpow(b) * model.root_point(k, m)
                poles.append(PoleSpec(location, k, beta, b, m))
    if check_genericity:
        check_separation(poles, ctx)
    Logger.debug(f"{model.name}: {len(poles)} poles in phase {phase_symbol(phase)} "
                 f"up to beta={max_beta}")
    return poles


def check_separation(poles: List[PoleSpec], ctx: QContext):
    """Relative pairwise distance of the pole locations must exceed the genericity gap"""
    if len(poles) < 2:
        return
    points = np.array([p.location for p in poles], dtype=complex)
    distance = np.abs(points[:, None] - points[None, :])
    scale = np.maximum(np.abs(points)[:, None], np.abs(points)[None, :])
    np.fill_diagonal(distance, np.inf)
    close = np.argwhere(distance < ctx.genericity_gap * scale)
    if close.size:
        i, j = close[0]
        raise GenericityError(
            f"poles (k={poles[i].k}, beta={poles[i].beta}) and (k={poles[j].k}, "
            f"beta={poles[j].beta}) coincide at s={points[i]:.6g}"
        )


def first_pole_modulus(model: GLSMData, phase: int, ctx: QContext) -> float:
    """
    Modulus of the phase's first pole layer on the contour side: the largest
    one of the + lattice, the smallest one of the - lattice.
    """
    moduli = []
    for k in model.phase_side(phase):
        b = Fraction(model.r_charges[k], 2 * model.weights[k])
        moduli.append(abs(ctx.qpow(b) * model.root_point(k, 0)))
    return max(moduli) if phase == PLUS else min(moduli)


def default_contour_radius(model: GLSMData, ctx: QContext) -> float:
    """
    Geometric mean of the outermost + pole and the innermost - pole.

    Raises GenericityError when the two lattices overlap.
    """
    inner = first_pole_modulus(model, PLUS, ctx)
    outer = first_pole_modulus(model, MINUS, ctx)
    if inner >= outer:
        raise GenericityError(
            f"no annulus separates the pole lattices: |s| = {inner:.6g} vs {outer:.6g}"
        )
    return float(np.sqrt(inner * outer))


def residue_radius(pole: PoleSpec, neighbours: List[PoleSpec], model: GLSMData,
                   ctx: QContext) -> float:
    """
    Circle radius around a pole: a quarter of the smaller of the lattice
    spacing |s0| (1 - |q|^{1/Dmax}) and the distance to the nearest other pole.
    """
    spacing = abs(pole.location) * (1 - abs(ctx.q) ** (1 / model.max_weight))
    others = [abs(p.location - pole.location) for p in neighbours if p is not pole
              and p.location != pole.location]
    nearest = min(others) if others else spacing
    return 0.25 * min(spacing, nearest)
