#!/usr/bin/env python3
"""
Level structures R = sum R_{l,m,n} a^l s^m w^n and their determinant twist.

sigma_R(beta) = sum R floor(m beta - n); the determinant factor is
(-1)^sigma prod [theta(x q^{-t}) / theta(x q^{1-{t}})]^R with x = a^l s^m and
t = m beta - n. The theta ratio is the closed-form shift of x q^{1-{t}} by
-floor(t) - 1, so it stays finite when x sits on the theta lattice.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from glsm.combinatorics import frac
from glsm.model import GLSMData
from qseries.context import QContext, cpow
from qseries.functions import theta_shift_factor


@dataclass(frozen=True)
class LevelTerm:
    a_exps: Tuple[int, ...]
    s_exp: int
    w_exp: int
    multiplicity: int

    def __post_init__(self):
        if self.multiplicity == 0:
            raise ValueError("level multiplicities must be nonzero")

    def character(self, equiv_params: Sequence[complex], s: complex) -> complex:
        value = cpow(s, self.s_exp)
        for a, e in zip(equiv_params, self.a_exps):
            if e:
                value *= cpow(a, e)
        return complex(value)


@dataclass(frozen=True)
class LevelStructure:
    terms: Tuple[LevelTerm, ...] = field(default_factory=tuple)

    @classmethod
    def dual_of_phase_side(cls, model: GLSMData, phase: int = None) -> 'LevelStructure':
        """R = V_+^dual (or V_-^dual): one term a_i^{-1} s^{-D_i} per phase-side coordinate"""
        terms = []
        for i in model.phase_side(phase):
            a_exps = tuple(-1 if j == i else 0 for j in range(model.size))
            terms.append(LevelTerm(a_exps, -model.weights[i], 0, 1))
        return cls(tuple(terms))

    def to_json(self) -> List[Dict[str, Any]]:
        return [{'aExponents': list(t.a_exps), 'sExponent': t.s_exp,
                 'wExponent': t.w_exp, 'multiplicity': t.multiplicity} for t in self.terms]

    @classmethod
    def from_json(cls, doc: List[Dict[str, Any]]) -> 'LevelStructure':
        return cls(tuple(
            LevelTerm(tuple(int(e) for e in t.get('aExponents', [])), int(t.get('sExponent', 0)),
                      int(t.get('wExponent', 0)), int(t.get('multiplicity', 1)))
            for t in doc
        ))


def _sigma(R: LevelStructure, beta: Fraction) -> int:
    return sum(t.multiplicity * math.floor(t.s_exp * Fraction(beta) - t.w_exp) for t in R.terms)


def level_sign(R: LevelStructure, beta) -> int:
    """(-1)^{sigma_R(beta)}"""
    return -1 if _sigma(R, beta) % 2 else 1


def level_det_factor(R: LevelStructure, beta, s: complex, equiv_params: Sequence[complex],
                     ctx: QContext) -> complex:
    """det f_* R at degree beta, restricted to s"""
    beta = Fraction(beta)
    value = complex(level_sign(R, beta))
    for term in R.terms:
        t = term.s_exp * beta - term.w_exp
        base = term.character(equiv_params, s) * ctx.qpow(1 - frac(t))
        ratio = theta_shift_factor(base, -math.floor(t) - 1, ctx)
        value *= ratio ** term.multiplicity
    return value


def level_value(R: LevelStructure, beta, s: complex, equiv_params: Sequence[complex],
                ctx: QContext) -> complex:
    """Full level twist: sign times determinant factor"""
    return level_sign(R, beta) * level_det_factor(R, beta, s, equiv_params, ctx)
