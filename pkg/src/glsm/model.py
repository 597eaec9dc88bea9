#!/usr/bin/env python3
"""
Model data of a GLSM with one-dimensional gauge group.

Coordinates are indexed from 0. Weights are ordered with the N_+ positive
weights first and the negative ones after them.
"""

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Sequence, Tuple

from core.errors import ConfigError
from qseries.context import cpow

PLUS = 1
MINUS = -1


def parse_phase(value) -> int:
    """Accept +1/-1 or the strings "+", "-", "−"."""
    if value in (PLUS, MINUS):
        return int(value)
    text = str(value).strip()
    if text in ('+', '+1', 'plus'):
        return PLUS
    if text in ('-', '−', '-1', 'minus'):
        return MINUS
    raise ConfigError(f"phase must be '+' or '-', got {value!r}")


def phase_symbol(phase: int) -> str:
    return '+' if phase == PLUS else '-'


@dataclass(frozen=True)
class Sector:
    """
    Component of the inertia stack: g(v) = exp(2 pi i c).

    fixed_coords are the coordinates with c * D_i integral; order is the
    order of g(v).
    """
    c: Fraction
    fixed_coords: FrozenSet[int] = field(default_factory=frozenset)

    @property
    def order(self) -> int:
        return Fraction(self.c).denominator

    def is_fixed(self, i: int) -> bool:
        return i in self.fixed_coords


@dataclass(frozen=True)
class GLSMData:
    """
    Weights D_i, R-charges q_i and generic equivariant parameters a_i.

    The R-charges are stored exactly as they enter the exponents q^{q_i/2}.
    """
    weights: Tuple[int, ...]
    r_charges: Tuple[Fraction, ...]
    equiv_params: Tuple[complex, ...]
    phase: int = PLUS
    name: str = "model"

    def __post_init__(self):
        object.__setattr__(self, 'weights', tuple(int(d) for d in self.weights))
        object.__setattr__(self, 'r_charges', tuple(Fraction(r) for r in self.r_charges))
        object.__setattr__(self, 'equiv_params', tuple(complex(a) for a in self.equiv_params))
        object.__setattr__(self, 'phase', parse_phase(self.phase))

        n = len(self.weights)
        if len(self.r_charges) != n or len(self.equiv_params) != n:
            raise ConfigError(
                f"weights, rCharges and equivParams must have equal length "
                f"({n}, {len(self.r_charges)}, {len(self.equiv_params)})"
            )
        if any(d == 0 for d in self.weights):
            raise ConfigError(f"weights must be nonzero, got {self.weights}")
        n_plus = sum(1 for d in self.weights if d > 0)
        if not 0 < n_plus < n:
            raise ConfigError("both signs of weights are required (0 < N_+ < N)")
        if any(d < 0 for d in self.weights[:n_plus]):
            raise ConfigError(f"positive weights must come first, got {self.weights}")
        if any(r < 0 for r in self.r_charges):
            raise ConfigError(f"R-charges must be nonnegative, got {self.r_charges}")
        if any(a == 0 for a in self.equiv_params):
            raise ConfigError("equivariant parameters must be nonzero")

    # ------------------------------------------------------------------
    # Shape
    # ------------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def n_plus(self) -> int:
        return sum(1 for d in self.weights if d > 0)

    def phase_side(self, phase: int = None) -> List[int]:
        """Coordinates whose weight has the sign of the phase"""
        phase = self.phase if phase is None else phase
        if phase == PLUS:
            return list(range(self.n_plus))
        return list(range(self.n_plus, self.size))

    def is_hypersurface(self) -> bool:
        """D_i = 1 on the positive side and a single negative weight"""
        return (self.n_plus == self.size - 1
                and all(d == 1 for d in self.weights[:self.n_plus]))

    @property
    def max_weight(self) -> int:
        return max(abs(d) for d in self.weights)

    # ------------------------------------------------------------------
    # Characters
    # ------------------------------------------------------------------

    def U(self, i: int, s):
        """U_i = a_i^{-1} s^{-D_i}"""
        return cpow(s, -self.weights[i]) / self.equiv_params[i]

    def root_point(self, k: int, m: int) -> complex:
        """zeta * a_k^{-1/D_k} with zeta = exp(2 pi i m / |D_k|); U_k equals 1 there"""
        dk = self.weights[k]
        zeta = cmath.exp(2j * cmath.pi * (m % abs(dk)) / abs(dk))
        return zeta * cpow(self.equiv_params[k], Fraction(-1, dk))

    def describe(self) -> str:
        return (f"{self.name}: D={list(self.weights)}, "
                f"q={[str(r) for r in self.r_charges]}, phase {phase_symbol(self.phase)}")

    def with_phase(self, phase) -> 'GLSMData':
        return GLSMData(self.weights, self.r_charges, self.equiv_params, phase, self.name)


def hypersurface_model(n: int, r: int, equiv_params: Sequence[complex],
                       name: str = None) -> GLSMData:
    """n coordinates of weight 1 and one of weight -r with R-charge 2"""
    return GLSMData(
        weights=(1,) * n + (-r,),
        r_charges=(Fraction(0),) * n + (Fraction(2),),
        equiv_params=tuple(equiv_params),
        phase=PLUS,
        name=name or f"hypersurface_n{n}_r{r}",
    )
