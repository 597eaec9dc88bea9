#!/usr/bin/env python3
"""
Elliptic branes as explicit quasi-periodic functions of (s, z).

A brane is a monomial prefactor times a product of theta factors
theta(c * prod a_i^{alpha_i} * q^kappa * s^m * z^e) ** power.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Tuple

import numpy as np

from core.errors import DomainError, PoleError
from glsm.model import GLSMData
from qseries.context import QContext
from qseries.functions import theta
from qseries.monomial import Monomial, format_fraction, parse_complex, parse_fraction


@dataclass(frozen=True)
class ThetaFactor:
    const: complex = 1.0
    a_exps: Tuple[Fraction, ...] = field(default_factory=tuple)
    q_exp: Fraction = Fraction(0)
    s_exp: Fraction = Fraction(0)
    z_exp: int = 0
    power: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'const', complex(self.const))
        object.__setattr__(self, 'a_exps', tuple(Fraction(e) for e in self.a_exps))
        object.__setattr__(self, 'q_exp', Fraction(self.q_exp))
        object.__setattr__(self, 's_exp', Fraction(self.s_exp))
        object.__setattr__(self, 'z_exp', int(self.z_exp))
        object.__setattr__(self, 'power', int(self.power))
        if self.power == 0:
            raise ValueError("theta factor power must be nonzero")

    @property
    def argument(self) -> Monomial:
        return Monomial(self.const, self.a_exps, self.q_exp, self.s_exp, self.z_exp)

    def couples_s_and_z(self) -> bool:
        return self.s_exp != 0 and self.z_exp != 0

    def to_json(self) -> Dict[str, Any]:
        return {
            'constCoeff': [self.const.real, self.const.imag],
            'aExponents': [format_fraction(e) for e in self.a_exps],
            'qExponent': format_fraction(self.q_exp),
            'sExponent': format_fraction(self.s_exp),
            'zExponent': self.z_exp,
            'power': self.power,
        }

    @classmethod
    def from_json(cls, doc: Dict[str, Any]) -> 'ThetaFactor':
        return cls(
            const=parse_complex(doc.get('constCoeff', 1.0)),
            a_exps=tuple(parse_fraction(e) for e in doc.get('aExponents', [])),
            q_exp=parse_fraction(doc.get('qExponent', 0)),
            s_exp=parse_fraction(doc.get('sExponent', 0)),
            z_exp=int(doc.get('zExponent', 0)),
            power=int(doc.get('power', 1)),
        )


@dataclass(frozen=True)
class BraneExpr:
    """Immutable brane; equiv_params are the a_i its exponents refer to."""
    factors: Tuple[ThetaFactor, ...] = field(default_factory=tuple)
    prefactor: Monomial = field(default_factory=Monomial)
    equiv_params: Tuple[complex, ...] = field(default_factory=tuple)
    label: str = ""

    def times(self, *factors: ThetaFactor, label: str = None) -> 'BraneExpr':
        return BraneExpr(self.factors + tuple(factors), self.prefactor,
                         self.equiv_params, self.label if label is None else label)

    def is_zero(self) -> bool:
        return self.prefactor.is_zero()


def unit_brane(model: GLSMData, label: str = "unit") -> BraneExpr:
    return BraneExpr((), Monomial(), model.equiv_params, label)


def zero_brane(model: GLSMData) -> BraneExpr:
    return BraneExpr((), Monomial(0.0), model.equiv_params, "zero")


# ---------------------------------------------------------------------------
# Evaluation and quasi-periodicity
# ---------------------------------------------------------------------------

def factor_argument(B: BraneExpr, factor: ThetaFactor, s, z, ctx: QContext):
    return factor.argument.evaluate(B.equiv_params, ctx, s, z)


def eval_brane(B: BraneExpr, s, z, ctx: QContext):
    """
    Product of the theta factors and the prefactor at (s, z).

    Raises PoleError when a negative-power factor is below tol_abs.
    """
    shape = np.broadcast(np.asarray(s), np.asarray(z)).shape
    if B.is_zero():
        return np.zeros(shape, dtype=complex) if shape else complex(0.0)
    value = B.prefactor.evaluate(B.equiv_params, ctx, s, z)
    for factor in B.factors:
        t = theta(factor_argument(B, factor, s, z, ctx), ctx)
        if factor.power < 0 and np.any(np.abs(t) < ctx.tol_abs):
            raise PoleError(f"brane {B.label or '?'}: denominator theta vanishes")
        value = value * t ** factor.power
    return value


def s_shift_factor(B: BraneExpr) -> Monomial:
    """
    Monomial M with B(q s, z) = M(s, z) B(s, z).

    theta(X)^p with X proportional to s^m contributes
    ((-1)^m X^{-m} q^{-m(m-1)/2})^p; the prefactor contributes q^{sigma}.
    """
    result = Monomial(1.0, (), B.prefactor.s_exp)
    for factor in B.factors:
        if factor.s_exp.denominator != 1:
            raise DomainError(f"factor with s-exponent {factor.s_exp} is not "
                              f"quasi-periodic under s -> qs")
        m = int(factor.s_exp)
        if m == 0:
            continue
        arg = factor.argument
        shift = Monomial(
            const=(-1) ** m * arg.const ** (-m),
            a_exps=tuple(-m * e for e in arg.a_exps),
            q_exp=-m * arg.q_exp - Fraction(m * (m - 1), 2),
            s_exp=-m * arg.s_exp,
            z_exp=-m * arg.z_exp,
        )
        result = result * shift ** factor.power
    return result


def transport(B: BraneExpr, s: complex, z: complex, steps: int, ctx: QContext) -> complex:
    """B(q^steps s, z) / B(s, z) assembled from the shift monomial"""
    monomial = s_shift_factor(B)
    ratio = complex(1.0)
    if steps >= 0:
        for t in range(steps):
            ratio *= monomial.evaluate(B.equiv_params, ctx, ctx.q ** t * s, z)
    else:
        for t in range(1, -steps + 1):
            ratio /= monomial.evaluate(B.equiv_params, ctx, ctx.q ** (-t) * s, z)
    return ratio


# ---------------------------------------------------------------------------
# Grade restriction and wall crossing
# ---------------------------------------------------------------------------

def check_grade_restriction(B: BraneExpr, model: GLSMData, phase: int = None) -> bool:
    """
    Degree accounting of the grade restriction rule.

    The quadratic s-degree sum(power * m^2) must equal sum D_i^2 over the
    phase side, the mixed degree sum(power * m * e) must be -1, and exactly
    one factor may couple s and z.
    """
    quadratic = sum(f.power * f.s_exp ** 2 for f in B.factors)
    mixed = sum(f.power * f.s_exp * f.z_exp for f in B.factors)
    coupling = sum(1 for f in B.factors if f.couples_s_and_z())
    target = sum(model.weights[i] ** 2 for i in model.phase_side(phase))
    return quadratic == target and mixed == -1 and coupling == 1


def wall_cross(B: BraneExpr) -> BraneExpr:
    """B * theta(s^{-1} z^{-1}) / theta(z^{-1})"""
    return B.times(
        ThetaFactor(s_exp=-1, z_exp=-1, power=1),
        ThetaFactor(z_exp=-1, power=-1),
        label=f"wall_cross({B.label})" if B.label else "wall_cross",
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def brane_to_json(B: BraneExpr) -> Dict[str, Any]:
    return {
        'label': B.label,
        'equivParams': [[a.real, a.imag] for a in B.equiv_params],
        'prefactor': B.prefactor.to_json(),
        'factors': [f.to_json() for f in B.factors],
    }


def brane_from_json(doc: Dict[str, Any], equiv_params: Iterable[complex] = None) -> BraneExpr:
    """equiv_params from the document win; the model's are the fallback"""
    params = doc.get('equivParams')
    params = tuple(parse_complex(a) for a in params) if params else tuple(equiv_params or ())
    prefactor = Monomial.from_json(doc['prefactor']) if 'prefactor' in doc else Monomial()
    factors = tuple(ThetaFactor.from_json(f) for f in doc.get('factors', []))
    return BraneExpr(factors, prefactor, params, doc.get('label', 'custom'))
