#!/usr/bin/env python3
"""Monomials c * prod a_i^{alpha_i} * q^kappa * s^sigma * z^e with rational exponents."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from qseries.context import QContext, cpow


def parse_fraction(value) -> Fraction:
    """Accept ints, Fractions and strings such as "3/2"."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10 ** 6)
    return Fraction(str(value).strip())


def format_fraction(value: Fraction) -> str:
    return str(Fraction(value))


def parse_complex(value) -> complex:
    """[re, im] pairs or plain numbers"""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex value must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def _pad(exps: Sequence[Fraction], n: int) -> Tuple[Fraction, ...]:
    exps = tuple(Fraction(e) for e in exps)
    return exps + (Fraction(0),) * (n - len(exps))


@dataclass(frozen=True)
class Monomial:
    """
    const * prod_i a_i^{a_exps[i]} * q^{q_exp} * s^{s_exp} * z^{z_exp}.

    Missing trailing a-exponents count as zero.
    """
    const: complex = 1.0
    a_exps: Tuple[Fraction, ...] = field(default_factory=tuple)
    q_exp: Fraction = Fraction(0)
    s_exp: Fraction = Fraction(0)
    z_exp: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 'const', complex(self.const))
        object.__setattr__(self, 'a_exps', tuple(Fraction(e) for e in self.a_exps))
        for name in ('q_exp', 's_exp', 'z_exp'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __mul__(self, other: 'Monomial') -> 'Monomial':
        n = max(len(self.a_exps), len(other.a_exps))
        a_exps = tuple(x + y for x, y in zip(_pad(self.a_exps, n), _pad(other.a_exps, n)))
        return Monomial(self.const * other.const, a_exps, self.q_exp + other.q_exp,
                        self.s_exp + other.s_exp, self.z_exp + other.z_exp)

    def __pow__(self, power: int) -> 'Monomial':
        power = int(power)
        return Monomial(self.const ** power, tuple(e * power for e in self.a_exps),
                        self.q_exp * power, self.s_exp * power, self.z_exp * power)

    def is_zero(self) -> bool:
        return self.const == 0

    def coefficient(self, equiv_params: Sequence[complex], ctx: QContext) -> complex:
        """Value of the s- and z-free part"""
        value = self.const
        if value == 0:
            return complex(0.0)
        for a, e in zip(equiv_params, self.a_exps):
            if e:
                value *= cpow(a, e)
        if self.q_exp:
            value *= ctx.qpow(self.q_exp)
        return complex(value)

    def evaluate(self, equiv_params: Sequence[complex], ctx: QContext, s=1.0, z=1.0):
        """Evaluate at (s, z); either may be a numpy array."""
        value = self.coefficient(equiv_params, ctx)
        if self.s_exp:
            value = value * cpow(s if np.ndim(s) == 0 else np.asarray(s, dtype=complex), self.s_exp)
        if self.z_exp:
            value = value * cpow(z if np.ndim(z) == 0 else np.asarray(z, dtype=complex), self.z_exp)
        if np.ndim(value) == 0 and (np.ndim(s) or np.ndim(z)):
            shape = np.broadcast(np.asarray(s), np.asarray(z)).shape
            value = np.full(shape, value, dtype=complex)
        return value

    def to_json(self) -> Dict[str, Any]:
        return {
            'const': [self.const.real, self.const.imag],
            'aExponents': [format_fraction(e) for e in self.a_exps],
            'qExponent': format_fraction(self.q_exp),
            'sExponent': format_fraction(self.s_exp),
            'zExponent': format_fraction(self.z_exp),
        }

    @classmethod
    def from_json(cls, doc: Dict[str, Any]) -> 'Monomial':
        return cls(
            const=parse_complex(doc.get('const', 1.0)),
            a_exps=tuple(parse_fraction(e) for e in doc.get('aExponents', [])),
            q_exp=parse_fraction(doc.get('qExponent', 0)),
            s_exp=parse_fraction(doc.get('sExponent', 0)),
            z_exp=parse_fraction(doc.get('zExponent', 0)),
        )


def unit_vector(index: int, length: int, value: int = 1) -> Tuple[Fraction, ...]:
    """a-exponent vector with a single nonzero entry"""
    exps = [Fraction(0)] * length
    exps[index] = Fraction(value)
    return tuple(exps)
