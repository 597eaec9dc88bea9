#!/usr/bin/env python3
"""
q-difference operators sum_t c_t(q, a) z^{p_t} T_z^{e_t}, with T_z: z -> qz.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Sequence, Tuple

from qseries.context import QContext
from qseries.monomial import Monomial, parse_complex


@dataclass(frozen=True)
class OperatorTerm:
    coeff: Monomial
    z_power: int
    shift: int

    def to_json(self) -> Dict[str, Any]:
        return {'coeff': self.coeff.to_json(), 'zPower': self.z_power, 'shift': self.shift}


@dataclass(frozen=True)
class QDifferenceOperator:
    """Finite list of terms; equal terms are kept apart, never merged."""
    terms: Tuple[OperatorTerm, ...]
    equiv_params: Tuple[complex, ...] = field(default_factory=tuple)

    def shifts(self) -> List[int]:
        return sorted({t.shift for t in self.terms})

    def order(self) -> int:
        shifts = self.shifts()
        return shifts[-1] - shifts[0] if shifts else 0

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> Dict[str, Any]:
        return {
            'equivParams': [[a.real, a.imag] for a in self.equiv_params],
            'order': self.order(),
            'terms': [t.to_json() for t in self.terms],
        }

    @classmethod
    def from_json(cls, doc: Dict[str, Any]) -> 'QDifferenceOperator':
        terms = tuple(
            OperatorTerm(Monomial.from_json(t['coeff']), int(t['zPower']), int(t['shift']))
            for t in doc.get('terms', [])
        )
        return cls(terms, tuple(parse_complex(a) for a in doc.get('equivParams', [])))


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------

# A factor (1 - c T^e) is stored as the pair (c, e).
Binomial = Tuple[Monomial, int]


def expand_product(binomials: Iterable[Binomial]) -> List[Tuple[Monomial, int]]:
    """Expand prod (1 - c T^e) into (coefficient, shift) pairs without merging"""
    expanded: List[Tuple[Monomial, int]] = [(Monomial(), 0)]
    for coeff, shift in binomials:
        negated = Monomial(-coeff.const, coeff.a_exps, coeff.q_exp, coeff.s_exp, coeff.z_exp)
        expanded = [
            item
            for mono, e in expanded
            for item in ((mono, e), (mono * negated, e + shift))
        ]
    return expanded


def build_operator(left: Sequence[Binomial], right: Sequence[Binomial],
                   right_prefactor: Monomial, equiv_params: Sequence[complex]) -> QDifferenceOperator:
    """prod(left) - z * right_prefactor * prod(right)"""
    terms = [OperatorTerm(mono, 0, e) for mono, e in expand_product(left)]
    minus = Monomial(-right_prefactor.const, right_prefactor.a_exps, right_prefactor.q_exp)
    terms.extend(OperatorTerm(minus * mono, 1, e) for mono, e in expand_product(right))
    return QDifferenceOperator(tuple(terms), tuple(complex(a) for a in equiv_params))


# ---------------------------------------------------------------------------
# Application
# ---------------------------------------------------------------------------

def apply_operator(L: QDifferenceOperator, f: Callable[[complex], complex],
                   z: complex, ctx: QContext) -> complex:
    """sum_t c_t z^{p_t} f(q^{e_t} z); f is called once per distinct shift"""
    z = complex(z)
    values = {e: complex(f(ctx.q ** e * z)) for e in L.shifts()}
    total = complex(0.0)
    for term in L.terms:
        total += term.coeff.coefficient(L.equiv_params, ctx) * z ** term.z_power * values[term.shift]
    return total
