#!/usr/bin/env python3
"""
Shipped brane bases of the hypersurface family (D = (1, ..., 1, -r)).

Geometric phase:  E^{(+,k)} = theta(q a_k s/z) / theta(q a_k/z) * prod_{i != k} theta(q a_i s)
LG phase:         E^{(-,zeta)} = theta(w z/s) theta(a_N s^{-r}) / (theta(w z) theta(w/s)),
                  w = zeta^{-1} a_N^{1/r}, zeta = exp(2 pi i m/r) q^{l/r}
"""

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from branes.expr import BraneExpr, ThetaFactor
from core.errors import ModelShapeError
from glsm.model import GLSMData
from qseries.context import QContext, cpow
from qseries.monomial import Monomial, unit_vector


@dataclass(frozen=True)
class TorsionLabel:
    """Point zeta = exp(2 pi i m/r) q^{l/r} of the r-torsion of the curve"""
    m: int
    l: int
    r: int

    def inverse(self) -> 'TorsionLabel':
        """
        Label of the point where the LG brane with this label is supported.

        l is negated without reduction so the point is exactly w, not w q.
        """
        return TorsionLabel((-self.m) % self.r, -self.l, self.r)

    def value(self, ctx: QContext) -> complex:
        return cmath.exp(2j * cmath.pi * self.m / self.r) * ctx.qpow(Fraction(self.l, self.r))

    def __str__(self) -> str:
        return f"({self.m},{self.l})"


def torsion_labels(r: int) -> List[TorsionLabel]:
    """All r^2 labels 0 <= m, l < r"""
    return [TorsionLabel(m, l, r) for m in range(r) for l in range(r)]


def _require_hypersurface(model: GLSMData):
    if not model.is_hypersurface():
        raise ModelShapeError(
            f"{model.name}: basis branes need D = (1, ..., 1, -r), got {list(model.weights)}"
        )


def geometric_basis_brane(model: GLSMData, k: int) -> BraneExpr:
    """E^{(+,k)} for 0 <= k < N_+"""
    _require_hypersurface(model)
    if not 0 <= k < model.n_plus:
        raise ValueError(f"k must lie in [0, {model.n_plus}), got {k}")
    n = model.size
    factors = [
        ThetaFactor(a_exps=unit_vector(k, n), q_exp=1, s_exp=1, z_exp=-1, power=1),
        ThetaFactor(a_exps=unit_vector(k, n), q_exp=1, z_exp=-1, power=-1),
    ]
    factors.extend(
        ThetaFactor(a_exps=unit_vector(i, n), q_exp=1, s_exp=1, power=1)
        for i in range(model.n_plus) if i != k
    )
    return BraneExpr(tuple(factors), Monomial(), model.equiv_params, f"geometric[{k}]")


def lg_basis_brane(model: GLSMData, label: TorsionLabel) -> BraneExpr:
    """E^{(-,zeta)} for a torsion label with label.r = r"""
    _require_hypersurface(model)
    n = model.size
    N = n - 1
    r = -model.weights[N]
    if label.r != r:
        raise ValueError(f"torsion label of order {label.r} for a model with r = {r}")
    # w = zeta^{-1} a_N^{1/r}, kept symbolic in (a_N, q) so branches match root points
    w_const = cmath.exp(-2j * cmath.pi * label.m / r)
    w_a = unit_vector(N, n, 1)
    w_a = tuple(e / r for e in w_a)
    w_q = Fraction(-label.l, r)
    factors = (
        ThetaFactor(const=w_const, a_exps=w_a, q_exp=w_q, s_exp=-1, z_exp=1, power=1),
        ThetaFactor(a_exps=unit_vector(N, n), s_exp=-r, power=1),
        ThetaFactor(const=w_const, a_exps=w_a, q_exp=w_q, z_exp=1, power=-1),
        ThetaFactor(const=w_const, a_exps=w_a, q_exp=w_q, s_exp=-1, power=-1),
    )
    return BraneExpr(factors, Monomial(), model.equiv_params, f"lg{label}")


def lg_omega(model: GLSMData, label: TorsionLabel, ctx: QContext) -> complex:
    """w = zeta^{-1} a_N^{1/r}"""
    N = model.size - 1
    r = -model.weights[N]
    return (cmath.exp(-2j * cmath.pi * label.m / r) * ctx.qpow(Fraction(-label.l, r))
            * cpow(model.equiv_params[N], Fraction(1, r)))
