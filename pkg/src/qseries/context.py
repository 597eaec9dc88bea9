#!/usr/bin/env python3
"""Numerical regime shared by every kernel: q, truncation and tolerances."""

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

import numpy as np

from core.errors import DomainError

Exponent = Union[int, Fraction]

DEFAULT_PRODUCT_TERMS = 60
DEFAULT_TOL_ABS = 1e-12
DEFAULT_TOL_REL = 1e-10
DEFAULT_GENERICITY_GAP = 1e-6
DEFAULT_ZERO_TOL = 1e-9


def cpow(x, exponent: Exponent):
    """
    Principal-branch power x**exponent.

    Integer exponents use exact repeated multiplication; rational ones use
    exp(f*log x), which gives the real root when x is real positive.
    Accepts scalars or numpy arrays.
    """
    f = Fraction(exponent)
    if f.denominator == 1:
        n = int(f)
        if isinstance(x, np.ndarray):
            return np.asarray(x, dtype=complex) ** n
        if n == 0:
            return complex(1.0)
        return complex(x) ** n
    if isinstance(x, np.ndarray):
        return np.exp(float(f) * np.log(np.asarray(x, dtype=complex)))
    return cmath.exp(float(f) * cmath.log(complex(x)))


@dataclass(frozen=True)
class QContext:
    """
    The value of q together with the truncation order of infinite products
    and the tolerances every comparison uses.

    Attributes:
        q: nome with 0 < |q| < 1
        product_terms: number of factors kept in phi
        tol_abs: absolute tolerance for vanishing denominators
        tol_rel: relative tolerance for identities and doubling tests
        genericity_gap: minimum distance between distinct poles
        zero_tol: relative distance under which an argument counts as an
            exact point of the lattice q^Z
    """
    q: complex
    product_terms: int = DEFAULT_PRODUCT_TERMS
    tol_abs: float = DEFAULT_TOL_ABS
    tol_rel: float = DEFAULT_TOL_REL
    genericity_gap: float = DEFAULT_GENERICITY_GAP
    zero_tol: float = DEFAULT_ZERO_TOL

    def __post_init__(self):
        object.__setattr__(self, 'q', complex(self.q))
        modulus = abs(self.q)
        if not 0 < modulus < 1:
            raise DomainError(f"|q| must lie in (0, 1), got |q| = {modulus}")
        if int(self.product_terms) < 1:
            raise DomainError(f"product_terms must be >= 1, got {self.product_terms}")
        object.__setattr__(self, 'product_terms', int(self.product_terms))
        for name in ('tol_abs', 'tol_rel', 'genericity_gap', 'zero_tol'):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")

    @cached_property
    def qpowers(self) -> np.ndarray:
        """q**i for i < product_terms"""
        return self.q ** np.arange(self.product_terms)

    @cached_property
    def log_q(self) -> complex:
        return cmath.log(self.q)

    def qpow(self, exponent: Exponent) -> complex:
        """q**exponent on the principal branch"""
        return cpow(self.q, exponent)

    def phi_tail_bound(self, x_bound: float) -> float:
        """
        Bound on |phi_exact(x)/phi_truncated(x) - 1| for |x| <= x_bound.

        The dropped factors are 1 - q^i x with i >= product_terms, so the
        relative error is at most exp(S) - 1 with S = X|q|^P/(1-|q|).
        """
        modulus = abs(self.q)
        tail = abs(x_bound) * modulus ** self.product_terms / (1.0 - modulus)
        return float(np.expm1(tail))

    def with_overrides(self, **overrides) -> 'QContext':
        values = {
            'q': self.q,
            'product_terms': self.product_terms,
            'tol_abs': self.tol_abs,
            'tol_rel': self.tol_rel,
            'genericity_gap': self.genericity_gap,
            'zero_tol': self.zero_tol,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return QContext(**values)
