#!/usr/bin/env python3
"""The quantum q-difference operator of a model in either phase."""

from fractions import Fraction
from typing import List

from glsm.model import GLSMData, PLUS
from qde.operator import Binomial, QDifferenceOperator, build_operator
from qseries.monomial import Monomial, unit_vector
from utils.logger import Logger


def qde_operator(model: GLSMData, phase: int = None) -> QDifferenceOperator:
    """
    Phase +:
        prod_{i<=N+} prod_{k=1}^{D_i} (1 - q^{k - q_i/2 - D_i} a_i T^{D_i})
        - z prod_{i>N+} prod_{k=0}^{|D_i|-1} (1 - q^{k + q_i/2} a_i^{-1} T^{-D_i})

    Phase -:
        prod_{i<=N+} prod_{k=0}^{D_i-1} (1 - q^{k + q_i/2} a_i^{-1} T^{-D_i})
        - z q^kappa prod_{i>N+} prod_{k=0}^{|D_i|-1} (1 - q^{-k - q_i/2} a_i T^{D_i})
    with kappa = sum_{i>N+} |D_i| (q_i/2 - 1).
    """
    phase = model.phase if phase is None else phase
    n = model.size
    positive = model.phase_side(PLUS)
    negative = [i for i in range(n) if i not in positive]
    left: List[Binomial] = []
    right: List[Binomial] = []

    if phase == PLUS:
        for i in positive:
            d, half = model.weights[i], model.r_charges[i] / 2
            for k in range(1, d + 1):
                left.append((Monomial(1.0, unit_vector(i, n), Fraction(k) - half - d), d))
        for i in negative:
            d, half = model.weights[i], model.r_charges[i] / 2
            for k in range(-d):
                right.append((Monomial(1.0, unit_vector(i, n, -1), k + half), -d))
        prefactor = Monomial()
    else:
        for i in positive:
            d, half = model.weights[i], model.r_charges[i] / 2
            for k in range(d):
                left.append((Monomial(1.0, unit_vector(i, n, -1), k + half), -d))
        kappa = Fraction(0)
        for i in negative:
            d, half = model.weights[i], model.r_charges[i] / 2
            kappa += -d * (half - 1)
            for k in range(-d):
                right.append((Monomial(1.0, unit_vector(i, n), -k - half), d))
        prefactor = Monomial(1.0, (), kappa)

    operator = build_operator(left, right, prefactor, model.equiv_params)
    Logger.debug(f"QqDE for {model.name} phase {'+' if phase == PLUS else '-'}: "
                 f"{len(operator)} terms, order {operator.order()}")
    return operator
