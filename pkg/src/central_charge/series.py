#!/usr/bin/env python3
"""
Central charges stored as prefactored series.

A component collects the contributions of one fixed point (k, m) in one
fractional-degree class c. Its value at z is

    theta(1/z) / theta(q^{-c} * prefactor_arg / z) * sum_n coeff_n z^n

where n = floor(b) for the signed degree b of the pole. prefactor_arg is
1/s0 for the root point s0, so the prefactor picks up q^b s0 under z -> qz.

Pole contributions are functions of z. They are turned into coefficients by
dividing out z^n times the prefactor at a fixed generic point Z_REF; for
grade-restricted branes the quotient does not depend on z.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from branes.basis import TorsionLabel, lg_omega
from branes.expr import BraneExpr, check_grade_restriction
from central_charge.hfunction import (brane_at_pole, hk_coefficient, orbifold_euler_terms)
from central_charge.level import LevelStructure, level_value
from core.errors import ConfigError
from glsm.combinatorics import (effective_classes, frac, is_nonnegative_integer, d_of,
                                pole_coordinates, sector_for, signed_degree)
from glsm.model import GLSMData, MINUS, PLUS, phase_symbol
from qseries.context import QContext
from qseries.functions import phi, q_factorial, theta
from utils.logger import Logger
from utils.parallel import ordered_map

Z_REF = complex(0.537, 0.291)

ComponentKey = Tuple[int, int, Fraction]


@dataclass
class SeriesComponent:
    k: int
    m: int
    frac_shift: Fraction
    prefactor_arg: complex
    coeffs: Dict[int, complex] = field(default_factory=dict)
    label: str = ""

    @property
    def key(self) -> ComponentKey:
        return (self.k, self.m, self.frac_shift)

    def prefactor(self, z, ctx: QContext):
        """theta(1/z) / theta(q^{-c} c_arg / z)"""
        z = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
        return theta(1 / z, ctx) / theta(ctx.qpow(-self.frac_shift) * self.prefactor_arg / z, ctx)

    def add(self, n: int, value: complex):
        self.coeffs[n] = self.coeffs.get(n, 0j) + value

    def ordered_powers(self) -> List[int]:
        """Powers by increasing |n|, the order in which terms shrink"""
        return sorted(self.coeffs, key=lambda n: (abs(n), n))


@dataclass
class CentralChargeSeries:
    components: List[SeriesComponent] = field(default_factory=list)
    direction: int = PLUS
    meta: Dict[str, Any] = field(default_factory=dict)

    def component(self, key: ComponentKey) -> Optional[SeriesComponent]:
        for comp in self.components:
            if comp.key == key:
                return comp
        return None

    def sorted_components(self) -> List[SeriesComponent]:
        return sorted(self.components, key=lambda comp: comp.key)

    def coefficient_table(self) -> List[Tuple[str, int, complex]]:
        """Rows (component id, n, coeff) in sorted key order"""
        rows = []
        for comp in self.sorted_components():
            cid = component_id(comp)
            rows.extend((cid, n, comp.coeffs[n]) for n in sorted(comp.coeffs))
        return rows


def component_id(comp: SeriesComponent) -> str:
    return f"k{comp.k}_m{comp.m}_c{comp.frac_shift}"


def component_for_pole(series: CentralChargeSeries, model: GLSMData, k: int, m: int,
                       b: Fraction, label: str = "") -> SeriesComponent:
    """Component of the pole at q^b s0(k, m), created on first use"""
    key = (k, m, frac(b))
    comp = series.component(key)
    if comp is None:
        comp = SeriesComponent(k, m, frac(b), 1 / model.root_point(k, m), label=label)
        series.components.append(comp)
    return comp


def coefficient_from_value(comp: SeriesComponent, n: int, value: complex, ctx: QContext,
                           z_ref: complex = Z_REF) -> complex:
    """Divide a pole contribution evaluated at z_ref by z_ref^n times the prefactor"""
    if value == 0:
        return 0j
    return value / (z_ref ** n * comp.prefactor(z_ref, ctx))


def require_grade_restriction(model: GLSMData, B: BraneExpr, phase: int):
    """
    Coefficients are read off at the single point Z_REF, which needs the
    z-dependence of every pole contribution to be that of the prefactor.
    That holds for grade-restricted branes; the level does not enter.
    """
    if B.is_zero():
        return
    if not check_grade_restriction(B, model, phase):
        raise ConfigError(f"brane {B.label or 'custom'} is not grade restricted in phase "
                          f"{phase_symbol(phase)} of {model.name}; its residues do not "
                          f"factor through the series prefactor")


# ---------------------------------------------------------------------------
# Assembly from H-function coefficients and brane restrictions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoleTask:
    beta: Fraction
    b: Fraction
    k: int
    m: int


def _pole_tasks(model: GLSMData, max_beta, phase: int) -> List[PoleTask]:
    tasks = []
    for beta in effective_classes(model, max_beta, phase):
        b = signed_degree(beta, phase)
        for k in pole_coordinates(model, b, phase):
            tasks.extend(PoleTask(beta, b, k, m) for m in range(abs(model.weights[k])))
    return tasks


def pole_contribution(model: GLSMData, B: BraneExpr, R: LevelStructure, default: LevelStructure,
                      task: PoleTask, z: complex, ctx: QContext, phase: int) -> complex:
    """
    Residue of ds/s Gamma_q E_z at q^b s0, up to the orientation sign of the phase:

        hk(b, R, s0) E(q^b s0) / (|D_k| level_default(b) prod_{j != k} (1 - U_j(s0)))

    with j over the phase-side coordinates fixed in the sector of b.
    """
    s0 = model.root_point(task.k, task.m)
    brane = brane_at_pole(B, task.b, s0, z, ctx)
    if brane == 0:
        return 0j
    sector = sector_for(model, task.b)
    value = hk_coefficient(model, task.b, R, s0, ctx, phase) * brane
    value /= abs(model.weights[task.k]) * level_value(default, task.b, s0, model.equiv_params, ctx)
    for j in model.phase_side(phase):
        if j != task.k and sector.is_fixed(j):
            value /= 1 - complex(model.U(j, s0))
    return value


def central_charge_series(model: GLSMData, B: BraneExpr, R: Optional[LevelStructure],
                          max_beta, ctx: QContext, phase: int = None,
                          z_ref: complex = Z_REF) -> CentralChargeSeries:
    """
    Z(B, R) degree by degree, one contribution per pole q^b s0 of the Gamma
    factor on the phase side, assembled in sorted pole order.
    """
    phase = model.phase if phase is None else phase
    require_grade_restriction(model, B, phase)
    default = LevelStructure.dual_of_phase_side(model, phase)
    R = default if R is None else R
    tasks = _pole_tasks(model, max_beta, phase)
    Logger.debug(f"central charge of {B.label}: {len(tasks)} poles up to beta={max_beta} "
                 f"in phase {phase_symbol(phase)}")

    values = ordered_map(
        lambda task: pole_contribution(model, B, R, default, task, z_ref, ctx, phase), tasks
    )
    series = CentralChargeSeries(direction=phase,
                                 meta=_meta(model, B, max_beta, phase, 'assembly', z_ref))
    for task, value in zip(tasks, values):
        comp = component_for_pole(series, model, task.k, task.m, task.b)
        n = math.floor(task.b)
        comp.add(n, coefficient_from_value(comp, n, value, ctx, z_ref))
    return series


def pairing_series(model: GLSMData, B: BraneExpr, R: Optional[LevelStructure], max_beta,
                   ctx: QContext, phase: int = None,
                   z_ref: complex = Z_REF) -> CentralChargeSeries:
    """
    Same series as central_charge_series, obtained degree by degree from the
    orbifold Euler pairing of the H-function coefficient with the Chern
    restriction of B on the sector of the degree.
    """
    phase = model.phase if phase is None else phase
    require_grade_restriction(model, B, phase)
    default = LevelStructure.dual_of_phase_side(model, phase)
    R = default if R is None else R
    series = CentralChargeSeries(direction=phase,
                                 meta=_meta(model, B, max_beta, phase, 'euler', z_ref))
    for beta in effective_classes(model, max_beta, phase):
        b = signed_degree(beta, phase)

        def integrand(v, k, s0, b=b):
            if not is_nonnegative_integer(d_of(model, k, b)):
                return 0j
            brane = brane_at_pole(B, b, s0, z_ref, ctx)
            if brane == 0:
                return 0j
            return (hk_coefficient(model, b, R, s0, ctx, phase) * brane
                    / level_value(default, b, s0, model.equiv_params, ctx))

        for term in orbifold_euler_terms(model, integrand, ctx, phase, [sector_for(model, b)]):
            if term.value == 0 and not is_nonnegative_integer(d_of(model, term.k, b)):
                continue
            comp = component_for_pole(series, model, term.k, term.m, b)
            n = math.floor(b)
            comp.add(n, coefficient_from_value(comp, n, term.value, ctx, z_ref))
    return series


def _meta(model: GLSMData, B: BraneExpr, max_beta, phase: int, method: str,
          z_ref: complex) -> Dict[str, Any]:
    return {
        'model': model.name,
        'brane': B.label,
        'phase': phase_symbol(phase),
        'maxBeta': str(Fraction(max_beta)),
        'method': method,
        'zRef': [z_ref.real, z_ref.imag],
    }


# ---------------------------------------------------------------------------
# Closed forms of the hypersurface family
# ---------------------------------------------------------------------------

def geometric_example_series(model: GLSMData, k: int, max_n: int,
                             ctx: QContext) -> CentralChargeSeries:
    """
    Z(E^{(+,k)}) = sum_n C_n z^n theta(z)/theta(a_k^{-1} z) with

        C_n = phi(q)^{-1} / (q;q)_n prod_{i != k} phi(q^{n+1} a_i/a_k) / phi(q^{rn+1} a_N^{-1} a_k^{-r})

    stored as a_k C_n against the prefactor theta(1/z)/theta(a_k/z).
    """
    a = model.equiv_params
    N = model.size - 1
    r = -model.weights[N]
    comp = SeriesComponent(k, 0, Fraction(0), a[k], label=f"geometric[{k}]")
    for n in range(max_n + 1):
        value = 1 / (phi(ctx.q, ctx) * q_factorial(n, ctx))
        for i in range(model.n_plus):
            if i != k:
                value *= phi(ctx.q ** (n + 1) * a[i] / a[k], ctx)
        value /= phi(ctx.q ** (r * n + 1) / (a[N] * a[k] ** r), ctx)
        comp.coeffs[n] = a[k] * value
    meta = {'model': model.name, 'brane': comp.label, 'phase': '+', 'maxBeta': str(max_n),
            'method': 'closed-form'}
    return CentralChargeSeries([comp], PLUS, meta)


@dataclass(frozen=True)
class LGTerm:
    """T_n(z) = coeff z^{-n} theta(z)/theta(w z)"""
    n: int
    coeff: complex
    omega: complex

    def value(self, z: complex, ctx: QContext) -> complex:
        return self.coeff * z ** (-self.n) * theta(z, ctx) / theta(self.omega * z, ctx)


def lg_closed_form_terms(model: GLSMData, label: TorsionLabel, max_n: int,
                         ctx: QContext) -> List[LGTerm]:
    """
    Raw terms -phi(q)^{-2} phi(zeta^r q^{rn}) / prod_i phi(q^n/(w a_i)) for 0 <= n <= max_n,
    with zeta^r = q^l and w = zeta^{-1} a_N^{1/r}.
    """
    a = model.equiv_params
    r = label.r
    omega = lg_omega(model, label, ctx)
    terms = []
    for n in range(max_n + 1):
        coeff = -phi(ctx.qpow(label.l + r * n), ctx) / phi(ctx.q, ctx) ** 2
        for i in range(model.n_plus):
            coeff /= phi(ctx.q ** n / (omega * a[i]), ctx)
        terms.append(LGTerm(n, coeff, omega))
    return terms


def lg_example_series(model: GLSMData, label: TorsionLabel, max_n: int,
                      ctx: QContext, z_ref: complex = Z_REF) -> CentralChargeSeries:
    """
    Z(E^{(-,zeta)}, V_-^dual) as a series in 1/z.

    The n-th term sits at the pole w q^{-n}, signed degree b = -(l + rn)/r;
    terms with l + rn <= 0 are not poles and are left out.
    """
    N = model.size - 1
    r = label.r
    root = (-label.m) % r
    series = CentralChargeSeries(direction=MINUS, meta={
        'model': model.name, 'brane': f"lg{label}", 'phase': '-', 'maxBeta': str(max_n),
        'method': 'closed-form',
    })
    for term in lg_closed_form_terms(model, label, max_n, ctx):
        if label.l + r * term.n <= 0:
            continue
        b = Fraction(-(label.l + r * term.n), r)
        comp = component_for_pole(series, model, N, root, b, label=f"lg{label}")
        n = math.floor(b)
        comp.add(n, coefficient_from_value(comp, n, term.value(z_ref, ctx), ctx, z_ref))
    return series


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

@dataclass
class SeriesEvaluation:
    value: complex
    converged: bool
    tail_estimate: float
    truncation: Dict[str, int] = field(default_factory=dict)
    component_values: Dict[str, complex] = field(default_factory=dict)


def _component_sum(comp: SeriesComponent, z: complex, ctx: QContext) -> Tuple[complex, bool, float, int]:
    powers = comp.ordered_powers()
    terms = [comp.coeffs[n] * z ** n for n in powers]
    magnitudes = [abs(t) for t in terms]
    total = complex(sum(terms, 0j))
    nonzero = [m for m in magnitudes if m > 0]
    if len(nonzero) < 3:
        return total, True, 0.0, powers[-1] if powers else 0

    m1, m2, m3 = nonzero[-3:]
    ratio = max(m2 / m1, m3 / m2)
    if ratio < 1:
        tail = m3 * ratio / (1 - ratio)
        return total, tail <= max(ctx.tol_rel * abs(total), ctx.tol_abs), tail, powers[-1]

    # asymptotic: stop before the smallest term
    cut = int(np.argmin(np.where(np.array(magnitudes) > 0, magnitudes, np.inf)))
    truncated = complex(sum(terms[:cut], 0j))
    return truncated, False, magnitudes[cut], powers[cut]


def evaluate_with_diagnostics(Z: CentralChargeSeries, z: complex, ctx: QContext) -> SeriesEvaluation:
    """Sum of prefactor(z) times the truncated power series, component by component"""
    z = complex(z)
    total = 0j
    converged = True
    tail = 0.0
    result = SeriesEvaluation(0j, True, 0.0)
    for comp in Z.sorted_components():
        cid = component_id(comp)
        partial, ok, comp_tail, last = _component_sum(comp, z, ctx)
        prefactor = comp.prefactor(z, ctx)
        value = prefactor * partial
        result.component_values[cid] = value
        result.truncation[cid] = last
        total += value
        tail += abs(prefactor) * comp_tail
        if not ok:
            converged = False
            Logger.warning(f"series component {cid} is not within tolerance at z={z:.6g}; "
                           f"stopped at n={last} (tail {comp_tail:.3g})")
    result.value = total
    result.converged = converged
    result.tail_estimate = tail
    Logger.debug(f"central charge at z={z:.6g}: {total:.12g}, tail {tail:.3g}")
    return result


def eval_central_charge(Z: CentralChargeSeries, z: complex, ctx: QContext) -> complex:
    return evaluate_with_diagnostics(Z, z, ctx).value
