#!/usr/bin/env python3
"""Orchestration of a glsm-lab run: model, context, branes, series, checks and reports"""

from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from __version__ import __version__
from branes.basis import TorsionLabel, geometric_basis_brane, lg_basis_brane
from branes.expr import BraneExpr, brane_from_json, zero_brane
from central_charge.level import LevelStructure
from central_charge.series import (CentralChargeSeries, central_charge_series,
                                   geometric_example_series, lg_example_series, pairing_series)
from checks.acceptance import (MINUS_MAX_BETA, PLUS_MAX_BETA, SERIES_MAX_N, check_contour,
                               check_qde, check_theta_suite, check_wallcross,
                               compute_check_summary)
from core.config import RunConfig, read_json, build_context, load_model, resolve_model_path
from core.errors import ConfigError, ModelShapeError
from glsm.model import GLSMData, MINUS, PLUS, phase_symbol
from integrals.quadrature import contour_diagnostics, residue_series
from qseries.context import QContext
from qseries.functions import phi, pochhammer, theta
from reporting.report_generator import (prepare_report_data, prepare_series_data,
                                        prepare_theta_rows, stamp_report)
from utils.logger import Logger

METHODS = ('assembly', 'euler', 'residue', 'closed-form')
CHECKS = ('contour', 'qde', 'wallcross', 'theta')

TEMPLATE_DIR = Path(__file__).parent.parent / 'templates'


def parse_int_pair(text: str, what: str) -> tuple:
    try:
        first, second = (int(part) for part in str(text).split(','))
    except ValueError:
        raise ConfigError(f"{what} must be two integers 'a,b', got {text!r}")
    return first, second


def build_environment() -> Environment:
    return Environment(
        loader=FileSystemLoader(str(TEMPLATE_DIR)),
        undefined=StrictUndefined,
        keep_trailing_newline=True,
    )


class QuasimapLab:
    """One model in one numerical context, plus the run parameters"""

    def __init__(self, model: GLSMData, ctx: QContext, config: RunConfig = None):
        Logger.debug(f"Initializing QuasimapLab for {model.describe()}")
        self.config = config or RunConfig()
        if self.config.phase is not None:
            model = model.with_phase(self.config.phase)
        self.model = model
        self.ctx = ctx
        self.env = build_environment()
        Logger.debug(f"Context: q={ctx.q}, productTerms={ctx.product_terms}, "
                     f"tolRel={ctx.tol_rel}, tolAbs={ctx.tol_abs}")

    @classmethod
    def from_config(cls, config: RunConfig) -> 'QuasimapLab':
        """Model from the config's path (or shipped name); run context over model context"""
        if not config.model_path:
            raise ConfigError("no model given (use --model or the 'model' key of --config)")
        model, overrides = load_model(resolve_model_path(config.model_path))
        ctx = build_context({**overrides, **config.context})
        return cls(model, ctx, config)

    @property
    def phase(self) -> int:
        return self.model.phase

    # ------------------------------------------------------------------
    # Branes
    # ------------------------------------------------------------------

    def geometric_brane(self, k: int) -> BraneExpr:
        return geometric_basis_brane(self.model, k)

    def lg_label(self, m: int, l: int) -> TorsionLabel:
        if not self.model.is_hypersurface():
            raise ModelShapeError(f"{self.model.name}: LG branes need a hypersurface model")
        r = -self.model.weights[-1]
        return TorsionLabel(m % r, l, r)

    def lg_brane(self, m: int, l: int) -> BraneExpr:
        return lg_basis_brane(self.model, self.lg_label(m, l))

    def brane_from_file(self, path) -> BraneExpr:
        doc = read_json(Path(path))
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: brane document must be a JSON object")
        try:
            B = brane_from_json(doc, self.model.equiv_params)
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"{path}: {e}")
        if len(B.equiv_params) != self.model.size:
            raise ConfigError(f"{path}: brane has {len(B.equiv_params)} equivariant parameters, "
                              f"model has {self.model.size}")
        return B

    def select_brane(self, plus: Optional[int] = None, lg: Optional[str] = None,
                     zero: bool = False, brane_file: Optional[str] = None) -> BraneExpr:
        """Exactly one selector must be given"""
        given = [plus is not None, lg is not None, zero, brane_file is not None]
        if sum(given) != 1:
            raise ConfigError("select exactly one brane: --plus K, --lg M,L, --zero or --brane-file")
        if plus is not None:
            return self.geometric_brane(plus)
        if lg is not None:
            return self.lg_brane(*parse_int_pair(lg, '--lg'))
        if zero:
            return zero_brane(self.model)
        return self.brane_from_file(brane_file)

    # ------------------------------------------------------------------
    # Central charges
    # ------------------------------------------------------------------

    def default_max_beta(self, phase: int) -> Fraction:
        if self.config.max_beta is not None:
            return Fraction(self.config.max_beta)
        return Fraction(PLUS_MAX_BETA if phase == PLUS else MINUS_MAX_BETA)

    def central_charge(self, B: BraneExpr, method: str = 'assembly', max_beta=None,
                       R: Optional[LevelStructure] = None) -> CentralChargeSeries:
        """
        Series of Z(B, R) in the model's phase.

        closed-form only accepts the shipped basis branes and reads the
        truncation from max_n (or max_beta when max_n is unset).
        """
        if method not in METHODS:
            raise ConfigError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
        phase = self.phase
        max_beta = self.default_max_beta(phase) if max_beta is None else Fraction(max_beta)
        Logger.info(f"Central charge of {B.label or 'custom brane'} on {self.model.name}, "
                    f"phase {phase_symbol(phase)}, method {method}, max degree {max_beta}")
        Logger.stage("central charge start")
        if method == 'assembly':
            series = central_charge_series(self.model, B, R, max_beta, self.ctx, phase)
        elif method == 'euler':
            series = pairing_series(self.model, B, R, max_beta, self.ctx, phase)
        elif method == 'residue':
            series = residue_series(self.model, B, R, max_beta, self.ctx, phase,
                                    M=self.config.nodes or 64)
        else:
            series = self._closed_form(B, max_beta)
        Logger.stage("central charge done")
        return series

    def _closed_form(self, B: BraneExpr, max_beta) -> CentralChargeSeries:
        max_n = self.config.max_n if self.config.max_n is not None else int(max_beta)
        label = B.label
        if label.startswith('geometric[') and self.phase == PLUS:
            return geometric_example_series(self.model, int(label[len('geometric['):-1]),
                                            max_n, self.ctx)
        if label.startswith('lg(') and self.phase == MINUS:
            m, l = parse_int_pair(label[3:-1], 'LG label')
            return lg_example_series(self.model, self.lg_label(m, l), max_n, self.ctx)
        raise ConfigError(f"closed-form series exist only for geometric branes in phase + "
                          f"and LG branes in phase -, got {label!r} in phase "
                          f"{phase_symbol(self.phase)}")

    def contour_dump(self, B: BraneExpr, z: complex, max_beta=4) -> Dict[str, Any]:
        """Quadrature doubling table and the residue list at one z"""
        dump = contour_diagnostics(self.model, B, z, self.ctx, max_beta=max_beta,
                                   delta=self.config.delta, M=self.config.nodes or 256,
                                   phase=self.phase)
        dump['version'] = __version__
        return dump

    # ------------------------------------------------------------------
    # Checks
    # ------------------------------------------------------------------

    def run_check(self, name: str) -> Dict[str, Any]:
        """Run one acceptance check and return the report data"""
        if name not in CHECKS:
            raise ConfigError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
        Logger.info(f"Running check {name} on {self.model.name}")
        samples = self.config.z_samples
        runners: Dict[str, Callable[[], List[Dict[str, Any]]]] = {
            'contour': lambda: check_contour(
                self.model, self.ctx, z=samples[0] if samples else None,
                max_beta=self.default_max_beta(PLUS)),
            'qde': lambda: check_qde(self.model, self.ctx, phase=self.phase,
                                     max_n=self.config.max_n or SERIES_MAX_N),
            'wallcross': lambda: check_wallcross(
                self.model, self.ctx,
                z_small=samples[0] if len(samples) > 0 else None,
                z_large=samples[1] if len(samples) > 1 else None),
            'theta': lambda: check_theta_suite(self.ctx),
        }
        findings = runners[name]()
        Logger.stage(f"check {name} done")
        summary = compute_check_summary(self.model, findings)
        Logger.info(f"Check {name}: {summary['status']} ({summary['pass_count']} passed, "
                    f"{summary['fail_count']} failed)")
        return prepare_report_data(name, self.model, self.ctx, summary)

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def render(self, template_name: str, data: Dict[str, Any]) -> str:
        Logger.debug(f"Rendering {template_name}")
        return self.env.get_template(template_name).render(**stamp_report(data))

    def series_report(self, series: CentralChargeSeries) -> Dict[str, Any]:
        return prepare_series_data(series, self.ctx)


def theta_values(xs: Sequence[complex], ctx: QContext, n: int = 3) -> Dict[str, List[complex]]:
    """phi(x), theta(x) and (x; q)_n at every point"""
    return {
        'phi': [complex(phi(x, ctx)) for x in xs],
        'theta': [complex(theta(x, ctx)) for x in xs],
        f'poch_{n}': [complex(pochhammer(x, n, ctx)) for x in xs],
    }


def theta_report(xs: Sequence[complex], ctx: QContext, n: int = 3) -> Dict[str, Any]:
    values = theta_values(xs, ctx, n)
    return {
        'version': __version__,
        'q': ctx.q,
        'columns': list(values),
        'rows': prepare_theta_rows(xs, values),
    }
