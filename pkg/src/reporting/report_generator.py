#!/usr/bin/env python3
"""Report data for the glsm-lab text reports and JSON dumps"""

from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence

from __version__ import __version__
from central_charge.series import CentralChargeSeries, component_id
from glsm.model import GLSMData, phase_symbol
from qseries.context import QContext


def get_execution_timestamp() -> str:
    return datetime.now(timezone.utc).strftime('%Y-%m-%d %H:%M:%S UTC')


def stamp_report(data: Dict[str, Any], execution_timestamp: Optional[str] = None) -> Dict[str, Any]:
    """Copy of the report data with a generation time, for the text templates only"""
    stamped = dict(data)
    stamped.setdefault('execution_timestamp', execution_timestamp or get_execution_timestamp())
    return stamped


def complex_pair(value: complex) -> List[float]:
    value = complex(value)
    return [value.real, value.imag]


def model_summary(model: GLSMData) -> Dict[str, Any]:
    return {
        'name': model.name,
        'weights': list(model.weights),
        'rCharges': [str(r) for r in model.r_charges],
        'equivParams': [complex_pair(a) for a in model.equiv_params],
        'phase': phase_symbol(model.phase),
        'description': model.describe(),
    }


def context_summary(ctx: QContext) -> Dict[str, Any]:
    return {
        'q': complex_pair(ctx.q),
        'productTerms': ctx.product_terms,
        'tolAbs': ctx.tol_abs,
        'tolRel': ctx.tol_rel,
        'genericityGap': ctx.genericity_gap,
        'zeroTol': ctx.zero_tol,
    }


def prepare_report_data(
    command: str,
    model: GLSMData,
    ctx: QContext,
    check_summary: Dict[str, Any],
    execution_timestamp: Optional[str] = None,
) -> Dict[str, Any]:
    """
    Prepare the check report dictionary.

    The same dictionary is dumped as JSON and rendered by check_report.txt.j2,
    so its schema is shared by every check command.

    Args:
        command: check name (contour, qde, wallcross, theta)
        model: model the checks ran on
        ctx: numerical context
        check_summary: output of compute_check_summary
        execution_timestamp: included only when given; JSON dumps leave it
            out so identical runs write identical bytes

    Returns:
        Dictionary containing all report data
    """
    data = {
        'version': __version__,
        'command': command,
        'model': model_summary(model),
        'context': context_summary(ctx),
        'status': check_summary['status'],
        'pass_count': check_summary['pass_count'],
        'fail_count': check_summary['fail_count'],
        'worst': check_summary['worst'],
        'findings': check_summary['findings'],
    }
    if execution_timestamp:
        data['execution_timestamp'] = execution_timestamp
    return data


def prepare_series_data(series: CentralChargeSeries, ctx: QContext,
                        execution_timestamp: Optional[str] = None) -> Dict[str, Any]:
    """Series dump: metadata plus one entry per component, coefficients by power"""
    components = []
    for comp in series.sorted_components():
        components.append({
            'id': component_id(comp),
            'k': comp.k,
            'm': comp.m,
            'fracShift': str(comp.frac_shift),
            'prefactorArg': complex_pair(comp.prefactor_arg),
            'label': comp.label,
            'coefficients': [{'n': n, 'value': complex_pair(comp.coeffs[n])}
                             for n in comp.ordered_powers()],
        })
    data = {
        'version': __version__,
        'meta': dict(series.meta),
        'direction': phase_symbol(series.direction),
        'context': context_summary(ctx),
        'components': components,
    }
    if execution_timestamp:
        data['execution_timestamp'] = execution_timestamp
    return data


def series_rows(series: CentralChargeSeries) -> List[Dict[str, Any]]:
    """Flat (component, n, re, im) rows in the component/power order of the dump"""
    return [{'component': cid, 'n': n, 're': v.real, 'im': v.imag}
            for cid, n, v in series.coefficient_table()]


def prepare_theta_rows(xs: Sequence[complex], values: Dict[str, Sequence[complex]]) -> List[Dict[str, Any]]:
    """One row per point with the value of every tabulated function"""
    rows = []
    for j, x in enumerate(xs):
        row = {'x': complex(x)}
        row.update({name: complex(column[j]) for name, column in values.items()})
        rows.append(row)
    return rows
