#!/usr/bin/env python3
"""
Acceptance checks

Runs the numerical identities of the laboratory against fixed thresholds and
aggregates the findings into a pass/fail summary for the check report.
"""

import cmath
from typing import Any, Dict, List, Sequence

import numpy as np

from branes.basis import geometric_basis_brane, torsion_labels
from branes.expr import BraneExpr, check_grade_restriction, eval_brane, wall_cross
from central_charge.series import geometric_example_series, lg_example_series
from core.errors import ModelShapeError
from glsm.model import GLSMData, MINUS, PLUS, phase_symbol
from glsm.qde_operator import qde_operator
from integrals.quadrature import contour_integral, residue_sum
from qde.verification import qde_residual
from qseries.context import QContext
from qseries.functions import theta, theta_shift_factor
from utils.logger import Logger


# ---------------------------------------------------------------------------
# Status constants
# ---------------------------------------------------------------------------
PASS = "pass"
FAIL = "fail"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

# Thresholds
CONTOUR_THRESHOLD = 1e-6
QDE_THRESHOLD = 1e-6
THETA_THRESHOLD = 1e-10
IDENTITY_THRESHOLD = 1e-10

# Default sample radii and truncations
SMALL_Z = 0.05
LARGE_Z = 20.0
PLUS_MAX_BETA = 12
MINUS_MAX_BETA = 8
SERIES_MAX_N = 20
SAMPLE_ANGLES = (0.3, 1.7, 2.9, 4.4)


def _finding(status: str, check: str, title: str, residual: float = 0.0,
             threshold: float = 0.0, detail: str = "") -> Dict[str, Any]:
    """Return a single finding dict."""
    return {
        "status": status,
        "check": check,
        "title": title,
        "residual": float(residual),
        "threshold": float(threshold),
        "detail": detail,
    }


def _compare(check: str, title: str, residual: float, threshold: float,
             detail: str = "") -> Dict[str, Any]:
    status = PASS if residual < threshold else FAIL
    return _finding(status, check, title, residual, threshold, detail)


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def sample_points(radius: float, angles: Sequence[float] = SAMPLE_ANGLES) -> List[complex]:
    return [radius * cmath.exp(1j * t) for t in angles]


def _require_hypersurface(model: GLSMData, check: str):
    if not model.is_hypersurface():
        raise ModelShapeError(f"check {check} needs a hypersurface model, got {model.describe()}")


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------

def check_contour(model: GLSMData, ctx: QContext, z: complex = None,
                  max_beta=PLUS_MAX_BETA, threshold: float = CONTOUR_THRESHOLD) -> List[Dict[str, Any]]:
    """Contour integral against the + phase residue sum for every geometric brane."""
    _require_hypersurface(model, "contour")
    z = sample_points(SMALL_Z)[0] if z is None else complex(z)
    findings = []
    for k in range(model.n_plus):
        B = geometric_basis_brane(model, k)
        integral = contour_integral(model, B, z, ctx)
        residues = residue_sum(model, B, z, PLUS, max_beta, ctx).total
        findings.append(_compare(
            "contour", f"{B.label}: contour vs residues (+) at |z|={abs(z):g}",
            _relative(integral, residues), threshold,
            f"contour {integral:.12g}, residues {residues:.12g}",
        ))
    return findings


def check_wallcross(model: GLSMData, ctx: QContext, z_small: complex = None,
                    z_large: complex = None, threshold: float = CONTOUR_THRESHOLD) -> List[Dict[str, Any]]:
    """
    The same integral equals the + residue sum near z = 0 and the - residue
    sum near z = infinity. The wall-crossing factor is also checked to be an
    exact multiplicative pair that leaves the grade restriction intact.
    """
    _require_hypersurface(model, "wallcross")
    z_small = sample_points(SMALL_Z)[1] if z_small is None else complex(z_small)
    z_large = sample_points(LARGE_Z)[1] if z_large is None else complex(z_large)
    findings = []
    for k in range(model.n_plus):
        B = geometric_basis_brane(model, k)
        for z, phase, max_beta in ((z_small, PLUS, PLUS_MAX_BETA), (z_large, MINUS, MINUS_MAX_BETA)):
            integral = contour_integral(model, B, z, ctx)
            residues = residue_sum(model, B, z, phase, max_beta, ctx).total
            findings.append(_compare(
                "wallcross",
                f"{B.label}: contour vs residues ({phase_symbol(phase)}) at |z|={abs(z):g}",
                _relative(integral, residues), threshold,
                f"contour {integral:.12g}, residues {residues:.12g}",
            ))

        crossed = wall_cross(B)
        stripped = BraneExpr(crossed.factors[:-2], crossed.prefactor, crossed.equiv_params, B.label)
        intact = check_grade_restriction(stripped, model, PLUS) and stripped.factors == B.factors
        findings.append(_finding(
            PASS if intact else FAIL, "wallcross",
            f"{B.label}: grade restriction after removing the wall-crossing pair",
        ))
        s, z = 0.83 * cmath.exp(0.4j), z_small
        restored = eval_brane(crossed, s, z, ctx) * theta(1 / z, ctx) / theta(1 / (s * z), ctx)
        findings.append(_compare(
            "wallcross", f"{B.label}: wall-crossing factor inverts",
            _relative(restored, eval_brane(B, s, z, ctx)), IDENTITY_THRESHOLD,
        ))
    return findings


def check_qde(model: GLSMData, ctx: QContext, phase: int = PLUS, max_n: int = SERIES_MAX_N,
              threshold: float = QDE_THRESHOLD) -> List[Dict[str, Any]]:
    """QqDE residuals of the closed-form series of the basis branes, plus the order formula."""
    _require_hypersurface(model, "qde")
    findings = []
    L = qde_operator(model, phase)
    expected = max(sum(d * d for d in model.weights if d > 0),
                   sum(d * d for d in model.weights if d < 0))
    findings.append(_finding(
        PASS if L.order() == expected else FAIL, "qde",
        f"operator order ({phase_symbol(phase)}) is {L.order()}",
        detail=f"expected {expected}",
    ))
    if phase == PLUS:
        samples = sample_points(SMALL_Z)
        series = [geometric_example_series(model, k, max_n, ctx) for k in range(model.n_plus)]
    else:
        samples = sample_points(LARGE_Z)
        r = -model.weights[-1]
        series = [lg_example_series(model, label, max_n, ctx) for label in torsion_labels(r)]
    for Z in series:
        residual = qde_residual(model, phase, Z, samples, ctx)
        findings.append(_compare("qde", f"{Z.meta.get('brane')}: QqDE residual ({phase_symbol(phase)})",
                                 residual, threshold))
    return findings


def check_theta_suite(ctx: QContext, points: int = 100, seed: int = 7,
                      threshold: float = THETA_THRESHOLD) -> List[Dict[str, Any]]:
    """Quasi-periodicity, inversion and the closed-form shift of theta at random points."""
    rng = np.random.default_rng(seed)
    x = np.exp(rng.uniform(-1.0, 1.0, points) + 1j * rng.uniform(0, 2 * np.pi, points))
    base = theta(x, ctx)
    quasi = np.max(np.abs(theta(ctx.q * x, ctx) + base / x) / np.abs(base))
    inversion = np.max(np.abs(theta(ctx.q / x, ctx) - base) / np.abs(base))
    shift = 0.0
    for n in range(-5, 6):
        exact = theta(ctx.q ** n * x, ctx)
        closed = theta_shift_factor(x, n, ctx) * base
        shift = max(shift, float(np.max(np.abs(exact - closed) / np.abs(exact))))
    return [
        _compare("theta", "theta(qx) = -theta(x)/x", quasi, threshold),
        _compare("theta", "theta(q/x) = theta(x)", inversion, threshold),
        _compare("theta", "theta(q^n x)/theta(x) closed form, |n| <= 5", shift, threshold),
    ]


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------

def compute_check_summary(model: GLSMData, findings: List[Dict[str, Any]]) -> Dict[str, Any]:
    """
    Aggregate findings for the check report.

    Returns:
        Dictionary with keys:
            status      - "pass" | "fail"
            pass_count  - number of passed findings
            fail_count  - number of failed findings
            worst       - largest residual/threshold ratio
            findings    - failed findings first
            model       - model description
    """
    fail_count = sum(1 for f in findings if f["status"] == FAIL)
    ratios = [f["residual"] / f["threshold"] for f in findings if f["threshold"] > 0]
    findings = sorted(findings, key=lambda f: 0 if f["status"] == FAIL else 1)
    summary = {
        "status": FAIL if fail_count else PASS,
        "pass_count": len(findings) - fail_count,
        "fail_count": fail_count,
        "worst": max(ratios) if ratios else 0.0,
        "findings": findings,
        "model": model.describe(),
    }
    Logger.debug(f"Check summary: status={summary['status']}, failed={fail_count}, "
                 f"findings={len(findings)}")
    return summary


def exit_code(summary: Dict[str, Any]) -> int:
    return EXIT_OK if summary["status"] == PASS else EXIT_FAIL
