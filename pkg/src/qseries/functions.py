#!/usr/bin/env python3
"""
Truncated q-special functions.

phi(x) = prod_{i<P} (1 - q^i x) and theta(x) = phi(x) phi(q/x), evaluated
with numpy broadcasting so that arrays of arguments (quadrature nodes) cost a
single vectorized product.
"""

from typing import Callable

import numpy as np

from core.errors import DomainError, PoleError
from qseries.context import QContext


def _as_output(value: np.ndarray, x):
    """Return a Python complex for scalar input, the array otherwise."""
    if np.ndim(x) == 0:
        return complex(value)
    return value


def _factors(x, ctx: QContext) -> np.ndarray:
    arr = np.asarray(x, dtype=complex)
    return 1.0 - arr[..., None] * ctx.qpowers


def _check_nonzero(x):
    if np.any(np.asarray(x) == 0):
        raise DomainError("theta is undefined at x = 0")


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------

def phi(x, ctx: QContext):
    """(x; q)_infinity truncated at ctx.product_terms factors"""
    return _as_output(np.prod(_factors(x, ctx), axis=-1), x)


def theta(x, ctx: QContext):
    """theta(x) = phi(x) phi(q/x)"""
    _check_nonzero(x)
    arr = np.asarray(x, dtype=complex)
    value = np.prod(_factors(arr, ctx), axis=-1) * np.prod(_factors(ctx.q / arr, ctx), axis=-1)
    return _as_output(value, x)


def pochhammer(x: complex, n: int, ctx: QContext) -> complex:
    """
    Finite q-Pochhammer symbol (x; q)_n.

    For n < 0 this is 1 / prod_{k=1}^{-n} (1 - q^{-k} x); a vanishing
    denominator raises PoleError.
    """
    x = complex(x)
    if n >= 0:
        value = complex(1.0)
        for k in range(n):
            value *= 1.0 - ctx.q ** k * x
        return value
    denominator = complex(1.0)
    for k in range(1, -n + 1):
        denominator *= 1.0 - ctx.q ** (-k) * x
    if abs(denominator) < ctx.tol_abs:
        raise PoleError(f"(x; q)_{n} has a vanishing denominator at x = {x}")
    return 1.0 / denominator


def q_factorial(n: int, ctx: QContext) -> complex:
    """(q; q)_n"""
    return pochhammer(ctx.q, n, ctx)


def theta_shift_factor(x, n: int, ctx: QContext):
    """
    Exact ratio theta(q^n x) / theta(x) = (-1)^n x^{-n} q^{-n(n-1)/2}.

    Closed form, no products; valid for every integer n.
    """
    _check_nonzero(x)
    n = int(n)
    arr = np.asarray(x, dtype=complex)
    sign = -1.0 if n % 2 else 1.0
    value = sign * arr ** (-n) * ctx.q ** (-(n * (n - 1) // 2))
    return _as_output(value, x)


# ---------------------------------------------------------------------------
# Derivatives
# ---------------------------------------------------------------------------

def phi_prime(x, ctx: QContext):
    """
    d/dx phi(x) = -sum_i q^i prod_{j != i} (1 - q^j x).

    Prefix and suffix products keep this exact at the zeros x = q^{-i}.
    """
    factors = _factors(x, ctx)
    ones = np.ones(factors.shape[:-1] + (1,), dtype=complex)
    prefix = np.concatenate([ones, np.cumprod(factors[..., :-1], axis=-1)], axis=-1)
    suffix = np.concatenate(
        [np.cumprod(factors[..., :0:-1], axis=-1)[..., ::-1], ones], axis=-1
    )
    value = -np.sum(ctx.qpowers * prefix * suffix, axis=-1)
    return _as_output(value, x)


def theta_prime(x, ctx: QContext):
    """d/dx theta(x) = phi'(x) phi(q/x) - (q/x^2) phi(x) phi'(q/x)"""
    _check_nonzero(x)
    arr = np.asarray(x, dtype=complex)
    inv = ctx.q / arr
    value = (phi_prime(arr, ctx) * phi(inv, ctx)
             - (ctx.q / arr ** 2) * phi(arr, ctx) * phi_prime(inv, ctx))
    return _as_output(value, x)


def theta_prime_lattice(n: int, ctx: QContext) -> complex:
    """Closed form theta'(q^{-n}) = (-1)^{n+1} q^{-n(n-1)/2} phi(q)^2"""
    sign = 1.0 if n % 2 else -1.0
    return sign * ctx.q ** (-(n * (n - 1) // 2)) * phi(ctx.q, ctx) ** 2


def numeric_derivative(f: Callable[[complex], complex], x: complex,
                       h: float = None, levels: int = 4) -> complex:
    """
    Central-difference derivative with Richardson extrapolation.

    The step starts at h (default 1e-3 * max(|x|, 1)) and halves per level.
    """
    x = complex(x)
    if h is None:
        h = 1e-3 * max(abs(x), 1.0)
    table = []
    for level in range(levels):
        step = h / 2 ** level
        row = [(f(x + step) - f(x - step)) / (2 * step)]
        for j in range(1, level + 1):
            factor = 4 ** j
            row.append((factor * row[j - 1] - table[level - 1][j - 1]) / (factor - 1))
        table.append(row)
    return complex(table[-1][-1])
