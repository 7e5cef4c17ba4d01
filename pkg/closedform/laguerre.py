"""Laguerre polynomials L_n(z) and their generating function."""

import logging
import math

import numpy as np

from utils.errors import ParameterError

logger = logging.getLogger(__name__)


def _check_order(n: int):
    if int(n) != n or n < 0:
        raise ParameterError(f"Laguerre order must be a non-negative integer, got {n}")


def laguerre_table(n_max: int, z):
    """All L_0(z)..L_{n_max}(z) from one forward recurrence pass.

    Uses (k+1) L_{k+1} = (2k+1-z) L_k - k L_{k-1}.

    Args:
        n_max: Highest order
        z: Argument, scalar or array

    Returns:
        Array of shape (n_max + 1,) + shape(z)
    """
    _check_order(n_max)
    z = np.asarray(z, dtype=float)
    table = np.empty((n_max + 1,) + z.shape)
    table[0] = 1.0
    if n_max >= 1:
        table[1] = 1.0 - z
    for k in range(1, n_max):
        table[k + 1] = ((2 * k + 1 - z) * table[k] - k * table[k - 1]) / (k + 1)
    return table


def laguerre_eval(n: int, z):
    """L_n(z) by the three-term recurrence.

    Args:
        n: Order, n >= 0
        z: Argument, scalar or array

    Returns:
        L_n(z), float for scalar z
    """
    value = laguerre_table(n, z)[n]
    return float(value) if np.ndim(value) == 0 else value


def laguerre_finite_sum(n: int, z):
    """L_n(z) from its defining sum  sum_k (-1)^k C(n, k) z^k / k!.

    Terms are built from the ratio t_{k+1} / t_k = -(n - k) z / (k + 1)^2, which keeps
    full relative precision for orders in the thousands where C(n, k) and k! overflow.
    The alternating sum itself still cancels: its rounding error is about eps * L_n(-z).
    """
    _check_order(n)
    z = np.asarray(z, dtype=float)
    k = np.arange(n)
    ratios = np.multiply.outer(-z, (n - k) / ((k + 1.0) ** 2))
    value = 1.0 + np.cumprod(ratios, axis=-1).sum(axis=-1)
    return float(value) if np.ndim(value) == 0 else value


def _check_ratio(t: float):
    if not 0.0 <= t < 1.0:
        raise ParameterError(f"Generating-function argument must satisfy 0 <= t < 1, got {t}")


def laguerre_generating_sum(z: float, t: float, n_terms: int) -> float:
    """Partial sum sum_{n < n_terms} L_n(z) t^n.

    Args:
        z: Laguerre argument
        t: Expansion variable, 0 <= t < 1
        n_terms: Number of terms

    Returns:
        Partial sum

    Raises:
        ParameterError: If t is outside [0, 1)
    """
    _check_ratio(t)
    if n_terms <= 0:
        return 0.0
    values = laguerre_table(n_terms - 1, z)
    return float(np.dot(values, t ** np.arange(n_terms)))


def laguerre_generating_closed(z: float, t: float) -> float:
    """exp(-z t / (1 - t)) / (1 - t)."""
    _check_ratio(t)
    return math.exp(-z * t / (1.0 - t)) / (1.0 - t)


def generating_terms_needed(z: float, t: float, tol: float = 1e-15) -> int:
    """Smallest n_terms whose remainder bound e^{z/2} t^n / (1 - t) is below tol.

    The bound uses |L_n(z)| <= e^{z/2} for z >= 0.
    """
    _check_ratio(t)
    if t == 0.0:
        return 1
    bound = math.exp(0.5 * max(z, 0.0)) / (1.0 - t)
    return max(1, math.ceil(math.log(tol / bound) / math.log(t)))
