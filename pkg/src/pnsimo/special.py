"""Modified Bessel functions of the first kind in the log domain.

Everything here is built on :func:`pnsimo.kernels.bessel_table`, which
produces the exponentially scaled ``I_0`` together with the ratio chain
``I_k / I_{k-1}``.  Values are returned as natural logs, since detector
arguments of order ``2 rho |x| |y|`` overflow ``I_l`` long before 40 dB.
"""

import math

import numpy as np

from . import kernels

ORDER_CAP = 256

__all__ = [
    "ORDER_CAP",
    "BesselCapacityError",
    "log_bessel_i",
    "log_bessel_i_table",
    "bessel_ratio",
    "bessel_ratios",
    "log_gamma",
    "ratio_lower_bound",
]


class BesselCapacityError(ValueError):
    """Requested Bessel order exceeds the configured cap."""


def _check_order(l, cap):
    if l < 0:
        raise ValueError(f"Bessel order must be nonnegative, got {l}")
    if l > cap:
        raise BesselCapacityError(f"Bessel order {l} exceeds the order cap {cap}")


def log_bessel_i(l: int, x: float, cap: int = ORDER_CAP) -> float:
    """Natural log of ``I_l(x)`` for integer ``l >= 0`` and ``x >= 0``.

    ``I_l(0) = 0`` for ``l >= 1`` is reported as ``-inf``.  The scaled form is
    used throughout, so arguments up to ``1e8`` are fine.
    """
    l = int(l)
    _check_order(l, cap)
    x = float(x)
    if not x >= 0.0:
        raise ValueError(f"log_bessel_i needs x >= 0, got {x}")
    if x == 0.0:
        return 0.0 if l == 0 else -math.inf
    log_i0e, ratios = kernels.bessel_table(np.array([x]), max(l, 1))
    return float(log_i0e[0] + x + np.sum(np.log(ratios[0, :l])))


def log_bessel_i_table(x, order: int) -> np.ndarray:
    """``ln I_l(x)`` for ``l = 0..order`` and every entry of ``x``.

    Returns an array of shape ``x.shape + (order + 1,)``.
    """
    _check_order(int(order), ORDER_CAP)
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise ValueError("log_bessel_i_table needs x >= 0")
    flat = x.ravel()
    log_i0e, ratios = kernels.bessel_table(flat, max(int(order), 1))
    out = np.empty((flat.size, order + 1))
    out[:, 0] = log_i0e + flat
    with np.errstate(divide="ignore"):
        out[:, 1:] = out[:, :1] + np.cumsum(np.log(ratios[:, :order]), axis=1)
    return out.reshape(x.shape + (order + 1,))


def bessel_ratios(x: float, order: int) -> np.ndarray:
    """``[I_1/I_0, I_2/I_1, ..., I_order/I_{order-1}]`` at ``x >= 0``."""
    if x < 0:
        raise ValueError(f"bessel_ratios needs x >= 0, got {x}")
    return kernels.bessel_table(np.array([float(x)]), int(order))[1][0]


def log_gamma(z: float) -> float:
    """``ln Gamma(z)`` for ``z > 0``."""
    z = float(z)
    if not z > 0.0:
        raise ValueError(f"log_gamma needs z > 0, got {z}")
    return math.lgamma(z)


def ratio_lower_bound(nu: float, mu: float, x: float) -> float:
    """Lower bound on ``I_nu(x) / I_mu(x)`` for ``mu > nu > 0``, ``x > 0``.

    ``max(1, (x/2)^(nu-mu) Gamma(mu+1/2) / Gamma(nu+1/2))``.
    """
    if not (mu > nu > 0 and x > 0):
        raise ValueError("ratio_lower_bound needs mu > nu > 0 and x > 0")
    log_b = (nu - mu) * math.log(x / 2.0) + log_gamma(mu + 0.5) - log_gamma(nu + 0.5)
    return max(1.0, math.exp(min(log_b, 700.0)))


def bessel_ratio(l: int, x: float) -> float:
    """``I_l(x) / I_{l-1}(x)`` for ``l >= 1`` and ``x > 0``.

    Computed from the backward recurrence, never by dividing two Bessel
    values.  The result is checked against the ordering bound
    ``I_{l-1}/I_l > max(1, (x/2)^-1 Gamma(l+1/2)/Gamma(l-1/2))``.
    """
    l = int(l)
    if l < 1:
        raise ValueError(f"bessel_ratio needs l >= 1, got {l}")
    _check_order(l, ORDER_CAP)
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"bessel_ratio needs x > 0, got {x}")
    r = float(bessel_ratios(x, l)[l - 1])
    upper = 1.0 if l == 1 else 1.0 / ratio_lower_bound(l - 1, l, x)
    if not 0.0 < r <= upper * (1.0 + 4e-16):
        raise ArithmeticError(f"Bessel ratio I_{l}/I_{l-1}({x}) = {r} violates its bound")
    return r
