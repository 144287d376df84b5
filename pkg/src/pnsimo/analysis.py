"""High-SNR closed forms: synchronous SER floor and pairwise error bounds.

At high SNR the synchronous detectors see the data phase through a single
phase-noise increment, so the SER saturates at the probability mass of
that increment outside ``(-pi/N, pi/N)``.  With independent oscillators the
error probability instead falls with ``M``; the Bernstein (constant
channel) and Chebyshev (fading channel) bounds quantify how fast.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .phase_noise import WRAPPED_GAUSSIAN, PhaseNoiseModel, log_pdf_exact
from .special import bessel_ratios

__all__ = [
    "FloorReport",
    "FloorMismatchError",
    "ser_floor_sync",
    "bernstein_pairwise_bound",
    "bernstein_union_bound",
    "chebyshev_pairwise_bound_fc_ns",
    "chebyshev_union_bound",
    "union_bound",
]

FLOOR_TOL = 1e-14
FLOOR_CHECK_TOL = 1e-8


class FloorMismatchError(ArithmeticError):
    """Series and quadrature floors disagree; the coefficients are suspect."""


@dataclass(frozen=True, eq=False)
class FloorReport:
    N: int
    model: PhaseNoiseModel = field(repr=False)
    floor: float
    terms_used: int
    quadrature: float

    def __post_init__(self):
        if not 0.0 <= self.floor <= 1.0 - 1.0 / self.N + 1e-12:
            raise ArithmeticError(f"floor {self.floor} outside [0, 1 - 1/N]")


def _floor_by_quadrature(model: PhaseNoiseModel, N: int) -> float:
    if model.family == WRAPPED_GAUSSIAN and model.param == 0.0:
        return 0.0  # point mass at zero

    def pdf(phi):
        return math.exp(float(log_pdf_exact(model, phi)))

    # the density is even: twice the mass on (0, pi/N)
    mass, _ = integrate.quad(pdf, 0.0, math.pi / N, epsabs=1e-15, epsrel=1e-13, limit=200)
    return 1.0 - 2.0 * mass


def ser_floor_sync(model: PhaseNoiseModel, N: int, check: bool = True) -> FloorReport:
    """High-SNR SER of the synchronous detectors for equiprobable ``N``-PSK.

    ``1 - alpha_0/N - sum_l 2 alpha_l sin(l pi/N) / (pi l)``, summed until
    ``2 |alpha_l| / (pi l)`` drops below ``1e-14`` of the value (or the
    stored coefficients run out).  With ``check`` the result is compared with
    direct quadrature of the density over ``(-pi/N, pi/N)`` and a gap above
    ``1e-8`` raises :class:`FloorMismatchError`.
    """
    N = int(N)
    if N < 2:
        raise ValueError("N must be at least 2")
    if model.family == WRAPPED_GAUSSIAN and model.param == 0.0:
        # point mass: the coefficient series converges only like 1/l, but
        # sum_l sin(l x)/l = (pi - x)/2 cancels 1 - 1/N exactly
        return FloorReport(N, model, 0.0, 0, 0.0)
    floor = 1.0 - 1.0 / N
    used = 0
    for l in range(1, model.order + 1):
        a = model.coeffs[l]
        used = l
        if a == 0.0:
            if np.all(model.coeffs[l:] == 0.0):
                break
            continue
        term = 2.0 * a / (math.pi * l)
        floor -= term * math.sin(l * math.pi / N)
        # test the term's envelope: sin(l pi / N) vanishes at multiples of N
        if l >= 2 and abs(term) < FLOOR_TOL * abs(floor):
            break
    if -1e-12 < floor < 0.0:
        floor = 0.0  # rounding residue of a vanishing floor
    quad = _floor_by_quadrature(model, N) if check else float("nan")
    if check and abs(quad - floor) > FLOOR_CHECK_TOL:
        raise FloorMismatchError(
            f"floor series {floor:.12g} vs quadrature {quad:.12g}; increase the coefficient order"
        )
    return FloorReport(N, model, float(floor), used, quad)


def _vm_ratios(kappa):
    kappa = float(kappa)
    if not kappa > 0.0:
        raise ValueError("the bounds need kappa > 0")
    r = bessel_ratios(kappa, 2)
    return r[0], r[0] * r[1]  # I_1/I_0, I_2/I_0


def _check_pair(N, n, M):
    if int(N) < 2 or not 1 <= int(n) <= int(N) - 1:
        raise ValueError("need N >= 2 and 1 <= n <= N-1")
    if int(M) < 1:
        raise ValueError("M must be positive")


def bernstein_pairwise_bound(kappa: float, N: int, n: int, M: int) -> float:
    """Bernstein bound on ``Pr{mu_n > 0 | s = 1}`` for the high-SNR NS rule.

    Von Mises increments with concentration ``kappa``, ``M`` antennas and
    the competing point ``exp(2j pi n / N)``.
    """
    _check_pair(N, n, M)
    a1, _ = _vm_ratios(kappa)
    a = math.pi * n / N
    s1 = math.sin(a)
    s2 = s1 * s1
    var = s2 * (a1 * math.cos(2.0 * a) / kappa + s2 * (1.0 - a1 * a1))
    if not var > 0.0:
        raise ArithmeticError(f"degenerate variance {var} for kappa={kappa}")
    C = s1 + s2 * a1
    num = M * (s2 * a1 / math.sqrt(var)) ** 2
    den = 2.0 + (2.0 / 3.0) * C * s2 * a1 / var
    return math.exp(-num / den)


def chebyshev_pairwise_bound_fc_ns(kappa: float, N: int, n: int, M: int) -> float:
    """Chebyshev bound ``VAR(xi_n) / E[xi_n]^2`` for the min-distance FC-NS rule.

    May exceed one (it is a bound, not a probability).  Exactly ``c / M``.
    """
    N, n, M = int(N), int(n), int(M)
    if M < 1:
        raise ValueError("M must be positive")
    if n % N == 0:
        raise ValueError("n = 0 has no mean gap; the bound is undefined")
    a1, a2 = _vm_ratios(kappa)
    c = math.cos(2.0 * math.pi * n / N)
    s = math.sin(2.0 * math.pi * n / N)
    mean = (1.0 - c) * a1
    var = ((1.0 - c) ** 2 * (1.0 + a2 - a1 * a1) + s * s * (1.0 - a2)) / M
    return var / (mean * mean)


def union_bound(pairwise) -> float:
    """``min(1, sum)`` of pairwise error probabilities."""
    p = np.asarray(list(pairwise), dtype=np.float64)
    if np.any(p < 0.0):
        raise ValueError("pairwise probabilities must be nonnegative")
    return float(min(1.0, p.sum()))


def bernstein_union_bound(kappa: float, N: int, M: int) -> float:
    return union_bound(bernstein_pairwise_bound(kappa, N, n, M) for n in range(1, N))


def chebyshev_union_bound(kappa: float, N: int, M: int) -> float:
    return union_bound(chebyshev_pairwise_bound_fc_ns(kappa, N, n, M) for n in range(1, N))
