"""Brute-force likelihoods by numerical integration over the nuisance phases.

Independent of the Bessel series: the Gaussian observation densities are
written out directly and the phases are integrated numerically.

* constant channel: 2-D integral over ``(theta, phi)``, per antenna (NS) or
  shared (S);
* fading channel: ``h`` is integrated analytically (complete the square,
  ``u = sqrt(rho) (x + s^* y e^{-j phi})``, ``D = 1 + rho + rho |s|^2``)::

      p(x, y | s, phi) = exp(-|x|^2 - |y|^2 + |u|^2 / D) / (pi^2 D)

  leaving a 1-D integral over ``phi``.

The integrands are smooth and ``2 pi``-periodic, so the periodic
trapezoid rule converges geometrically; the grid is doubled until the
log-likelihoods stop moving.
"""

import numpy as np
from scipy.special import logsumexp

from .channel import CC, Scenario
from .phase_noise import PhaseNoiseModel, log_pdf_exact

__all__ = ["OracleError", "oracle_log_likelihoods", "ORACLE_MAX_RHO", "ORACLE_MAX_M"]

ORACLE_MAX_RHO = 10.0
ORACLE_MAX_M = 3
_START_GRID = 64
_MAX_GRID = 4096


class OracleError(ValueError):
    """Instance outside the range where the oracle is reliable."""


def _grid(K):
    return -np.pi + 2.0 * np.pi * np.arange(K) / K


def _log_w(K):
    # trapezoid weight 2 pi / K times the uniform density 1 / (2 pi) of theta
    return -np.log(K)


def _cc_loglik(scn: Scenario, x, y, s, K):
    """``ln p(x, y | s)`` for the constant channel on a ``K x K`` grid."""
    th = _grid(K)[:, None, None]
    ph = _grid(K)[None, :, None]
    sr = np.sqrt(scn.rho)
    g = scn.g[None, None, :]
    mx = sr * g * np.exp(1j * th)
    my = mx * np.exp(1j * ph) * s
    # per-antenna Gaussian log densities, shape (K, K, M)
    ll = -2.0 * np.log(np.pi) - np.abs(x - mx) ** 2 - np.abs(y - my) ** 2
    models = scn.antenna_models()
    logp = np.stack([log_pdf_exact(m, _grid(K)) for m in models], axis=-1)[None, :, :]
    # phi step 2 pi / K times the density, theta step times 1 / (2 pi)
    log_dphi = np.log(2.0 * np.pi / K)
    if scn.sync:
        inner = ll.sum(axis=2) + logp[..., 0]
        return float(logsumexp(inner) + _log_w(K) + log_dphi)
    inner = ll + logp
    per_antenna = logsumexp(inner, axis=(0, 1)) + _log_w(K) + log_dphi
    return float(per_antenna.sum())


def _fc_loglik(scn: Scenario, x, y, s, K):
    """``ln p(x, y | s)`` for the fading channel on a ``K``-point ``phi`` grid."""
    rho = scn.rho
    ph = _grid(K)[:, None]
    D = 1.0 + rho + rho * abs(s) ** 2
    u = np.sqrt(rho) * (x[None, :] + np.conj(s) * y[None, :] * np.exp(-1j * ph))
    ll = -np.abs(x[None, :]) ** 2 - np.abs(y[None, :]) ** 2 + np.abs(u) ** 2 / D - np.log(np.pi**2 * D)
    models = scn.antenna_models()
    logp = np.stack([log_pdf_exact(m, _grid(K)) for m in models], axis=-1)
    log_dphi = np.log(2.0 * np.pi / K)
    if scn.sync:
        return float(logsumexp(ll.sum(axis=1) + logp[:, 0]) + log_dphi)
    return float((logsumexp(ll + logp, axis=0) + log_dphi).sum())


def oracle_log_likelihoods(scn: Scenario, x, y, tol: float = 1e-11, check_range: bool = True) -> np.ndarray:
    """``ln p(x, y | s_k)`` for every constellation point, by quadrature.

    The trapezoid grid starts at 64 points per phase and doubles until no
    log-likelihood moves by more than ``tol``.  Instances beyond
    ``M <= 3`` and ``rho <= 10`` are rejected (the integrands grow too
    peaked for a cheap grid) unless ``check_range`` is off.
    """
    if check_range and (scn.M > ORACLE_MAX_M or scn.rho > ORACLE_MAX_RHO):
        raise OracleError(
            f"oracle limited to M <= {ORACLE_MAX_M} and rho <= {ORACLE_MAX_RHO:g} (got M={scn.M}, rho={scn.rho:g})"
        )
    if scn.T != 1:
        raise OracleError("oracle covers the two-slot model only")
    if any(not isinstance(m, PhaseNoiseModel) for m in scn.antenna_models()):
        raise OracleError("bad phase-noise model")
    x = np.asarray(x, dtype=np.complex128).ravel()
    y = np.asarray(y, dtype=np.complex128).ravel()
    fn = _cc_loglik if scn.channel == CC else _fc_loglik
    K = _START_GRID
    prev = np.array([fn(scn, x, y, s, K) for s in scn.constellation])
    while True:
        K *= 2
        cur = np.array([fn(scn, x, y, s, K) for s in scn.constellation])
        if np.max(np.abs(cur - prev)) <= tol:
            return cur
        if K >= _MAX_GRID:
            raise OracleError(f"quadrature did not settle by {K} points (last change {np.max(np.abs(cur - prev)):.3g})")
        prev = cur
