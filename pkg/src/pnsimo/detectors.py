"""Maximum-likelihood and reference detectors.

Two-slot rules (pilot + one data symbol), all in the log domain::

    L_s = B(s) + sum_m ln(beta_m0 + 2 sum_l beta_ml cos(l zeta_m))    (NS)
    L_s = B(s) + ln(beta_0 + 2 sum_l beta_l cos(l zeta))              (S)

with ``beta_l = alpha_l I_l(a) I_l(b)`` for the constant channel and
``beta_l = alpha_l I_l(c)`` for the fading channel.  The leading term is
factored out, so only Bessel *ratios* enter the series and nothing
overflows at high SNR.

Every rule exists in a batch form working on ``(n, M)`` arrays, used by the
Monte Carlo harness, and a single-observation form returning a
:class:`DecisionResult`.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .channel import CC, FC, Observation, Scenario, is_psk
from .phase_noise import VON_MISES, PhaseNoiseModel, convolve_iid

__all__ = [
    "TruncationPolicy",
    "DecisionResult",
    "BatchDecision",
    "UnsupportedModelError",
    "log_truncated_series",
    "two_slot_batch",
    "detect_two_slot",
    "fc_von_mises_batch",
    "detect_fc_von_mises",
    "detect_high_snr_ns",
    "high_snr_ns_batch",
    "detect_min_distance_fc_ns",
    "min_distance_fc_ns_batch",
    "tslot_df_ns_batch",
    "tslot_genie_s_batch",
    "detect_tslot_df_ns",
    "detect_tslot_genie_s",
]


class UnsupportedModelError(ValueError):
    """The rule is only defined for a narrower class of inputs."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Series stopping rule.

    The series stops at the first ``nu >= l_min`` whose relative change
    ``|L(nu) - L(nu-1)| / |L(nu-1)|`` falls below ``delta_acc``, and never
    goes past ``l_max``.
    """

    delta_acc: float = 1e-12
    l_min: int = 2
    l_max: int = 64

    def __post_init__(self):
        if not 0.0 < self.delta_acc < 1.0:
            raise ValueError("delta_acc must lie in (0, 1)")
        if not 1 <= self.l_min <= self.l_max:
            raise ValueError("need 1 <= l_min <= l_max")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True, eq=False)
class DecisionResult:
    metrics: np.ndarray
    argmax_index: int
    terms_used: np.ndarray
    flags: np.ndarray

    @property
    def converged(self) -> bool:
        return bool(np.all(self.flags == kernels.FLAG_OK))


@dataclass(frozen=True, eq=False)
class BatchDecision:
    """Metrics of shape ``(n, N)`` (or ``(n, T, N)``) and the decisions."""

    metrics: np.ndarray
    decisions: np.ndarray
    terms_used: np.ndarray
    flags: np.ndarray

    def result(self, *index) -> DecisionResult:
        m = self.metrics[index]
        return DecisionResult(m, int(self.decisions[index]), self.terms_used[index], self.flags[index])


# ----------------------------------------------------------------------------
# series plumbing
# ----------------------------------------------------------------------------


def _bessel(x, order):
    """``ln I_0(x)`` and the ratio table, shaped like ``x``."""
    x = np.asarray(x, dtype=np.float64)
    log_i0e, ratios = kernels.bessel_table(x.ravel(), order)
    return (log_i0e + x.ravel()).reshape(x.shape), ratios.reshape(x.shape + (order,))


def _log_i0(x):
    x = np.asarray(x, dtype=np.float64)
    log_i0e, _ = kernels.bessel_table(x.ravel(), 1)
    return (log_i0e + x.ravel()).reshape(x.shape)


def _series(log0, ra, rb, alpha, rows, zeta, policy):
    shape = np.shape(log0)
    L = policy.l_max
    rows = np.broadcast_to(rows, shape)
    value, terms, flags = kernels.log_series(
        np.ravel(log0),
        ra.reshape(-1, L),
        None if rb is None else rb.reshape(-1, L),
        alpha,
        np.ravel(rows),
        np.ravel(zeta),
        policy.delta_acc,
        policy.l_min,
        L,
    )
    return value.reshape(shape), terms.reshape(shape), flags.reshape(shape)


def _alpha_table(models, order):
    return np.array([m.padded(order) for m in models])


def _alpha_setup(scn: Scenario, order: int, t: int = 1):
    """``(table, rows)`` where ``table[rows[m]]`` holds ``alpha_{m,l}`` for ``t`` increments."""
    if isinstance(scn.noise_model, PhaseNoiseModel):
        return _alpha_table([convolve_iid(scn.noise_model, t)], order), np.zeros(scn.M, dtype=np.int64)
    models = [convolve_iid(m, t) for m in scn.noise_model]
    return _alpha_table(models, order), np.arange(scn.M, dtype=np.int64)


def _magnitude_groups(points):
    """Group constellation indices by ``|s|`` (Bessel arguments depend on it alone)."""
    mags = np.abs(points)
    groups = {}
    for k, r in enumerate(np.round(mags, 12)):
        groups.setdefault(float(r), []).append(k)
    return [(mags[idx[0]], np.array(idx)) for idx in groups.values()]


def _angle(points):
    ang = np.angle(points)
    ang[np.abs(points) == 0] = 0.0
    return ang


def _combine(values, terms, flags, axis):
    return values.sum(axis=axis), terms.max(axis=axis), flags.max(axis=axis)


def log_truncated_series(log_beta, zeta, policy=DEFAULT_POLICY, sign=None):
    """``ln(beta_0 + 2 sum_l beta_l cos(l zeta))`` from log-magnitudes.

    ``log_beta[l]`` is ``ln|beta_l|`` and ``sign[l]`` its sign (default all
    positive); ``beta_0`` must be positive.  The sum is built relative to
    ``beta_0`` and stopped by ``policy``.  Returns ``(value, terms_used,
    flag)`` where a nonzero flag means non-convergence (1) or a clamped
    nonpositive sum (2).
    """
    log_beta = np.asarray(log_beta, dtype=np.float64)
    if sign is None:
        sign = np.ones_like(log_beta)
    sign = np.asarray(sign, dtype=np.float64)
    if log_beta.size == 0 or sign[0] <= 0 or not np.isfinite(log_beta[0]):
        raise ValueError("beta_0 must be positive")
    L = policy.l_max
    rel = np.zeros(L + 1)
    n = min(L, log_beta.size - 1)
    with np.errstate(over="raise"):
        rel[1 : n + 1] = sign[1 : n + 1] * np.exp(log_beta[1 : n + 1] - log_beta[0])
    rel[0] = 1.0
    value, terms, flags = kernels.log_series(
        np.array([log_beta[0]]),
        np.ones((1, L)),
        None,
        rel[None, :],
        np.zeros(1, dtype=np.int64),
        np.array([float(zeta)]),
        policy.delta_acc,
        policy.l_min,
        L,
    )
    return float(value[0]), int(terms[0]), int(flags[0])


# ----------------------------------------------------------------------------
# two-slot optimal detectors
# ----------------------------------------------------------------------------


def _fc_quadratic(rho, s_mag2, xx, yy, M):
    den = 1.0 + rho + rho * s_mag2
    return -M * np.log(den) - (1.0 + rho * s_mag2) / den * xx - (1.0 + rho) / den * yy


def two_slot_batch(scn: Scenario, x, y, policy: TruncationPolicy = DEFAULT_POLICY) -> BatchDecision:
    """Optimal two-slot metrics for ``n`` observations.

    ``x`` has shape ``(n, M)`` and ``y`` shape ``(n, M)`` (or ``(n, 1, M)``).
    """
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if y.ndim == 3:
        if y.shape[1] != 1:
            raise ValueError("two-slot detection takes a single data slot")
        y = y[:, 0, :]
    if x.ndim == 1:
        x, y = x[None, :], y[None, :]
    if x.shape != y.shape or x.shape[1] != scn.M:
        raise ValueError(f"observation dimensions {x.shape}/{y.shape} do not match M={scn.M}")
    n, M = x.shape
    pts = scn.constellation
    N = pts.size
    rho = scn.rho
    L = policy.l_max
    sqrt_rho = np.sqrt(rho)
    alpha, rows = _alpha_setup(scn, L)
    metrics = np.empty((n, N))
    terms = np.empty((n, N), dtype=np.int64)
    flags = np.empty((n, N), dtype=np.int64)
    arg_s = _angle(pts)

    if scn.channel == CC:
        g = scn.g
        gg = float(g @ g)
        if scn.sync:
            gx = x @ g
            gy = y @ g
            log_b, rb = _bessel(2.0 * sqrt_rho * np.abs(gx), L)
            base_zeta = np.angle(gy) - np.angle(gx)
            for mag, idx in _magnitude_groups(pts):
                log_a, ra = _bessel(2.0 * sqrt_rho * mag * np.abs(gy), L)
                for k in idx:
                    v, t, f = _series(log_a + log_b, ra, rb, alpha, 0, base_zeta - arg_s[k], policy)
                    metrics[:, k] = -rho * mag * mag * gg + v
                    terms[:, k], flags[:, k] = t, f
        else:
            log_b, rb = _bessel(2.0 * sqrt_rho * g * np.abs(x), L)
            base_zeta = np.angle(y) - np.angle(x)
            for mag, idx in _magnitude_groups(pts):
                log_a, ra = _bessel(2.0 * sqrt_rho * mag * g * np.abs(y), L)
                for k in idx:
                    v, t, f = _combine(
                        *_series(log_a + log_b, ra, rb, alpha, rows[None, :], base_zeta - arg_s[k], policy),
                        axis=1,
                    )
                    metrics[:, k] = -rho * mag * mag * gg + v
                    terms[:, k], flags[:, k] = t, f
    else:
        xx = np.sum(np.abs(x) ** 2, axis=1)
        yy = np.sum(np.abs(y) ** 2, axis=1)
        if scn.sync:
            xy = np.sum(np.conj(x) * y, axis=1)
            base_zeta = np.angle(xy)
            amp = np.abs(xy)
        else:
            xy = np.conj(x) * y
            base_zeta = np.angle(xy)
            amp = np.abs(xy)
        for mag, idx in _magnitude_groups(pts):
            den = 1.0 + rho + rho * mag * mag
            log_c, rc = _bessel(2.0 * rho * mag * amp / den, L)
            B = _fc_quadratic(rho, mag * mag, xx, yy, M)
            for k in idx:
                if scn.sync:
                    v, t, f = _series(log_c, rc, None, alpha, 0, base_zeta - arg_s[k], policy)
                else:
                    v, t, f = _combine(
                        *_series(log_c, rc, None, alpha, rows[None, :], base_zeta - arg_s[k], policy), axis=1
                    )
                metrics[:, k] = B + v
                terms[:, k], flags[:, k] = t, f
    return BatchDecision(metrics, np.argmax(metrics, axis=1), terms, flags)


def _received(obs):
    if isinstance(obs, Observation):
        return obs.x, obs.y
    x, y = obs
    return np.asarray(x), np.asarray(y)


def detect_two_slot(scn: Scenario, obs, policy: TruncationPolicy = DEFAULT_POLICY) -> DecisionResult:
    """Optimal ML decision for one two-slot observation (any of the four cases)."""
    if scn.T != 1:
        raise ValueError("detect_two_slot needs T = 1")
    x, y = _received(obs)
    x = np.asarray(x, dtype=np.complex128).ravel()
    y = np.asarray(y, dtype=np.complex128).reshape(-1)
    if x.size != scn.M or y.size != scn.M:
        raise ValueError(f"observation dimensions do not match M={scn.M}")
    return two_slot_batch(scn, x[None, :], y[None, :], policy).result(0)


# ----------------------------------------------------------------------------
# von Mises closed form (fading channel)
# ----------------------------------------------------------------------------


def fc_von_mises_batch(scn: Scenario, x, y) -> BatchDecision:
    """Closed-form fading-channel metrics for von Mises increments.

    ``ln I_0(sqrt(kappa^2 + b^2 + 2 kappa b cos zeta)) - ln I_0(kappa)``
    replaces the Fourier series; no truncation is involved.
    """
    if scn.channel != FC:
        raise UnsupportedModelError("the closed form covers the fading channel only")
    models = scn.antenna_models()
    if any(m.family != VON_MISES or m.increments != 1 for m in models):
        raise UnsupportedModelError("the closed form needs von Mises phase noise")
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if y.ndim == 3:
        y = y[:, 0, :]
    n, M = x.shape
    rho = scn.rho
    kappa = np.array([m.param for m in models])
    pts = scn.constellation
    arg_s = _angle(pts)
    xx = np.sum(np.abs(x) ** 2, axis=1)
    yy = np.sum(np.abs(y) ** 2, axis=1)
    if scn.sync:
        prod = np.sum(np.conj(x) * y, axis=1, keepdims=True)
        kap = kappa[:1]
    else:
        prod = np.conj(x) * y
        kap = kappa
    metrics = np.empty((n, pts.size))
    log_i0_kappa = _log_i0(kap)[None, :]
    kap = kap[None, :]
    for k, s in enumerate(pts):
        mag = abs(s)
        den = 1.0 + rho + rho * mag * mag
        b = 2.0 * rho * mag * np.abs(prod) / den
        zeta = np.angle(prod) - arg_s[k]
        arg = np.sqrt(np.maximum(kap * kap + b * b + 2.0 * kap * b * np.cos(zeta), 0.0))
        term = (_log_i0(arg) - log_i0_kappa).sum(axis=1)
        metrics[:, k] = _fc_quadratic(rho, mag * mag, xx, yy, M) + term
    zeros = np.zeros(metrics.shape, dtype=np.int64)
    return BatchDecision(metrics, np.argmax(metrics, axis=1), zeros, zeros.copy())


def detect_fc_von_mises(scn: Scenario, obs, mode: str = None) -> DecisionResult:
    """Closed-form von Mises detector for one fading-channel observation.

    ``mode`` ('S' or 'NS') defaults to the scenario's oscillator setting.
    """
    if mode is not None and mode != scn.oscillators:
        scn = scn.with_(oscillators=mode)
    x, y = _received(obs)
    x = np.asarray(x, dtype=np.complex128).ravel()
    y = np.asarray(y, dtype=np.complex128).reshape(-1)
    return fc_von_mises_batch(scn, x[None, :], y[None, :]).result(0)


# ----------------------------------------------------------------------------
# high-SNR reference rules (PSK only)
# ----------------------------------------------------------------------------


def _require_psk(points):
    points = np.asarray(points, dtype=np.complex128)
    if not is_psk(points):
        raise UnsupportedModelError("this rule needs an N-PSK constellation in natural order")
    return points.size


def high_snr_ns_batch(psi, constellation) -> BatchDecision:
    """``argmax_n sum_m cos(psi_m - 2 pi n / N)`` for rows of ``psi``."""
    N = _require_psk(constellation)
    psi = np.atleast_2d(np.asarray(psi, dtype=np.float64))
    ang = 2.0 * np.pi * np.arange(N) / N
    metrics = np.cos(psi[:, :, None] - ang[None, None, :]).sum(axis=1)
    zeros = np.zeros(metrics.shape, dtype=np.int64)
    return BatchDecision(metrics, np.argmax(metrics, axis=1), zeros, zeros.copy())


def detect_high_snr_ns(psi, constellation) -> DecisionResult:
    """High-SNR non-synchronous rule from the per-antenna phases ``psi``."""
    return high_snr_ns_batch(np.asarray(psi, dtype=np.float64)[None, :], constellation).result(0)


def min_distance_fc_ns_batch(v, constellation) -> BatchDecision:
    """Nearest PSK point to the antenna average of ``v_m = x_m^* y_m``.

    Metrics are negative Euclidean distances, so the argmax convention and
    the lowest-index tie-break carry over.
    """
    N = _require_psk(constellation)
    pts = np.asarray(constellation, dtype=np.complex128)
    v = np.atleast_2d(np.asarray(v, dtype=np.complex128))
    zeta = v.mean(axis=1)
    metrics = -np.abs(zeta[:, None] - pts[None, :])
    zeros = np.zeros(metrics.shape, dtype=np.int64)
    return BatchDecision(metrics, np.argmax(metrics, axis=1), zeros, zeros.copy())


def detect_min_distance_fc_ns(v, constellation) -> DecisionResult:
    return min_distance_fc_ns_batch(np.asarray(v, dtype=np.complex128)[None, :], constellation).result(0)


# ----------------------------------------------------------------------------
# T-slot detectors
# ----------------------------------------------------------------------------


def _first_coefficients(scn: Scenario):
    return np.array([m.coefficient(1) for m in scn.antenna_models()])


def tslot_df_ns_batch(scn: Scenario, x, y, policy: TruncationPolicy = DEFAULT_POLICY) -> BatchDecision:
    """Causal decision-feedback detector for non-synchronous oscillators.

    Past slots are modelled with their mean phasor ``d_m[tau] = alpha_{m,1}^tau``
    and the detector's own past decisions; the current slot sees the
    accumulated-increment density with coefficients ``alpha_{m,l}^t``.
    ``y`` has shape ``(n, T, M)``.
    """
    if scn.sync:
        raise ValueError("decision feedback detector is defined for NS operation")
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    n, T, M = y.shape
    if x.shape != (n, M) or M != scn.M:
        raise ValueError("observation dimensions do not match the scenario")
    pts = scn.constellation
    N = pts.size
    rho = scn.rho
    sqrt_rho = np.sqrt(rho)
    L = policy.l_max
    d1 = _first_coefficients(scn)
    arg_s = _angle(pts)
    groups = _magnitude_groups(pts)

    metrics = np.empty((n, T, N))
    terms = np.empty((n, T, N), dtype=np.int64)
    flags = np.empty((n, T, N), dtype=np.int64)
    decisions = np.empty((n, T), dtype=np.int64)

    v = np.conj(x)  # x_m^* + sum_tau y_m^*[tau] d_m[tau] s_tau
    a_hat = np.full((n, M), 1.0 + rho)  # FC accumulator
    for t in range(T):
        alpha, rows = _alpha_setup(scn, L, t + 1)
        rows = rows[None, :]
        yt = y[:, t, :]
        if scn.channel == CC:
            g = scn.g
            gg = float(g @ g)
            log_b, rb = _bessel(2.0 * sqrt_rho * g * np.abs(v), L)
            base_zeta = -np.angle(yt) - np.angle(v)
            for mag, idx in groups:
                log_a, ra = _bessel(2.0 * sqrt_rho * g * mag * np.abs(yt), L)
                for k in idx:
                    val, tt, ff = _combine(
                        *_series(log_a + log_b, ra, rb, alpha, rows, base_zeta + arg_s[k], policy), axis=1
                    )
                    metrics[:, t, k] = -rho * mag * mag * gg + val
                    terms[:, t, k], flags[:, t, k] = tt, ff
        else:
            vv = np.abs(v) ** 2
            yy = np.abs(yt) ** 2
            base_zeta = -np.angle(v) - np.angle(yt)  # arg(conj(v) conj(y) s) without arg(s)
            amp = np.abs(v) * np.abs(yt)
            for mag, idx in groups:
                den = a_hat + rho * mag * mag
                quad = -np.log(den) + rho * (vv + yy * mag * mag) / den
                log_c, rc = _bessel(2.0 * rho * mag * amp / den, L)
                for k in idx:
                    val, tt, ff = _combine(
                        *_series(log_c + quad, rc, None, alpha, rows, base_zeta + arg_s[k], policy), axis=1
                    )
                    metrics[:, t, k] = val
                    terms[:, t, k], flags[:, t, k] = tt, ff
        dec = np.argmax(metrics[:, t, :], axis=1)
        decisions[:, t] = dec
        d = d1 ** (t + 1)
        s_hat = pts[dec]
        v = v + np.conj(yt) * d[None, :] * s_hat[:, None]
        a_hat = a_hat + rho * np.abs(d[None, :] * s_hat[:, None]) ** 2
    return BatchDecision(metrics, decisions, terms, flags)


def tslot_genie_s_batch(
    scn: Scenario, x, y, phases, symbols, policy: TruncationPolicy = DEFAULT_POLICY
) -> BatchDecision:
    """Genie-aided causal detector for synchronous operation.

    ``phases[:, t]`` is the phase the genie reveals before slot ``t``: the
    accumulated increments ``sum_{tau<t} phi_tau`` (fading channel) or that
    sum plus the initial phase (constant channel).  ``symbols`` holds the
    true past symbol indices, shape ``(n, T)``; only entries before ``t``
    are used in slot ``t``.  ``phases_after[:, t]`` for the fading channel
    past-slot derotation is recovered as ``phases[:, t+1]``.
    """
    if not scn.sync:
        raise ValueError("genie-aided detector is defined for S operation")
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    phases = np.asarray(phases, dtype=np.float64)
    symbols = np.asarray(symbols, dtype=np.int64)
    n, T, M = y.shape
    if x.shape != (n, M) or M != scn.M:
        raise ValueError("observation dimensions do not match the scenario")
    pts = scn.constellation
    N = pts.size
    rho = scn.rho
    sqrt_rho = np.sqrt(rho)
    L = policy.l_max
    alpha, _ = _alpha_setup(scn, L, 1)
    arg_s = _angle(pts)
    groups = _magnitude_groups(pts)

    metrics = np.empty((n, T, N))
    terms = np.empty((n, T, N), dtype=np.int64)
    flags = np.empty((n, T, N), dtype=np.int64)
    decisions = np.empty((n, T), dtype=np.int64)

    if scn.channel == CC:
        g = scn.g
        gg = float(g @ g)
        for t in range(T):
            yg = np.conj(y[:, t, :]) @ g  # y_t^H g
            for mag, idx in groups:
                log_a, ra = _bessel(2.0 * sqrt_rho * mag * np.abs(yg), L)
                for k in idx:
                    zeta = phases[:, t] + arg_s[k] + np.angle(yg)
                    val, tt, ff = _series(log_a, ra, None, alpha, 0, zeta, policy)
                    metrics[:, t, k] = -rho * mag * mag * gg + val
                    terms[:, t, k], flags[:, t, k] = tt, ff
            decisions[:, t] = np.argmax(metrics[:, t, :], axis=1)
        return BatchDecision(metrics, decisions, terms, flags)

    v = x.copy()  # x + sum_tau s_tau^* exp(-j sum_{<=tau} phi) y_tau
    a_t = np.full(n, 1.0 + rho)
    for t in range(T):
        yt = y[:, t, :]
        vy = np.sum(np.conj(v) * yt, axis=1)  # v^H y_t
        vv = np.sum(np.abs(v) ** 2, axis=1)
        yy = np.sum(np.abs(yt) ** 2, axis=1)
        for mag, idx in groups:
            den = a_t + rho * mag * mag
            quad = rho * (vv + mag * mag * yy) / den - M * np.log(den)
            log_c, rc = _bessel(2.0 * rho * mag * np.abs(vy) / den, L)
            for k in idx:
                # arg(chi) = arg(v^H y_t) - arg(s)
                zeta = phases[:, t] - (np.angle(vy) - arg_s[k])
                val, tt, ff = _series(log_c + quad, rc, None, alpha, 0, zeta, policy)
                metrics[:, t, k] = val
                terms[:, t, k], flags[:, t, k] = tt, ff
        decisions[:, t] = np.argmax(metrics[:, t, :], axis=1)
        if t + 1 < T:
            s_true = pts[symbols[:, t]]
            rot = np.exp(-1j * phases[:, t + 1])
            v = v + (np.conj(s_true) * rot)[:, None] * yt
            a_t = a_t + rho * np.abs(s_true) ** 2
    return BatchDecision(metrics, decisions, terms, flags)


def genie_phases(scn: Scenario, truth) -> np.ndarray:
    """Phases revealed by the genie, shape ``(n, T)`` (or ``(T,)``).

    Slot ``t`` gets ``sum_{tau<t} phi_tau``, plus the initial phase on the
    constant channel.
    """
    acc = np.asarray(truth.accumulated)
    acc = acc[..., 0]  # synchronous: identical across antennas
    prev = np.zeros_like(acc)
    prev[..., 1:] = acc[..., :-1]
    if scn.channel == CC:
        theta = np.asarray(truth.theta)[..., 0]
        prev = prev + np.asarray(theta)[..., None]
    return prev


def detect_tslot_df_ns(scn: Scenario, obs, policy: TruncationPolicy = DEFAULT_POLICY):
    """Decision-feedback decisions for one ``T``-slot observation."""
    x, y = _received(obs)
    res = tslot_df_ns_batch(scn, np.asarray(x)[None, :], np.asarray(y)[None, :, :], policy)
    return [res.result(0, t) for t in range(y.shape[0])]


def detect_tslot_genie_s(scn: Scenario, obs: Observation, policy: TruncationPolicy = DEFAULT_POLICY,
                         phases=None, symbols=None):
    """Genie-aided decisions for one ``T``-slot observation.

    Genie inputs default to the observation's truth record.
    """
    if phases is None or symbols is None:
        if obs.truth is None:
            raise ValueError("genie-aided detection needs the truth record (or explicit genie inputs)")
        if phases is None:
            phases = genie_phases(scn, obs.truth)
        if symbols is None:
            symbols = obs.truth.symbols
    res = tslot_genie_s_batch(
        scn,
        np.asarray(obs.x)[None, :],
        np.asarray(obs.y)[None, :, :],
        np.asarray(phases, dtype=np.float64)[None, :],
        np.asarray(symbols)[None, :],
        policy,
    )
    return [res.result(0, t) for t in range(obs.y.shape[0])]
