"""Hot numeric kernels, in a numba flavour and a vectorised numpy flavour.

Two kernels carry nearly all of the Monte Carlo runtime:

``bessel_table``
    For each argument ``x`` returns ``ln(exp(-x) I_0(x))`` and the ratios
    ``I_k(x) / I_{k-1}(x)`` for ``k = 1..order``.  Both come out of a single
    backward (Miller) recurrence ``r_k = x / (2k + x r_{k+1})``; the
    normalisation ``exp(x) = I_0(x) (1 + 2 sum_k prod_{j<=k} r_j)`` is
    accumulated in Horner form on the way down, so nothing ever overflows.

``log_series``
    Evaluates ``ln(beta_0 + 2 sum_l beta_l cos(l zeta))`` with the leading
    term factored out, stopping on the relative-change rule.

The public names dispatch on :data:`pnsimo._accel.USE_NUMBA`; the
``*_numba`` and ``*_numpy`` variants stay importable for benchmarking and
cross-checks.
"""

import math

import numpy as np

from ._accel import USE_NUMBA, numba

# Miller start order: the truncation error at order l is roughly
# exp(-(N^2 - l^2) / x) for large x and (x/2)^(N-l) l!/N! for small x.
_MILLER_PAD = 24
_MILLER_DECAY = 80.0

FLAG_OK = 0
FLAG_NONCONVERGED = 1
FLAG_CLAMPED = 2

_CLAMP_LOG = math.log(1e-300)


def miller_start(x: float, order: int) -> int:
    """Starting order of the backward recurrence for argument ``x``."""
    return int(math.sqrt(order * order + _MILLER_DECAY * x)) + _MILLER_PAD


# ----------------------------------------------------------------------------
# numpy flavour
# ----------------------------------------------------------------------------


def bessel_table_numpy(x, order):
    x = np.ascontiguousarray(x, dtype=np.float64).ravel()
    n = x.shape[0]
    ratios = np.zeros((n, order), dtype=np.float64)
    if n == 0:
        return np.zeros(0), ratios
    start = miller_start(float(x.max()), order)
    r = np.zeros(n)
    horner = np.zeros(n)
    for k in range(start, 0, -1):
        r = x / (2.0 * k + x * r)
        horner = r * (1.0 + horner)
        if k <= order:
            ratios[:, k - 1] = r
    log_i0e = -np.log1p(2.0 * horner)
    return log_i0e, ratios


def log_series_numpy(log0, ra, rb, alpha, alpha_row, zeta, delta_acc, l_min, l_max):
    log0 = np.asarray(log0, dtype=np.float64)
    n = log0.shape[0]
    value = log0.copy()
    terms = np.full(n, l_max, dtype=np.int64)
    flags = np.zeros(n, dtype=np.int64)
    if n == 0:
        return value, terms, flags
    active = np.ones(n, dtype=bool)
    s = np.ones(n)
    prod = np.ones(n)
    prev = log0.copy()
    for l in range(1, l_max + 1):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        p = prod[idx] * ra[idx, l - 1]
        if rb is not None:
            p = p * rb[idx, l - 1]
        prod[idx] = p
        t = alpha[alpha_row[idx], l] * p
        s_new = s[idx] + 2.0 * t * np.cos(l * zeta[idx])
        s[idx] = s_new
        pos = s_new > 0.0
        cur = np.where(pos, log0[idx] + np.log(np.where(pos, s_new, 1.0)), np.nan)
        denom = np.abs(prev[idx])
        diff = np.abs(cur - prev[idx])
        rel = np.where(denom > 0.0, diff / np.where(denom > 0.0, denom, 1.0), diff)
        # an exactly vanishing term (uniform noise, zero argument) also stops
        done = pos & (l >= l_min) & ((rel < delta_acc) | (t == 0.0))
        done_idx = idx[done]
        value[done_idx] = cur[done]
        terms[done_idx] = l
        active[done_idx] = False
        prev[idx[pos]] = cur[pos]
    rest = np.nonzero(active)[0]
    if rest.size:
        ok = s[rest] > 0.0
        value[rest[ok]] = log0[rest[ok]] + np.log(s[rest[ok]])
        flags[rest[ok]] = FLAG_NONCONVERGED
        value[rest[~ok]] = log0[rest[~ok]] + _CLAMP_LOG
        flags[rest[~ok]] = FLAG_CLAMPED
    return value, terms, flags


# ----------------------------------------------------------------------------
# numba flavour
# ----------------------------------------------------------------------------

if numba is not None:

    @numba.njit(cache=True, nogil=True)
    def bessel_table_numba(x, order):
        # rows innermost: the recurrence is serial in k but independent
        # across arguments, which lets the compiler vectorise the divisions
        n = x.shape[0]
        ratios = np.zeros((n, order))
        log_i0e = np.empty(n)
        if n == 0:
            return log_i0e, ratios
        start = int(math.sqrt(order * order + _MILLER_DECAY * x.max())) + _MILLER_PAD
        r = np.zeros(n)
        horner = np.zeros(n)
        for k in range(start, 0, -1):
            for i in range(n):
                ri = x[i] / (2.0 * k + x[i] * r[i])
                r[i] = ri
                horner[i] = ri * (1.0 + horner[i])
            if k <= order:
                ratios[:, k - 1] = r
        for i in range(n):
            log_i0e[i] = -math.log1p(2.0 * horner[i])
        return log_i0e, ratios

    @numba.njit(cache=True, nogil=True)
    def _series_row(log0, ra, rb, use_rb, alpha, zeta, delta_acc, l_min, l_max):
        s = 1.0
        prod = 1.0
        prev = log0
        for l in range(1, l_max + 1):
            prod *= ra[l - 1]
            if use_rb:
                prod *= rb[l - 1]
            t = alpha[l] * prod
            s += 2.0 * t * math.cos(l * zeta)
            if s > 0.0:
                cur = log0 + math.log(s)
                diff = abs(cur - prev)
                denom = abs(prev)
                rel = diff / denom if denom > 0.0 else diff
                if l >= l_min and (rel < delta_acc or t == 0.0):
                    return cur, l, 0
                prev = cur
        if s > 0.0:
            return log0 + math.log(s), l_max, 1
        return log0 + _CLAMP_LOG, l_max, 2

    @numba.njit(cache=True, nogil=True)
    def _log_series_numba(log0, ra, rb, use_rb, alpha, alpha_row, zeta, delta_acc, l_min, l_max):
        n = log0.shape[0]
        value = np.empty(n)
        terms = np.empty(n, dtype=np.int64)
        flags = np.empty(n, dtype=np.int64)
        for i in range(n):
            rbi = rb[i] if use_rb else ra[i]
            v, t, f = _series_row(
                log0[i], ra[i], rbi, use_rb, alpha[alpha_row[i]], zeta[i], delta_acc, l_min, l_max
            )
            value[i] = v
            terms[i] = t
            flags[i] = f
        return value, terms, flags

    def log_series_numba(log0, ra, rb, alpha, alpha_row, zeta, delta_acc, l_min, l_max):
        use_rb = rb is not None
        return _log_series_numba(
            np.ascontiguousarray(log0, dtype=np.float64),
            np.ascontiguousarray(ra, dtype=np.float64),
            np.ascontiguousarray(rb if use_rb else ra, dtype=np.float64),
            use_rb,
            np.ascontiguousarray(alpha, dtype=np.float64),
            np.ascontiguousarray(alpha_row, dtype=np.int64),
            np.ascontiguousarray(zeta, dtype=np.float64),
            float(delta_acc),
            int(l_min),
            int(l_max),
        )

else:  # pragma: no cover
    bessel_table_numba = None
    log_series_numba = None


def bessel_table(x, order):
    """``(ln(exp(-x) I_0(x)), [I_k/I_{k-1} for k=1..order])`` per argument.

    ``x`` is flattened; the ratio table has shape ``(x.size, order)``.
    """
    x = np.ascontiguousarray(x, dtype=np.float64).ravel()
    if USE_NUMBA:
        return bessel_table_numba(x, int(order))
    return bessel_table_numpy(x, int(order))


def log_series(log0, ra, rb, alpha, alpha_row, zeta, delta_acc, l_min, l_max):
    """Truncated ``log0 + ln(1 + 2 sum_l alpha_l prod(ra) prod(rb) cos(l zeta))``.

    ``ra``/``rb`` are Bessel ratio tables (``rb`` may be ``None`` for the
    single-Bessel fading forms); ``alpha[alpha_row[i]]`` is the coefficient
    row used by evaluation ``i``.  Returns ``(value, terms_used, flags)``.
    """
    if USE_NUMBA:
        return log_series_numba(log0, ra, rb, alpha, alpha_row, zeta, delta_acc, l_min, l_max)
    return log_series_numpy(
        np.asarray(log0, dtype=np.float64),
        np.asarray(ra, dtype=np.float64),
        None if rb is None else np.asarray(rb, dtype=np.float64),
        np.asarray(alpha, dtype=np.float64),
        np.asarray(alpha_row, dtype=np.int64),
        np.asarray(zeta, dtype=np.float64),
        delta_acc,
        l_min,
        l_max,
    )
