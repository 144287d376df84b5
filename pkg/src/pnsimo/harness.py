"""Monte Carlo sweeps, truncation statistics, oracle validation and CSV output.

Reproducibility model
---------------------
Every grid point gets an index in config order.  Trials are processed in
fixed-size blocks; block ``b`` of point ``p`` draws its symbols from
``substream(seed, p, b, ROLE_SYMBOLS)`` and its channel from
``substream(seed, p, b, ROLE_CHANNEL)``.  Workers evaluate blocks in waves
and results are merged strictly in block order, stopping at the first
block where the error target is met, so the output does not depend on the
number of threads.
"""

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Optional

import numpy as np

from . import analysis
from .channel import (
    CC,
    FC,
    NONSYNC,
    ROLE_CHANNEL,
    ROLE_SYMBOLS,
    SYNC,
    Scenario,
    db_to_linear,
    psk,
    simulate_batch,
    simulate_two_slot,
    substream,
)
from .detectors import (
    TruncationPolicy,
    fc_von_mises_batch,
    genie_phases,
    high_snr_ns_batch,
    min_distance_fc_ns_batch,
    tslot_df_ns_batch,
    tslot_genie_s_batch,
    two_slot_batch,
)
from .oracle import oracle_log_likelihoods
from .phase_noise import (
    UNIFORM,
    VON_MISES,
    WRAPPED_GAUSSIAN,
    PhaseNoiseModel,
    fourier_uniform,
    fourier_von_mises,
    fourier_wrapped_gaussian,
    from_coefficients,
    sample_phase,
)

__all__ = [
    "CSV_COLUMNS",
    "ConfigError",
    "SweepConfig",
    "SerEstimate",
    "ValidationReport",
    "load_config",
    "build_model",
    "run_ser_sweep",
    "run_truncation_stats",
    "run_oracle_validation",
    "run_closed_form_check",
    "run_floor_and_bounds",
    "run_tslot_comparison",
    "high_snr_limit_ser",
    "write_csv",
    "csv_text",
]

CSV_COLUMNS = (
    "scenario",
    "channel",
    "oscillators",
    "M",
    "N",
    "model_family",
    "model_param",
    "rho_db",
    "trials",
    "errors",
    "ser",
    "stderr",
    "mean_terms",
    "max_terms",
    "flags",
)

DETECTORS = ("optimal", "closed_form", "high_snr_ns", "min_distance", "df_ns", "genie_s")


class ConfigError(ValueError):
    pass


# ----------------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    """One experiment manifest (JSON on disk).

    ``scenarios`` are labels such as ``"CC-S"``; ``rho_db`` may contain
    ``"inf"`` for the high-SNR limit rules.  ``target_errors`` of ``None``
    disables early stopping.
    """

    name: str = "sweep"
    scenarios: tuple = ("CC-S", "CC-NS", "FC-S", "FC-NS")
    rho_db: tuple = (0.0, 10.0, 20.0, 30.0, 40.0)
    M: tuple = (2, 4, 6)
    model: dict = field(default_factory=lambda: {"family": VON_MISES, "param": 4.0})
    constellation: dict = field(default_factory=lambda: {"psk": 4})
    trials: int = 100_000
    target_errors: Optional[int] = 200
    seed: int = 0
    policy: TruncationPolicy = TruncationPolicy()
    detector: str = "optimal"
    T: int = 1
    g: Optional[tuple] = None
    block_size: int = 1024
    bound_trials: int = 1_000_000
    out: Optional[str] = None

    def __post_init__(self):
        if int(self.trials) < 1:
            raise ConfigError("trials must be at least 1")
        if self.target_errors is not None and not 1 <= int(self.target_errors) <= int(self.trials):
            raise ConfigError("target_errors must lie in [1, trials]")
        if not self.rho_db or any(math.isnan(r) or r == -math.inf for r in self.rho_db):
            raise ConfigError("rho grid must be nonempty and finite (or +inf for limit rules)")
        if self.detector not in DETECTORS:
            raise ConfigError(f"detector must be one of {DETECTORS}")
        if int(self.T) < 1 or int(self.block_size) < 1:
            raise ConfigError("T and block_size must be positive")
        for lab in self.scenarios:
            _split_label(lab)
        build_model(self.model)
        build_constellation(self.constellation)

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(raw)
        if "policy" in kw:
            pol = kw["policy"]
            kw["policy"] = pol if isinstance(pol, TruncationPolicy) else TruncationPolicy(**pol)
        for key in ("scenarios", "M", "g"):
            if kw.get(key) is not None:
                kw[key] = tuple(kw[key]) if not isinstance(kw[key], (str, int)) else (kw[key],)
        if "rho_db" in kw:
            grid = kw["rho_db"] if isinstance(kw["rho_db"], (list, tuple)) else [kw["rho_db"]]
            kw["rho_db"] = tuple(float(r) for r in grid)
        if "M" in kw:
            kw["M"] = tuple(int(m) for m in kw["M"])
        try:
            return cls(**kw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rho_db"] = [r if math.isfinite(r) else "inf" for r in self.rho_db]
        return d

    def override(self, seed=None, trials=None, out=None) -> "SweepConfig":
        changes = {}
        if seed is not None:
            changes["seed"] = int(seed)
        if trials is not None:
            changes["trials"] = int(trials)
            changes["bound_trials"] = int(trials)
            if self.target_errors is not None:
                changes["target_errors"] = min(self.target_errors, int(trials))
        if out is not None:
            changes["out"] = out
        return replace(self, **changes)


def load_config(path) -> SweepConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return SweepConfig.from_dict(raw)


def build_model(spec: dict) -> PhaseNoiseModel:
    spec = dict(spec)
    family = spec.pop("family", None)
    order = int(spec.pop("order", 64))
    param = spec.pop("param", None)
    coeffs = spec.pop("coeffs", None)
    if spec:
        raise ConfigError(f"unknown model keys: {sorted(spec)}")
    if family == VON_MISES:
        return fourier_von_mises(float(param), order)
    if family == WRAPPED_GAUSSIAN:
        return fourier_wrapped_gaussian(float(param), order)
    if family == UNIFORM:
        return fourier_uniform(order)
    if family == "explicit":
        return from_coefficients(coeffs)
    raise ConfigError(f"unknown model family {family!r}")


def build_constellation(spec: dict) -> np.ndarray:
    if "psk" in spec:
        return psk(int(spec["psk"]))
    if "points" in spec:
        return np.array([complex(re, im) for re, im in spec["points"]])
    raise ConfigError("constellation needs 'psk' or 'points'")


def _split_label(label: str):
    try:
        ch, osc = label.split("-")
    except ValueError:
        raise ConfigError(f"bad scenario label {label!r}") from None
    if ch not in (CC, FC) or osc not in (SYNC, NONSYNC):
        raise ConfigError(f"bad scenario label {label!r}")
    return ch, osc


# ----------------------------------------------------------------------------
# estimates and CSV
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SerEstimate:
    scenario: str
    channel: str
    oscillators: str
    M: int
    N: int
    model_family: str
    model_param: Optional[float]
    rho_db: float
    trials: int
    errors: int
    mean_terms: float = 0.0
    max_terms: int = 0
    flags: int = 0
    # analytic rows (floors, bounds) carry their value here, with trials = 0
    analytic: Optional[float] = None

    @property
    def ser(self) -> float:
        if self.analytic is not None:
            return self.analytic
        return self.errors / self.trials if self.trials else 0.0

    @property
    def stderr(self) -> float:
        if not self.trials:
            return 0.0
        p = self.ser
        return math.sqrt(p * (1.0 - p) / self.trials)

    def row(self) -> dict:
        d = asdict(self)
        d["ser"] = self.ser
        d["stderr"] = self.stderr
        return {k: d[k] for k in CSV_COLUMNS}


def _analytic_row(label, channel, osc, M, N, model, value) -> SerEstimate:
    """Analytic quantity carried in the SER column (trials = 0)."""
    return SerEstimate(label, channel, osc, M, N, model.family, model.param, math.inf, 0, 0, analytic=float(value))


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for est in rows:
        r = est.row()
        w.writerow([_fmt(r[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


_PLOT_TEMPLATE = """# gnuplot script for {csv}
# one curve per (scenario, M); SER on a log axis
set datafile separator ','
set logscale y
set xlabel 'rho [dB]'
set ylabel 'SER'
set key outside
plot for [k in "{keys}"] '{csv}' using (strcol(1).'/'.strcol(4) eq k ? $8 : 1/0):11 with linespoints title k
"""


def write_csv(rows, path, plot_script: bool = True) -> str:
    """Write ``rows`` to ``path`` (and a gnuplot companion ``path + '.plt'``)."""
    rows = list(rows)
    text = csv_text(rows)
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    if plot_script:
        keys = []
        for est in rows:
            k = f"{est.scenario}/{est.M}"
            if est.trials and k not in keys:
                keys.append(k)
        with open(path + ".plt", "w", encoding="utf-8") as fh:
            fh.write(_PLOT_TEMPLATE.format(csv=os.path.basename(path), keys=" ".join(keys)))
    return text


# ----------------------------------------------------------------------------
# block evaluation
# ----------------------------------------------------------------------------


@dataclass
class _Tally:
    trials: int = 0
    errors: int = 0
    term_sum: int = 0
    term_count: int = 0
    term_max: int = 0
    flags: int = 0

    def add(self, other: "_Tally"):
        self.trials += other.trials
        self.errors += other.errors
        self.term_sum += other.term_sum
        self.term_count += other.term_count
        self.term_max = max(self.term_max, other.term_max)
        self.flags += other.flags


def _detect(detector, scn, x, y, truth, policy):
    if detector == "optimal":
        return two_slot_batch(scn, x, y, policy)
    if detector == "closed_form":
        return fc_von_mises_batch(scn, x, y)
    if detector == "high_snr_ns":
        return high_snr_ns_batch(np.angle(np.conj(x) * y[:, 0, :]), scn.constellation)
    if detector == "min_distance":
        return min_distance_fc_ns_batch(np.conj(x) * y[:, 0, :] / scn.rho, scn.constellation)
    if detector == "df_ns":
        return tslot_df_ns_batch(scn, x, y, policy)
    if detector == "genie_s":
        return tslot_genie_s_batch(scn, x, y, genie_phases(scn, truth), truth.symbols, policy)
    raise ConfigError(f"unknown detector {detector!r}")


def _limit_statistic(detector, scn, symbols, rng):
    """Noise-free high-SNR statistics for the limit rules (``rho = inf``)."""
    s = scn.constellation[symbols[:, 0]]
    phi = sample_phase(scn.noise_model, rng, (symbols.shape[0], scn.M))
    if detector == "high_snr_ns":
        return high_snr_ns_batch(phi + np.angle(s)[:, None], scn.constellation)
    if detector == "min_distance":
        h = (rng.standard_normal((symbols.shape[0], scn.M)) + 1j * rng.standard_normal((symbols.shape[0], scn.M))) * np.sqrt(0.5)
        return min_distance_fc_ns_batch(np.abs(h) ** 2 * np.exp(1j * phi) * s[:, None], scn.constellation)
    raise ConfigError(f"rho = inf is only meaningful for the high-SNR rules, not {detector!r}")


def _run_block(scn, detector, policy, seed, pidx, block, n) -> _Tally:
    N = scn.constellation.size
    symbols = substream(seed, pidx, block, ROLE_SYMBOLS).integers(0, N, (n, scn.T))
    rng = substream(seed, pidx, block, ROLE_CHANNEL)
    if math.isinf(scn.rho):
        res = _limit_statistic(detector, scn, symbols, rng)
    else:
        x, y, truth = simulate_batch(scn, symbols, rng)
        res = _detect(detector, scn, x, y, truth, policy)
    dec = np.asarray(res.decisions).reshape(n, -1)
    terms = np.asarray(res.terms_used)
    return _Tally(
        trials=dec.size,
        errors=int(np.count_nonzero(dec != symbols)),
        term_sum=int(terms.sum()),
        term_count=int(terms.size),
        term_max=int(terms.max()) if terms.size else 0,
        flags=int(np.count_nonzero(res.flags)),
    )


def _run_point(scn, detector, policy, seed, pidx, trials, target, block_size, pool) -> _Tally:
    """Blocks in waves of the pool width, merged in block order."""
    width = pool._max_workers if pool is not None else 1
    n_blocks = -(-trials // block_size)
    total = _Tally()
    b = 0
    while b < n_blocks:
        wave = range(b, min(n_blocks, b + width))
        sizes = [min(block_size, trials - k * block_size) for k in wave]
        if pool is None:
            parts = [_run_block(scn, detector, policy, seed, pidx, k, nk) for k, nk in zip(wave, sizes)]
        else:
            futs = [pool.submit(_run_block, scn, detector, policy, seed, pidx, k, nk) for k, nk in zip(wave, sizes)]
            parts = [f.result() for f in futs]
        for part in parts:
            total.add(part)
            if target is not None and total.errors >= target:
                return total
        b += len(sizes)
    return total


def _scenario(cfg: SweepConfig, label, M, rho_db) -> Scenario:
    ch, osc = _split_label(label)
    rho = math.inf if math.isinf(rho_db) else float(db_to_linear(rho_db))
    g = None
    if ch == CC and cfg.g is not None:
        g = np.asarray(cfg.g, dtype=np.float64)
        if g.size != M:
            raise ConfigError(f"g has {g.size} entries but M = {M}")
    return Scenario(ch, osc, rho, M, build_constellation(cfg.constellation), build_model(cfg.model), g=g, T=cfg.T)


def _estimate(label, scn, rho_db, tally: _Tally) -> SerEstimate:
    model = scn.antenna_models()[0]
    mean_terms = tally.term_sum / tally.term_count if tally.term_count else 0.0
    return SerEstimate(
        label,
        scn.channel,
        scn.oscillators,
        scn.M,
        scn.constellation.size,
        model.family,
        model.param,
        float(rho_db),
        tally.trials,
        tally.errors,
        mean_terms,
        tally.term_max,
        tally.flags,
    )


def _grid(cfg: SweepConfig):
    pidx = 0
    for label in cfg.scenarios:
        for M in cfg.M:
            for rho_db in cfg.rho_db:
                yield pidx, label, int(M), float(rho_db)
                pidx += 1


def _pool(threads):
    threads = 1 if threads is None else int(threads)
    if threads < 1:
        raise ConfigError("threads must be positive")
    return ThreadPoolExecutor(threads) if threads > 1 else None


def run_ser_sweep(cfg: SweepConfig, threads: int = 1, detector: Optional[str] = None, label_suffix: str = ""):
    """SER for every (scenario, M, rho) point of the config.

    Returns a list of :class:`SerEstimate` in grid order.  Trials are counted
    in symbol decisions (``T`` per simulated sequence).
    """
    detector = detector or cfg.detector
    pool = _pool(threads)
    rows = []
    try:
        for pidx, label, M, rho_db in _grid(cfg):
            scn = _scenario(cfg, label, M, rho_db)
            seqs = -(-cfg.trials // scn.T)
            target = cfg.target_errors
            tally = _run_point(scn, detector, cfg.policy, cfg.seed, pidx, seqs, target, cfg.block_size, pool)
            rows.append(_estimate(label + label_suffix, scn, rho_db, tally))
    finally:
        if pool is not None:
            pool.shutdown()
    return rows


def run_truncation_stats(cfg: SweepConfig, threads: int = 1):
    """``{(scenario, rho_db): (mean_terms, max_terms)}`` plus the raw rows.

    Early stopping is ignored: statistics need the full trial budget.
    """
    cfg = replace(cfg, target_errors=None, detector="optimal")
    rows = run_ser_sweep(cfg, threads)
    table = {}
    for r in rows:
        key = (r.scenario, r.rho_db)
        prev = table.get(key)
        if prev is None:
            table[key] = (r.mean_terms, r.max_terms)
        else:  # several M values: weight equally, keep the worst max
            table[key] = ((prev[0] + r.mean_terms) / 2.0, max(prev[1], r.max_terms))
    return table, rows


# ----------------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------------


@dataclass
class ValidationReport:
    passed: bool
    tolerance: float
    worst: dict
    worst_instance: dict
    instances: int

    def summary(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'}: {self.instances} instances per scenario, tol {self.tolerance:g}"]
        for lab, w in self.worst.items():
            lines.append(f"  {lab}: worst |diff| = {w:.3e}")
        if not self.passed:
            lines.append(f"  worst instance: {json.dumps(self.worst_instance)}")
        return "\n".join(lines)


def _instance_dump(scn, obs, diff):
    return {
        "scenario": scn.label,
        "M": scn.M,
        "rho": scn.rho,
        "g": None if scn.g is None else scn.g.tolist(),
        "x": [[z.real, z.imag] for z in obs.x],
        "y": [[z.real, z.imag] for z in obs.y.ravel()],
        "max_abs_diff": float(diff),
    }


def run_oracle_validation(
    n_instances: int = 100,
    seed: int = 0,
    kappa: float = 4.0,
    N: int = 4,
    max_M: int = 3,
    max_rho: float = 10.0,
    tol: float = 1e-6,
    policy: TruncationPolicy = TruncationPolicy(),
    model: Optional[PhaseNoiseModel] = None,
) -> ValidationReport:
    """Series detector metric differences against quadrature likelihoods.

    For each of the four scenarios, ``n_instances`` random instances with
    ``M <= max_M`` and ``rho <= max_rho`` (linear) are drawn; the check is
    ``max_k |(L_k - L_0) - (ln p_k - ln p_0)| <= tol``.
    """
    model = model if model is not None else fourier_von_mises(kappa)
    worst, worst_inst = {}, {}
    passed = True
    overall = -1.0
    for sidx, label in enumerate(("CC-NS", "CC-S", "FC-NS", "FC-S")):
        ch, osc = _split_label(label)
        rng = substream(seed, 1000 + sidx, 0, ROLE_CHANNEL)
        wl = 0.0
        for _ in range(int(n_instances)):
            M = int(rng.integers(1, max_M + 1))
            rho = float(rng.uniform(0.05, max_rho))
            g = rng.uniform(0.5, 1.5, M) if ch == CC else None
            scn = Scenario(ch, osc, rho, M, psk(N), model, g=g)
            obs = simulate_two_slot(scn, int(rng.integers(N)), rng)
            met = two_slot_batch(scn, obs.x[None, :], obs.y, policy).metrics[0]
            ll = oracle_log_likelihoods(scn, obs.x, obs.y[0])
            diff = float(np.max(np.abs((met - met[0]) - (ll - ll[0]))))
            wl = max(wl, diff)
            if diff > overall:
                overall = diff
                worst_inst = _instance_dump(scn, obs, diff)
            if not diff <= tol:
                passed = False
        worst[label] = wl
    return ValidationReport(passed, tol, worst, worst_inst, int(n_instances))


def run_closed_form_check(n_instances: int = 10_000, seed: int = 0, policy: TruncationPolicy = TruncationPolicy()):
    """Fraction of random FC instances where the von Mises closed form and the
    series detector pick the same symbol.

    Instances vary kappa in [0.5, 12], M in 1..8, rho in [-5, 35] dB,
    N in {2, 4, 8} and both oscillator settings.
    """
    rng = substream(seed, 2000, 0, ROLE_CHANNEL)
    per = 50
    agree = 0
    total = 0
    for i in range(-(-int(n_instances) // per)):
        n = min(per, int(n_instances) - total)
        kappa = float(rng.uniform(0.5, 12.0))
        scn = Scenario(
            FC,
            (SYNC, NONSYNC)[i % 2],
            float(db_to_linear(rng.uniform(-5.0, 35.0))),
            int(rng.integers(1, 9)),
            psk((2, 4, 8)[i % 3]),
            fourier_von_mises(kappa),
        )
        sym = rng.integers(0, scn.constellation.size, (n, 1))
        x, y, _ = simulate_batch(scn, sym, rng)
        a = two_slot_batch(scn, x, y, policy).decisions
        b = fc_von_mises_batch(scn, x, y).decisions
        agree += int(np.count_nonzero(a == b))
        total += n
    return agree, total


# ----------------------------------------------------------------------------
# floors, bounds, T-slot
# ----------------------------------------------------------------------------


def high_snr_limit_ser(rule: str, kappa: float, N: int, M: int, trials: int, seed: int = 0, block_size: int = 65536):
    """Monte Carlo SER of a high-SNR limit rule (``'high_snr_ns'`` or ``'min_distance'``)."""
    ch = CC if rule == "high_snr_ns" else FC
    scn = Scenario(ch, NONSYNC, 1.0, M, psk(N), fourier_von_mises(kappa)).with_(rho=math.inf)
    tally = _run_point(scn, rule, TruncationPolicy(), seed, 3000 + M, trials, None, block_size, None)
    return tally.errors, tally.trials


def run_floor_and_bounds(cfg: SweepConfig, threads: int = 1, what: str = "both"):
    """Analytic floors and union bounds next to Monte Carlo estimates.

    ``what='floors'`` emits, per ``M``, the analytic synchronous floor and
    the Monte Carlo SER of every configured scenario at the largest finite
    ``rho``.  ``what='bounds'`` emits the Bernstein (high-SNR CC-NS rule) and
    Chebyshev (min-distance FC-NS rule) union bounds with Monte Carlo SER of
    those rules at the noise-free limit, using ``bound_trials``.
    """
    model = build_model(cfg.model)
    pts = build_constellation(cfg.constellation)
    N = pts.size
    rows = []
    finite = [r for r in cfg.rho_db if math.isfinite(r)]
    if what in ("floors", "both"):
        floor = analysis.ser_floor_sync(model, N).floor
        top = max(finite) if finite else None
        for M in cfg.M:
            rows.append(_analytic_row("analytic_floor", "", SYNC, int(M), N, model, floor))
        if top is not None:
            mc_cfg = replace(cfg, rho_db=(top,), detector="optimal", T=1)
            rows.extend(run_ser_sweep(mc_cfg, threads))
    if what in ("bounds", "both"):
        if model.family != VON_MISES or not model.param > 0:
            raise ConfigError("the bounds are defined for von Mises increments with kappa > 0")
        kappa = float(model.param)
        for M in cfg.M:
            M = int(M)
            bern = analysis.bernstein_union_bound(kappa, N, M)
            cheb = analysis.chebyshev_union_bound(kappa, N, M)
            rows.append(_analytic_row("bernstein_union_bound", CC, NONSYNC, M, N, model, bern))
            rows.append(_analytic_row("chebyshev_union_bound", FC, NONSYNC, M, N, model, cheb))
        lim = replace(
            cfg,
            rho_db=(math.inf,),
            trials=cfg.bound_trials,
            target_errors=None,
            T=1,
            block_size=max(cfg.block_size, 65536),
        )
        rows.extend(run_ser_sweep(replace(lim, scenarios=("CC-NS",)), threads, "high_snr_ns", "/high_snr_ns"))
        rows.extend(run_ser_sweep(replace(lim, scenarios=("FC-NS",)), threads, "min_distance", "/min_distance"))
    return rows


def run_tslot_comparison(cfg: SweepConfig, threads: int = 1):
    """DF-NS and genie-S SER (per-slot averaged) for each configured channel."""
    if cfg.T < 2:
        raise ConfigError("the T-slot comparison needs T >= 2")
    channels = []
    for lab in cfg.scenarios:
        ch, _ = _split_label(lab)
        if ch not in channels:
            channels.append(ch)
    rows = []
    for ch in channels:
        rows.extend(run_ser_sweep(replace(cfg, scenarios=(f"{ch}-NS",)), threads, "df_ns", "/df"))
        rows.extend(run_ser_sweep(replace(cfg, scenarios=(f"{ch}-S",)), threads, "genie_s", "/genie"))
    return rows
