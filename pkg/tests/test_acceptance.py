"""End-to-end acceptance checks at full statistical size.

Each check prints one ``PASS``/``FAIL`` line (run with ``pytest -s`` to see
them live; they are also collected in the terminal summary).  The tolerances
are the stated ones; nothing here is loosened to make a check pass.
"""

import math
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from pnsimo.analysis import bernstein_union_bound, chebyshev_pairwise_bound_fc_ns, chebyshev_union_bound
from pnsimo.harness import (
    high_snr_limit_ser,
    load_config,
    run_closed_form_check,
    run_oracle_validation,
    run_ser_sweep,
    run_truncation_stats,
    run_tslot_comparison,
)

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"
FLOOR = 0.1418

pytestmark = pytest.mark.slow

REPORT = []


def report(number, ok, text):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text}"
    REPORT.append(line)
    print(line)
    return ok


@pytest.fixture(scope="module")
def floor_rows():
    """All four scenarios at 40 dB, M in {2, 4, 6}, 1e5 trials per point."""
    t0 = time.perf_counter()
    rows = run_ser_sweep(load_config(CONFIGS / "floors.json"))
    return rows, time.perf_counter() - t0


def test_criterion_1_sync_floor(floor_rows):
    rows, elapsed = floor_rows
    sync = [r for r in rows if r.oscillators == "S"]
    assert sync and all(r.trials >= 20_000 for r in sync)
    worst = max(abs(r.ser - FLOOR) for r in sync)
    detail = ", ".join(f"{r.scenario} M={r.M}: {r.ser:.4f}" for r in sync)
    ok = worst <= 0.005
    report(1, ok, f"max |SER - {FLOOR}| = {worst:.4f} (tol 0.005) [{detail}]; whole floor sweep {elapsed:.0f} s")
    assert ok


def test_criterion_2_m_dependence(floor_rows):
    rows, _ = floor_rows
    ok = True
    parts = []
    for ch in ("CC", "FC"):
        s = sorted((r for r in rows if r.channel == ch and r.oscillators == "S"), key=lambda r: r.M)
        ns = sorted((r for r in rows if r.channel == ch and r.oscillators == "NS"), key=lambda r: r.M)
        spread = max(r.ser for r in s) - min(r.ser for r in s)
        ok &= spread < 0.01
        # each step down in M must be significant at 3 sigma
        for a, b in zip(ns, ns[1:]):
            ok &= a.ser - b.ser > 3.0 * math.hypot(a.stderr, b.stderr)
        ok &= ns[-1].ser < 0.5 * ns[0].ser
        parts.append(f"{ch}-S spread {spread:.4f}; {ch}-NS " + " > ".join(f"{r.ser:.4g}" for r in ns))
    report(2, ok, "; ".join(parts))
    assert ok


def test_criterion_3_oracle_equivalence():
    t0 = time.perf_counter()
    rep = run_oracle_validation(100, seed=11, kappa=4.0, N=4, max_M=3, max_rho=10.0, tol=1e-6)
    elapsed = time.perf_counter() - t0
    worst = ", ".join(f"{k} {v:.1e}" for k, v in rep.worst.items())
    ok = rep.passed and elapsed < 60.0
    report(3, ok, f"100 instances x 4 scenarios, worst |diff| {worst} (tol 1e-6); {elapsed:.1f} s (limit 60 s)")
    assert rep.passed, rep.summary()
    assert elapsed < 60.0


def test_criterion_4_closed_form():
    agree, total = run_closed_form_check(10_000, seed=12)
    ok = agree == total == 10_000
    report(4, ok, f"closed form and series agree on {agree}/{total} FC instances")
    assert ok


TABLE2_MEAN = {
    ("CC-S", 2.0): 13.8, ("FC-S", 2.0): 12.7, ("CC-S", 10.0): 16.2, ("FC-S", 10.0): 16.2,
    ("CC-S", 22.0): 15.7, ("FC-S", 22.0): 17.1, ("CC-NS", 2.0): 10.0, ("FC-NS", 2.0): 12.5,
    ("CC-NS", 10.0): 13.8, ("FC-NS", 10.0): 16.0, ("CC-NS", 22.0): 15.8, ("FC-NS", 22.0): 16.6,
}


def test_criterion_5_truncation():
    cfg = load_config(CONFIGS / "table2.json")
    assert cfg.policy.delta_acc == 1e-12 and cfg.M == (6,)
    table, _ = run_truncation_stats(cfg)
    ok = True
    cells = []
    for key, paper in TABLE2_MEAN.items():
        mean, mx = table[key]
        ok &= mx <= 20 and abs(mean - paper) <= 4.0
        cells.append(f"{key[0]}@{key[1]:g}dB {mean:.1f}/{mx} (paper {paper})")
    report(5, ok, "mean/max terms: " + "; ".join(cells))
    assert ok


def test_criterion_6_bounds():
    ok = True
    parts = []
    for M in (8, 16):
        err, n = high_snr_limit_ser("high_snr_ns", 4.0, 4, M, 1_000_000, seed=13)
        b = bernstein_union_bound(4.0, 4, M)
        ok &= n == 1_000_000 and err / n <= b
        parts.append(f"Bernstein M={M}: MC {err / n:.4g} <= {b:.4g}")
    err, n = high_snr_limit_ser("min_distance", 4.0, 4, 64, 1_000_000, seed=14)
    b = chebyshev_union_bound(4.0, 4, 64)
    ok &= err / n <= b
    parts.append(f"Chebyshev M=64: MC {err / n:.4g} <= {b:.4g}")
    ratios = [chebyshev_pairwise_bound_fc_ns(4.0, 4, k, 2 * M) / chebyshev_pairwise_bound_fc_ns(4.0, 4, k, M)
              for k in (1, 2, 3) for M in (1, 7, 64, 1000)]
    halving = max(abs(r - 0.5) for r in ratios)
    ok &= halving <= 0.5e-12
    parts.append(f"bound(2M)/bound(M) - 1/2 <= {halving:.1e}")
    report(6, ok, "; ".join(parts))
    assert ok


def test_criterion_7_tslot_ordering():
    cfg = load_config(CONFIGS / "fig7_tslot.json")
    assert cfg.M == (20,) and cfg.T == 20 and cfg.model["param"] == 0.07
    t0 = time.perf_counter()
    rows = run_tslot_comparison(cfg)
    elapsed = time.perf_counter() - t0
    df = {r.rho_db: r for r in rows if r.scenario.endswith("/df")}
    genie = {r.rho_db: r for r in rows if r.scenario.endswith("/genie")}
    ok = elapsed < 600.0
    parts = []
    for rho in (10.0, 15.0, 20.0, 25.0):
        a, b = df[rho], genie[rho]
        seqs = a.trials // cfg.T
        ok &= seqs >= 10_000
        # decisions within a sequence are dependent; bound the standard error
        # by treating each sequence as a single sample
        sa = math.sqrt(a.ser * (1 - a.ser) / seqs)
        sb = math.sqrt(b.ser * (1 - b.ser) / seqs)
        sep = (b.ser - a.ser) / math.hypot(sa, sb) if sa or sb else math.inf
        ok &= a.ser < b.ser and sep >= 3.0
        parts.append(f"{rho:g} dB: DF {a.ser:.4g} < genie {b.ser:.4g} ({sep:.1f} sigma)")
    report(7, ok, "; ".join(parts) + f"; {elapsed:.0f} s (limit 600 s)")
    assert ok


PROPERTY_TESTS = [
    "tests/test_detectors.py::test_rotation_invariance_sync",
    "tests/test_detectors.py::test_rotation_invariance_nonsync",
    "tests/test_phase_noise.py::test_normalization_and_coefficient_roundtrip",
    "tests/test_phase_noise.py::test_wrapped_gaussian_closure",
    "tests/test_phase_noise.py::test_convolution_composes",
    "tests/test_special.py::test_strictly_decreasing_in_order",
    "tests/test_special.py::test_ratio_respects_ordering_bound",
    "tests/test_special.py::test_ratio_to_first_order_below_one_and_decreasing",
    "tests/test_analysis.py::test_uniform_floor_is_chance",
    "tests/test_analysis.py::test_floor_range",
    "tests/test_harness.py::test_thread_count_does_not_change_output",
    "tests/test_harness.py::test_cli_threads_byte_identical",
]


def test_criterion_8_property_suites():
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *PROPERTY_TESTS],
        cwd=ROOT, capture_output=True, text=True, env=dict(os.environ),
    )
    elapsed = time.perf_counter() - t0
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = proc.returncode == 0 and elapsed < 30.0
    report(8, ok, f"property suites: {tail}; {elapsed:.1f} s (limit 30 s)")
    assert proc.returncode == 0, proc.stdout[-3000:]
    assert elapsed < 30.0
