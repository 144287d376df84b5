import math

import numpy as np
import pytest

from pnsimo.channel import (
    CC,
    FC,
    NONSYNC,
    SYNC,
    Scenario,
    psk,
    simulate_batch,
    simulate_t_slot,
    simulate_two_slot,
    substream,
)
from pnsimo.phase_noise import fourier_von_mises, fourier_wrapped_gaussian

VM4 = fourier_von_mises(4.0)
POINT_MASS = fourier_wrapped_gaussian(0.0)


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario("XX", SYNC, 1.0, 2, psk(4), VM4)
    with pytest.raises(ValueError):
        Scenario(CC, SYNC, 1.0, 2, [1.0, 2.0], VM4)  # not zero mean
    with pytest.raises(ValueError):
        Scenario(CC, SYNC, 1.0, 2, psk(4), VM4, g=[1.0])
    with pytest.raises(ValueError):
        Scenario(CC, SYNC, 1.0, 2, psk(4), (VM4, VM4))  # S shares one oscillator
    scn = Scenario(CC, NONSYNC, 1.0, 3, psk(4), VM4)
    assert np.array_equal(scn.g, np.ones(3))
    assert Scenario(FC, SYNC, 1.0, 2, psk(4), VM4).g is None


def test_zero_snr_is_pure_noise():
    scn = Scenario(FC, NONSYNC, 0.0, 4, psk(4), VM4)
    x, y, _ = simulate_batch(scn, np.zeros((50_000, 1), dtype=int), substream(1, 0))
    for arr in (x, y[:, 0]):
        v = np.mean(np.abs(arr) ** 2, axis=0)
        assert np.all(np.abs(v - 1.0) < 0.03)


def test_noiseless_cc_sync_structure(monkeypatch):
    import pnsimo.channel as ch

    monkeypatch.setattr(ch, "_cn", lambda rng, shape: np.zeros(shape, dtype=complex))
    scn = Scenario(CC, SYNC, 3.0, 4, psk(8), POINT_MASS, g=[0.5, 1.0, 1.5, 2.0])
    obs = simulate_two_slot(scn, 5, substream(2, 0))
    assert np.allclose(obs.y[0], obs.x * scn.constellation[5], atol=1e-14)


def test_fading_pilot_energy():
    rho = 2.5
    scn = Scenario(FC, SYNC, rho, 1, psk(4), VM4)
    n = 1_000_000
    x, _, _ = simulate_batch(scn, np.zeros((n, 1), dtype=int), substream(3, 0))
    e = np.abs(x[:, 0]) ** 2
    assert abs(e.mean() - (rho + 1.0)) < 4 * e.std() / math.sqrt(n)


def test_invalid_symbols():
    scn = Scenario(CC, SYNC, 1.0, 2, psk(4), VM4)
    with pytest.raises(ValueError):
        simulate_two_slot(scn, 4, substream(0, 0))
    with pytest.raises(ValueError):
        simulate_t_slot(scn.with_(T=3), [0, 1], substream(0, 0))


def test_t1_matches_two_slot():
    scn = Scenario(FC, NONSYNC, 2.0, 3, psk(4), VM4)
    a = simulate_two_slot(scn, 2, substream(9, 1))
    b = simulate_t_slot(scn, [2], substream(9, 1))
    assert np.array_equal(a.x, b.x) and np.array_equal(a.y, b.y)


def test_point_mass_has_no_rotation():
    scn = Scenario(CC, NONSYNC, 1.0, 3, psk(4), POINT_MASS, T=5)
    obs = simulate_t_slot(scn, [0, 1, 2, 3, 0], substream(4, 0))
    assert np.all(obs.truth.accumulated == 0.0)


def test_accumulated_phase_statistics():
    scn = Scenario(FC, NONSYNC, 1.0, 2, psk(4), fourier_wrapped_gaussian(0.07), T=3)
    n = 500_000
    _, _, tr = simulate_batch(scn, np.zeros((n, 3), dtype=int), substream(5, 0))
    c = np.cos(tr.accumulated[:, 2, 0])
    assert abs(c.mean() - math.exp(-3 * 0.035)) < 4 * c.std() / math.sqrt(n)


def test_sync_phases_shared_nonsync_independent():
    n = 200_000
    s = Scenario(CC, SYNC, 1.0, 3, psk(4), VM4)
    _, _, tr = simulate_batch(s, np.zeros((n, 1), dtype=int), substream(6, 0))
    assert np.all(tr.increments[:, :, 0] == tr.increments[:, :, 2])
    assert np.all(tr.theta[:, 0] == tr.theta[:, 1])
    ns = s.with_(oscillators=NONSYNC)
    _, _, tr = simulate_batch(ns, np.zeros((n, 1), dtype=int), substream(6, 0))
    r = np.corrcoef(tr.increments[:, 0, 0], tr.increments[:, 0, 1])[0, 1]
    assert abs(r) < 4 / math.sqrt(n)


def test_substreams_are_reproducible_and_distinct():
    a = substream(7, 3, 1).standard_normal(4)
    b = substream(7, 3, 1).standard_normal(4)
    c = substream(7, 3, 2).standard_normal(4)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_received_strips_truth():
    scn = Scenario(FC, SYNC, 1.0, 2, psk(4), VM4)
    obs = simulate_two_slot(scn, 0, substream(0, 0))
    assert obs.truth is not None and obs.received().truth is None
