import math

import numpy as np
import pytest
from scipy import integrate

from pnsimo.channel import CC, FC, NONSYNC, SYNC, Scenario, psk, simulate_two_slot, substream
from pnsimo.oracle import OracleError, oracle_log_likelihoods
from pnsimo.phase_noise import fourier_von_mises, log_pdf_exact

VM = fourier_von_mises(3.0)


def quad_cc_sync_m1(scn, x, y, s):
    """Adaptive 2-D quadrature of p(x, y | s) for M = 1, constant channel."""
    a = math.sqrt(scn.rho) * scn.g[0]

    def f(phi, th):
        mx = a * np.exp(1j * th)
        my = mx * np.exp(1j * phi) * s
        ll = -abs(x[0] - mx) ** 2 - abs(y[0] - my) ** 2 - 2 * math.log(math.pi)
        return math.exp(ll + float(log_pdf_exact(VM, phi))) / (2 * math.pi)

    v, _ = integrate.dblquad(f, -math.pi, math.pi, -math.pi, math.pi, epsabs=1e-14, epsrel=1e-11)
    return math.log(v)


def quad_fc_brute(scn, x, y, s):
    """Integrate h explicitly on a polar grid, then phi, for M = 1."""
    rho = scn.rho

    def inner(phi):
        def g(r, t):
            h = r * np.exp(1j * t)
            ll = -abs(x[0] - math.sqrt(rho) * h) ** 2 - abs(y[0] - math.sqrt(rho) * h * np.exp(1j * phi) * s) ** 2
            return r * math.exp(ll - r * r) / math.pi**3
        v, _ = integrate.dblquad(g, -math.pi, math.pi, 0.0, 8.0, epsabs=1e-15, epsrel=1e-10)
        return v * math.exp(float(log_pdf_exact(VM, phi)))

    v, _ = integrate.quad(inner, -math.pi, math.pi, epsabs=1e-15, epsrel=1e-9)
    return math.log(v)


def test_cc_oracle_matches_adaptive_quadrature():
    scn = Scenario(CC, SYNC, 2.0, 1, psk(4), VM)
    obs = simulate_two_slot(scn, 2, substream(4, 0))
    ll = oracle_log_likelihoods(scn, obs.x, obs.y[0])
    for k, s in enumerate(scn.constellation[:2]):
        assert ll[k] == pytest.approx(quad_cc_sync_m1(scn, obs.x, obs.y[0], s), abs=1e-8)


@pytest.mark.slow
def test_fc_oracle_matches_explicit_fading_integral():
    scn = Scenario(FC, NONSYNC, 1.0, 1, psk(4), VM)
    obs = simulate_two_slot(scn, 1, substream(5, 0))
    ll = oracle_log_likelihoods(scn, obs.x, obs.y[0])
    assert ll[1] == pytest.approx(quad_fc_brute(scn, obs.x, obs.y[0], scn.constellation[1]), abs=1e-6)


def test_oracle_rotation_covariance():
    # rotating y by a quarter turn shifts the QPSK likelihoods by one index
    scn = Scenario(CC, SYNC, 2.0, 2, psk(4), VM)
    obs = simulate_two_slot(scn, 0, substream(6, 0))
    a = oracle_log_likelihoods(scn, obs.x, obs.y[0])
    b = oracle_log_likelihoods(scn, obs.x, obs.y[0] * 1j)
    assert np.allclose(np.roll(a, 1), b, atol=1e-9)


def test_oracle_range_checks():
    with pytest.raises(OracleError):
        oracle_log_likelihoods(Scenario(CC, SYNC, 100.0, 1, psk(4), VM), [1.0], [1.0])
    with pytest.raises(OracleError):
        oracle_log_likelihoods(Scenario(CC, SYNC, 1.0, 4, psk(4), VM), np.ones(4), np.ones(4))
    with pytest.raises(OracleError):
        oracle_log_likelihoods(Scenario(CC, SYNC, 1.0, 1, psk(4), VM, T=2), [1.0], [1.0])
