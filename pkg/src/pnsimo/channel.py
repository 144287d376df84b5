"""Training-assisted SIMO observations with receiver phase noise.

One pilot slot followed by ``T`` data slots, for a constant known-amplitude
channel (``CC``) or a Rayleigh fading channel (``FC``), with either one
oscillator shared by all antennas (``S``) or one per antenna (``NS``).
Noise variance is fixed at one; SNR enters only through ``rho``.
"""

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Union

import numpy as np

from .phase_noise import PhaseNoiseModel, sample_phase, wrap_phase

CC = "CC"
FC = "FC"
SYNC = "S"
NONSYNC = "NS"

ROLE_SYMBOLS = 0
ROLE_CHANNEL = 1

__all__ = [
    "CC",
    "FC",
    "SYNC",
    "NONSYNC",
    "Scenario",
    "Observation",
    "Truth",
    "psk",
    "db_to_linear",
    "substream",
    "simulate_two_slot",
    "simulate_t_slot",
    "simulate_batch",
]


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=np.float64) / 10.0)


def psk(n: int) -> np.ndarray:
    """Unit-energy ``n``-PSK points ``exp(2j pi k / n)``, ``k = 0..n-1``."""
    if n < 2:
        raise ValueError("PSK needs at least two points")
    return np.exp(2j * np.pi * np.arange(n) / n)


def is_psk(points) -> bool:
    points = np.asarray(points, dtype=np.complex128)
    return points.size >= 2 and np.allclose(points, psk(points.size), atol=1e-12, rtol=0)


def substream(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for ``(seed, *keys)``.

    Philox is counter-based and the key path fully determines the stream, so
    results do not depend on which worker evaluates which block.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True, eq=False)
class Scenario:
    channel: str
    oscillators: str
    rho: float
    M: int
    constellation: np.ndarray
    noise_model: Union[PhaseNoiseModel, Sequence[PhaseNoiseModel]]
    g: Optional[np.ndarray] = None
    T: int = 1

    def __post_init__(self):
        if self.channel not in (CC, FC):
            raise ValueError(f"channel must be 'CC' or 'FC', got {self.channel!r}")
        if self.oscillators not in (SYNC, NONSYNC):
            raise ValueError(f"oscillators must be 'S' or 'NS', got {self.oscillators!r}")
        if not self.rho >= 0.0:
            raise ValueError("rho must be nonnegative")
        if int(self.M) < 1 or int(self.T) < 1:
            raise ValueError("M and T must be positive")
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "T", int(self.T))
        object.__setattr__(self, "rho", float(self.rho))
        pts = np.array(self.constellation, dtype=np.complex128).ravel()
        if pts.size < 2:
            raise ValueError("constellation needs at least two points")
        if abs(pts.mean()) > 1e-12 or abs(np.mean(np.abs(pts) ** 2) - 1.0) > 1e-12:
            raise ValueError("constellation must be zero-mean with unit average energy")
        pts.setflags(write=False)
        object.__setattr__(self, "constellation", pts)
        if self.channel == CC:
            g = np.ones(self.M) if self.g is None else np.array(self.g, dtype=np.float64).ravel()
            if g.size != self.M or np.any(g <= 0):
                raise ValueError("g must hold M positive amplitudes")
            g.setflags(write=False)
            object.__setattr__(self, "g", g)
        if not isinstance(self.noise_model, PhaseNoiseModel):
            models = tuple(self.noise_model)
            if len(models) != self.M:
                raise ValueError("per-antenna noise models need exactly M entries")
            if self.oscillators == SYNC:
                raise ValueError("synchronous operation shares one oscillator; pass a single model")
            object.__setattr__(self, "noise_model", models)

    @property
    def sync(self) -> bool:
        return self.oscillators == SYNC

    @property
    def label(self) -> str:
        return f"{self.channel}-{self.oscillators}"

    def antenna_models(self):
        """One model per antenna (the shared model repeated if needed)."""
        if isinstance(self.noise_model, PhaseNoiseModel):
            return (self.noise_model,) * self.M
        return self.noise_model

    def with_(self, **changes) -> "Scenario":
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class Truth:
    """Hidden draws of one observation, kept for scoring and genie detectors.

    ``accumulated[t, m]`` is the total phase-noise rotation applied in data
    slot ``t`` (sum of increments ``1..t+1``), excluding the initial phase.
    """

    symbols: np.ndarray
    increments: np.ndarray
    accumulated: np.ndarray
    theta: Optional[np.ndarray] = None
    h: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class Observation:
    x: np.ndarray
    y: np.ndarray
    truth: Optional[Truth] = field(default=None, repr=False)

    @property
    def T(self) -> int:
        return self.y.shape[0]

    def received(self) -> "Observation":
        """Same observation with the truth record stripped."""
        return Observation(self.x, self.y, None)


def _cn(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * np.sqrt(0.5)


def _draw_increments(scn: Scenario, rng, n: int):
    T, M = scn.T, scn.M
    if scn.sync:
        inc = sample_phase(scn.noise_model, rng, (n, T))
        return np.broadcast_to(inc[:, :, None], (n, T, M)).copy()
    models = scn.antenna_models()
    if all(m is models[0] for m in models):
        return sample_phase(models[0], rng, (n, T, M))
    inc = np.empty((n, T, M))
    for m, model in enumerate(models):
        inc[:, :, m] = sample_phase(model, rng, (n, T))
    return inc


def simulate_batch(scn: Scenario, symbols, rng: np.random.Generator):
    """Simulate ``n`` independent trials.

    ``symbols`` holds constellation indices of shape ``(n, T)``.  Returns
    ``(x, y, truth)`` with ``x`` of shape ``(n, M)``, ``y`` of shape
    ``(n, T, M)`` and a :class:`Truth` whose arrays carry the leading trial
    axis.  Draw order is fixed: initial phases, increments, channel, noise.
    """
    symbols = np.asarray(symbols, dtype=np.int64)
    if symbols.ndim != 2 or symbols.shape[1] != scn.T:
        raise ValueError(f"symbols must have shape (n, {scn.T})")
    if np.any(symbols < 0) or np.any(symbols >= scn.constellation.size):
        raise ValueError("symbol index outside the constellation")
    n, T, M = symbols.shape[0], scn.T, scn.M
    sqrt_rho = np.sqrt(scn.rho)

    theta = None
    if scn.channel == CC:
        if scn.sync:
            theta = np.repeat(rng.uniform(-np.pi, np.pi, (n, 1)), M, axis=1)
        else:
            theta = rng.uniform(-np.pi, np.pi, (n, M))
    inc = _draw_increments(scn, rng, n)
    acc = np.cumsum(inc, axis=1)

    h = None
    if scn.channel == CC:
        gain = scn.g[None, :] * np.exp(1j * theta)
    else:
        h = _cn(rng, (n, M))
        gain = h
    w = _cn(rng, (n, M))
    z = _cn(rng, (n, T, M))

    s = scn.constellation[symbols]
    x = sqrt_rho * gain + w
    y = sqrt_rho * gain[:, None, :] * np.exp(1j * acc) * s[:, :, None] + z
    truth = Truth(symbols, inc, wrap_phase(acc), theta, h)
    return x, y, truth


def _single(scn, symbols, rng):
    x, y, tr = simulate_batch(scn, np.asarray(symbols, dtype=np.int64)[None, :], rng)
    truth = Truth(
        tr.symbols[0],
        tr.increments[0],
        tr.accumulated[0],
        None if tr.theta is None else tr.theta[0],
        None if tr.h is None else tr.h[0],
    )
    return Observation(x[0], y[0], truth)


def simulate_two_slot(scn: Scenario, s: int, rng: np.random.Generator) -> Observation:
    """One pilot slot and one data slot carrying constellation point ``s``."""
    if scn.T != 1:
        raise ValueError("simulate_two_slot needs a scenario with T = 1")
    if not 0 <= int(s) < scn.constellation.size:
        raise ValueError(f"invalid symbol index {s}")
    return _single(scn, [int(s)], rng)


def simulate_t_slot(scn: Scenario, symbols: Sequence[int], rng: np.random.Generator) -> Observation:
    """One pilot slot and ``T`` data slots with accumulating phase noise."""
    if len(symbols) != scn.T:
        raise ValueError(f"expected {scn.T} symbols, got {len(symbols)}")
    return _single(scn, symbols, rng)
