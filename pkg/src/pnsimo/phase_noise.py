"""Circular phase-noise distributions held as cosine Fourier coefficients.

A symmetric zero-mean density on ``[-pi, pi)`` is stored through
``alpha_l = E[cos(l phi)]``::

    p(phi) = (alpha_0 + 2 sum_l alpha_l cos(l phi)) / (2 pi)

The sampler tag remembers which family produced the coefficients so the
simulator can draw exact samples instead of inverting the series.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels

DEFAULT_ORDER = 64
PDF_NEGATIVE_TOL = 1e-9

VON_MISES = "von_mises"
WRAPPED_GAUSSIAN = "wrapped_gaussian"
UNIFORM = "uniform"
EXPLICIT = "explicit"

__all__ = [
    "DEFAULT_ORDER",
    "PhaseNoiseModel",
    "ModelValidityError",
    "fourier_von_mises",
    "fourier_wrapped_gaussian",
    "fourier_uniform",
    "from_coefficients",
    "convolve_iid",
    "pdf_eval",
    "log_pdf_exact",
    "sample_phase",
    "wrap_phase",
]


class ModelValidityError(ValueError):
    """Coefficients do not describe a valid symmetric density."""


def wrap_phase(phi):
    """Reduce angles into ``[-pi, pi)``."""
    return np.mod(np.asarray(phi) + np.pi, 2.0 * np.pi) - np.pi


@dataclass(frozen=True, eq=False)
class PhaseNoiseModel:
    coeffs: np.ndarray
    family: str = EXPLICIT
    param: Optional[float] = None
    # number of i.i.d. increments summed (convolve_iid)
    increments: int = 1

    def __post_init__(self):
        c = np.asarray(self.coeffs)
        if np.iscomplexobj(c):
            if np.any(np.abs(c.imag) > 0):
                raise ModelValidityError("asymmetric densities (complex coefficients) are not supported")
            c = c.real
        c = np.array(c, dtype=np.float64)
        if c.ndim != 1 or c.size < 2:
            raise ModelValidityError("need a 1-D coefficient sequence alpha_0..alpha_L with L >= 1")
        if abs(c[0] - 1.0) > 1e-12:
            raise ModelValidityError(f"alpha_0 must be 1, got {c[0]}")
        if np.any(np.abs(c) > 1.0 + 1e-12) or not np.all(np.isfinite(c)):
            raise ModelValidityError("|alpha_l| must not exceed 1")
        c[0] = 1.0
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.coeffs[1:] == 0.0))

    def coefficient(self, l: int) -> float:
        """``alpha_l``, zero beyond the stored order."""
        return float(self.coeffs[l]) if l <= self.order else 0.0

    def padded(self, order: int) -> np.ndarray:
        """Coefficients ``alpha_0..alpha_order``, zero-padded or cut."""
        out = np.zeros(order + 1)
        n = min(order, self.order) + 1
        out[:n] = self.coeffs[:n]
        return out

    def describe(self) -> str:
        if self.family == VON_MISES:
            return f"von Mises kappa={self.param:g}"
        if self.family == WRAPPED_GAUSSIAN:
            return f"wrapped Gaussian var={self.param:g}"
        return self.family


def fourier_von_mises(kappa: float, order: int = DEFAULT_ORDER) -> PhaseNoiseModel:
    """Von Mises ``VM(0, kappa)``: ``alpha_l = I_l(kappa) / I_0(kappa)``."""
    kappa = float(kappa)
    if not kappa >= 0.0:
        raise ValueError(f"kappa must be nonnegative, got {kappa}")
    _, ratios = kernels.bessel_table(np.array([kappa]), order)
    coeffs = np.concatenate(([1.0], np.cumprod(ratios[0])))
    return PhaseNoiseModel(coeffs, VON_MISES, kappa)


def fourier_wrapped_gaussian(variance: float, order: int = DEFAULT_ORDER) -> PhaseNoiseModel:
    """Wrapped normal with variance ``variance``: ``alpha_l = exp(-variance l^2 / 2)``."""
    variance = float(variance)
    if not variance >= 0.0:
        raise ValueError(f"variance must be nonnegative, got {variance}")
    l = np.arange(order + 1, dtype=np.float64)
    return PhaseNoiseModel(np.exp(-0.5 * variance * l * l), WRAPPED_GAUSSIAN, variance)


def fourier_uniform(order: int = DEFAULT_ORDER) -> PhaseNoiseModel:
    coeffs = np.zeros(order + 1)
    coeffs[0] = 1.0
    return PhaseNoiseModel(coeffs, UNIFORM, None)


def from_coefficients(coeffs) -> PhaseNoiseModel:
    """Model from explicit coefficients; it cannot be sampled."""
    return PhaseNoiseModel(np.asarray(coeffs), EXPLICIT, None)


def convolve_iid(model: PhaseNoiseModel, t: int) -> PhaseNoiseModel:
    """Density of the sum of ``t`` i.i.d. increments: ``alpha_l -> alpha_l ** t``."""
    t = int(t)
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if t == 1:
        return model
    return PhaseNoiseModel(model.coeffs**t, model.family, model.param, model.increments * t)


def pdf_eval(model: PhaseNoiseModel, phi):
    """Evaluate the truncated Fourier density at ``phi`` (wrapped to ``[-pi, pi)``).

    Dips below zero smaller than ``1e-9`` are clamped; larger dips mean the
    stored order is too short for the density and raise
    :class:`ModelValidityError`.
    """
    phi = np.asarray(phi, dtype=np.float64)
    l = np.arange(1, model.order + 1)
    c = model.coeffs[1:]
    flat = phi.reshape(-1)
    vals = (1.0 + 2.0 * np.cos(np.multiply.outer(flat, l)) @ c) / (2.0 * np.pi)
    if np.any(vals < -PDF_NEGATIVE_TOL):
        raise ModelValidityError(
            f"truncated density dips to {vals.min():.3g}; increase the coefficient order"
        )
    vals = np.maximum(vals, 0.0).reshape(phi.shape)
    return vals if vals.ndim else float(vals)


def log_pdf_exact(model: PhaseNoiseModel, phi):
    """Log density from the family's closed form, not the truncated series.

    Von Mises (single increment), wrapped Gaussian and uniform models have
    exact expressions; anything else falls back to :func:`pdf_eval`.  Used by
    the quadrature cross-checks, where reusing the series would hide
    coefficient errors.
    """
    phi = wrap_phase(np.asarray(phi, dtype=np.float64))
    if model.family == UNIFORM:
        return np.full(phi.shape, -np.log(2.0 * np.pi))
    if model.family == VON_MISES and model.increments == 1:
        kappa = float(model.param)
        log_i0e, _ = kernels.bessel_table(np.array([kappa]), 1)
        return kappa * (np.cos(phi) - 1.0) - log_i0e[0] - np.log(2.0 * np.pi)
    if model.family == WRAPPED_GAUSSIAN and model.param * model.increments > 0.0:
        sd = float(np.sqrt(model.param * model.increments))
        reach = int(6.0 * sd / (2.0 * np.pi)) + 3
        k = np.arange(-reach, reach + 1)
        z = (phi[..., None] + 2.0 * np.pi * k) / sd
        peak = np.max(-0.5 * z * z, axis=-1)
        return (
            peak
            + np.log(np.sum(np.exp(-0.5 * z * z - peak[..., None]), axis=-1))
            - np.log(sd * np.sqrt(2.0 * np.pi))
        )
    with np.errstate(divide="ignore"):
        return np.log(pdf_eval(model, phi))


def sample_phase(model: PhaseNoiseModel, rng: np.random.Generator, size=None):
    """Draw phase increments from the model's own family.

    Von Mises draws use numpy's Best-Fisher rejection sampler, wrapped
    Gaussians are normal draws reduced into ``[-pi, pi)``.  Models built with
    :func:`convolve_iid` sum ``increments`` independent draws.
    """
    if model.family == UNIFORM:
        return rng.uniform(-np.pi, np.pi, size)
    if model.family == VON_MISES:
        draw = lambda: rng.vonmises(0.0, model.param, size)  # noqa: E731
    elif model.family == WRAPPED_GAUSSIAN:
        sd = float(np.sqrt(model.param))
        draw = lambda: rng.normal(0.0, sd, size)  # noqa: E731
    else:
        raise ValueError(f"model family {model.family!r} has no sampler")
    total = draw()
    for _ in range(model.increments - 1):
        total = total + draw()
    return wrap_phase(total)
