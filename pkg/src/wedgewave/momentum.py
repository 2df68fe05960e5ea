"""Half-line mirror packet and its momentum-space distribution.

A zero-momentum Gaussian released at ``x0 > 0`` next to an infinite wall at
``x = 0``.  The position-space solution is the mirror combination
``psi(x, t) - psi(-x, t)``; its momentum amplitude comes from a discrete
Fourier transform of the half-line samples, and the long-time limit is
compared against the closed-form ``sin^2`` envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import SQRT_PI, PacketParams1D, derived_scales, psi1d, width_at

MIN_SAMPLES = 2**12
DEFAULT_SAMPLES = 2**16
TAIL_REL = 1e-8


def _check_mirror_params(params: PacketParams1D):
    if params.p0 != 0:
        raise ValueError("mirror packet must have zero initial momentum")
    if params.x0 <= 0:
        raise ValueError(f"x0 must be positive (inside the half line), got {params.x0!r}")


def mirror_psi1d(params: PacketParams1D, x, t):
    """``psi(x, t) - psi(-x, t)`` for ``x >= 0``; exactly zero for ``x < 0``."""
    _check_mirror_params(params)
    x = np.asarray(x, dtype=float)
    value = psi1d(params, x, t) - psi1d(params, -x, t)
    value = np.where(x > 0, value, 0.0)
    return value[()] if value.ndim == 0 else value


@dataclass(frozen=True)
class MomentumDensity1D:
    t: float
    p_samples: np.ndarray
    density: np.ndarray
    mean_p: float
    spread_p: float
    mean_p2: float
    norm: float = 1.0  # int |phi|^2 dp before renormalization


def default_x_max(params: PacketParams1D, t: float) -> float:
    return params.x0 + 12.0 * float(width_at(params, t))


def _trapz(f, x):
    return float(np.trapezoid(f, x)) if hasattr(np, "trapezoid") else float(np.trapz(f, x))


def momentum_density_fft(
    params: PacketParams1D,
    t: float,
    x_max: float | None = None,
    n_samples: int = DEFAULT_SAMPLES,
    p_window: float | None = None,
) -> MomentumDensity1D:
    """Momentum density of the mirror packet by discrete Fourier transform.

    ``phi(p) = (2 pi hbar)^(-1/2) int_0^x_max psi(x) exp(-i p x / hbar) dx``.
    Samples ``x_j = j dx`` start on the wall, where the wavefunction is
    zero, so the trapezoid sum equals ``dx * FFT(psi)_k`` at
    ``p_k = 2 pi hbar k / (n dx)`` with no extra phase.  The array is
    zero-padded to ``n_samples``; the step is chosen so the Nyquist momentum
    is sixteen times ``p_window`` (default ``8 / alpha``) whenever ``x_max``
    fits, which leaves a fine momentum spacing ``2 pi hbar / (n dx)``.

    The density is normalized, and ``mean_p``/``mean_p2`` are integrated,
    over the whole transform band: the wall kink gives ``|phi|^2`` a
    ``1/p^4`` tail, so ``<p^2>`` restricted to ``|p| <= 8 / alpha`` would be
    short by up to 2%.  Only the ``|p| <= p_window`` part is returned.
    """
    _check_mirror_params(params)
    n_samples = int(n_samples)
    if n_samples < MIN_SAMPLES or n_samples & (n_samples - 1):
        raise ValueError(f"n_samples must be a power of two >= {MIN_SAMPLES}")
    hbar = params.hbar
    scales = derived_scales(params)
    if p_window is None:
        p_window = 8.0 / scales.alpha
    if x_max is None:
        x_max = default_x_max(params, t)

    peak = float(np.max(np.abs(mirror_psi1d(params, np.linspace(0.0, x_max, 2049), t))))
    edge = float(abs(mirror_psi1d(params, x_max, t)))
    if not edge < TAIL_REL * peak:
        raise ValueError(
            f"x_max={x_max:g} truncates the packet: |psi(x_max)| / peak = {edge / peak:.2e}"
        )

    dx = math.pi * hbar / (16.0 * p_window)
    if (n_samples - 1) * dx < x_max:
        dx = x_max / (n_samples - 1)
    n_fill = int(math.floor(x_max / dx)) + 1
    x = dx * np.arange(n_fill)
    samples = np.zeros(n_samples, dtype=complex)
    samples[:n_fill] = mirror_psi1d(params, x, t)

    amp = dx / math.sqrt(2.0 * math.pi * hbar) * np.fft.fft(samples)
    p = 2.0 * math.pi * hbar * np.fft.fftfreq(n_samples, d=dx)
    amp = np.fft.fftshift(amp)
    p = np.fft.fftshift(p)
    density = amp.real**2 + amp.imag**2
    raw_norm = _trapz(density, p)
    density = density / raw_norm
    mean_p = _trapz(p * density, p)
    mean_p2 = _trapz(p * p * density, p)
    spread_p = math.sqrt(max(mean_p2 - mean_p**2, 0.0))
    keep = np.abs(p) <= p_window
    return MomentumDensity1D(float(t), p[keep], density[keep], mean_p, spread_p, mean_p2, raw_norm)


def position_density(params: PacketParams1D, t: float, x_max: float | None = None, n: int = 2049):
    """Sampled ``|psi(x, t)|^2`` on ``[0, x_max]`` (unnormalized)."""
    if x_max is None:
        x_max = default_x_max(params, t)
    x = np.linspace(0.0, x_max, n)
    return x, np.abs(mirror_psi1d(params, x, t)) ** 2


def longterm_momentum_density(params: PacketParams1D, p):
    """Long-time envelope ``(4 alpha / sqrt(pi)) sin^2(p x0 / hbar) exp(-alpha^2 p^2)`` for p > 0."""
    if params.p0 != 0:
        raise ValueError("long-time form assumes a zero-momentum packet")
    p = np.asarray(p, dtype=float)
    alpha = params.beta / params.hbar
    value = 4.0 * alpha / SQRT_PI * np.sin(p * params.x0 / params.hbar) ** 2 * np.exp(-(alpha**2) * p**2)
    value = np.where(p > 0, value, 0.0)
    return value[()] if value.ndim == 0 else value


def longterm_expectations(params: PacketParams1D) -> tuple[float, float]:
    """``(<p>, Delta p)`` of the long-time envelope with ``sin^2`` replaced by 1/2."""
    if params.p0 != 0:
        raise ValueError("long-time form assumes a zero-momentum packet")
    alpha = params.beta / params.hbar
    mean_p = 1.0 / (alpha * SQRT_PI)
    spread_p = math.sqrt((math.pi - 2.0) / (2.0 * math.pi * alpha**2))
    return mean_p, spread_p


def momentum_stats_series(
    params: PacketParams1D,
    times,
    n_samples: int = DEFAULT_SAMPLES,
    p_window: float | None = None,
) -> list[MomentumDensity1D]:
    """One :class:`MomentumDensity1D` per time, each with its default ``x_max``."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or np.any(np.diff(times) <= 0):
        raise ValueError("times must be a non-empty strictly increasing sequence")
    return [
        momentum_density_fft(params, t, n_samples=n_samples, p_window=p_window) for t in times
    ]


def longterm_l1_distance(md: MomentumDensity1D, params: PacketParams1D) -> float:
    """``int |density - long-time envelope| dp`` over the sampled window."""
    return _trapz(np.abs(md.density - longterm_momentum_density(params, md.p_samples)), md.p_samples)
