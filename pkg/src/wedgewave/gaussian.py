"""Closed-form free-particle Gaussian wave packets in one and two dimensions.

All functions accept scalars or numpy arrays for the coordinate/time
arguments and broadcast in the usual numpy way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class PacketParams1D:
    """Parameters of a 1D Gaussian packet.

    Parameters
    ----------
    x0 : float
        Initial center.
    p0 : float
        Initial central momentum.
    beta : float
        Width parameter; the initial position spread is ``beta / sqrt(2)``.
    m, hbar : float
        Mass and reduced Planck constant.
    """

    x0: float = 0.0
    p0: float = 0.0
    beta: float = 1.0
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("beta", "m", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        for name in ("x0", "p0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class DerivedScales:
    t0: float
    dx0: float
    dp0: float
    alpha: float


def derived_scales(params: PacketParams1D) -> DerivedScales:
    """Spreading time, initial spreads and ``alpha = beta / hbar``."""
    beta, m, hbar = params.beta, params.m, params.hbar
    return DerivedScales(
        t0=m * beta**2 / hbar,
        dx0=beta / math.sqrt(2.0),
        dp0=hbar / (beta * math.sqrt(2.0)),
        alpha=beta / hbar,
    )


def width_at(params: PacketParams1D, t) -> np.ndarray:
    """Position spread of the free packet at time ``t``."""
    s = derived_scales(params)
    return s.dx0 * np.sqrt(1.0 + (np.asarray(t, dtype=float) / s.t0) ** 2)


def _spread_factor(params: PacketParams1D, t):
    t0 = params.m * params.beta**2 / params.hbar
    return 1.0 + 1j * np.asarray(t, dtype=float) / t0


def psi1d(params: PacketParams1D, x, t):
    """Free 1D Gaussian packet ``psi(x, t)``.

    Uses the principal branch of the complex square root in the prefactor;
    ``1 + i t / t0`` stays in the right half-plane, so the amplitude is
    continuous in ``t``.
    """
    x = np.asarray(x, dtype=float)
    z = _spread_factor(params, t)
    beta, m, hbar, x0, p0 = params.beta, params.m, params.hbar, params.x0, params.p0
    t = np.asarray(t, dtype=float)
    shift = x - x0 - p0 * t / m
    exponent = (
        1j * p0 * (x - x0) / hbar
        - 1j * p0**2 * t / (2.0 * m * hbar)
        - shift**2 / (2.0 * beta**2 * z)
    )
    return np.exp(exponent) / np.sqrt(SQRT_PI * beta * z)


def dpsi1d_dx(params: PacketParams1D, x, t):
    """Analytic x-derivative of :func:`psi1d`."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    z = _spread_factor(params, t)
    shift = x - params.x0 - params.p0 * t / params.m
    factor = 1j * params.p0 / params.hbar - shift / (params.beta**2 * z)
    return factor * psi1d(params, x, t)


def d2psi1d_dx2(params: PacketParams1D, x, t):
    """Analytic second x-derivative of :func:`psi1d`."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    z = _spread_factor(params, t)
    shift = x - params.x0 - params.p0 * t / params.m
    factor = 1j * params.p0 / params.hbar - shift / (params.beta**2 * z)
    return (factor**2 - 1.0 / (params.beta**2 * z)) * psi1d(params, x, t)


@dataclass(frozen=True)
class GaussianPacket2D:
    """Product packet ``psi_x(x, t) * psi_y(y, t)``."""

    px_params: PacketParams1D
    py_params: PacketParams1D

    def __post_init__(self):
        if self.px_params.m != self.py_params.m or self.px_params.hbar != self.py_params.hbar:
            raise ValueError("x and y components must share m and hbar")

    @classmethod
    def from_center(cls, x0, y0, px0=0.0, py0=0.0, beta=1.0, m=1.0, hbar=1.0):
        """Isotropic packet centered at ``(x0, y0)`` with momentum ``(px0, py0)``."""
        return cls(
            PacketParams1D(x0, px0, beta, m, hbar),
            PacketParams1D(y0, py0, beta, m, hbar),
        )

    @property
    def m(self) -> float:
        return self.px_params.m

    @property
    def hbar(self) -> float:
        return self.px_params.hbar

    @property
    def center(self) -> tuple[float, float]:
        return self.px_params.x0, self.py_params.x0

    @property
    def momentum(self) -> tuple[float, float]:
        return self.px_params.p0, self.py_params.p0


def psi2d(packet: GaussianPacket2D, x, y, t):
    return psi1d(packet.px_params, x, t) * psi1d(packet.py_params, y, t)


def phi1d_free(params: PacketParams1D, p, t):
    """Momentum-space amplitude of a zero-momentum free Gaussian packet.

    ``sqrt(alpha / sqrt(pi)) exp(-alpha^2 p^2 / 2) exp(-i p^2 t / 2 m hbar)
    exp(-i p x0 / hbar)`` with ``alpha = beta / hbar``.
    """
    if params.p0 != 0:
        raise ValueError("phi1d_free is defined for zero-momentum packets only")
    p = np.asarray(p, dtype=float)
    t = np.asarray(t, dtype=float)
    alpha = params.beta / params.hbar
    m, hbar = params.m, params.hbar
    phase = -1j * p**2 * t / (2.0 * m * hbar) - 1j * p * params.x0 / hbar
    return math.sqrt(alpha / SQRT_PI) * np.exp(-(alpha**2) * p**2 / 2.0 + phase)
