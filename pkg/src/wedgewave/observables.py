"""Masked trapezoid quadrature of wedge observables.

Every expectation value is divided by the norm computed on the same grid,
so the (exponentially small) normalization defect of the image sum never
enters.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .gaussian import width_at
from .images import WedgeSystem, inside_wedge
from .wavefunction import (
    GridSpec,
    _fields,
    map_row_blocks,
    psi_wedge,
)

TAIL_TOL = 1e-8
DEFAULT_K_SIGMA = 8.0


class TailTruncationWarning(UserWarning):
    """The quadrature box cuts off more probability than ``TAIL_TOL``."""


@dataclass(frozen=True)
class Moments:
    t: float
    norm: float
    mean_x: float
    mean_y: float
    mean_px: float
    mean_py: float
    kinetic: float
    tail: float


def _trapezoid_weights(n: int, h: float) -> np.ndarray:
    w = np.full(n, h)
    w[0] = w[-1] = 0.5 * h
    return w


def wedge_moments(
    system: WedgeSystem,
    t: float,
    spec: GridSpec,
    *,
    momentum: bool = True,
    threads: int = 1,
) -> Moments:
    """One grid pass accumulating every observable at time ``t``."""
    xs, ys = spec.xs, spec.ys
    wx = _trapezoid_weights(spec.nx, spec.dx)
    wy = _trapezoid_weights(spec.ny, spec.dy)
    hbar, m = system.packet.hbar, system.packet.m

    def block(i0, i1):
        X, Y = np.meshgrid(xs[i0:i1], ys, indexing="ij")
        inside = inside_wedge(system.n_wedge, X, Y)
        if momentum:
            psi, gx, gy, lap = _fields(system, X, Y, t)
            psi = np.where(inside, psi, 0.0)
        else:
            psi = psi_wedge(system, X, Y, t)
        rho = psi.real**2 + psi.imag**2
        cols = [rho, X * rho, Y * rho]
        if momentum:
            # psi is already zero outside, which masks every product below.
            cols += [
                (psi.conj() * gx).imag,
                (psi.conj() * gy).imag,
                -(psi.conj() * lap).real,
            ]
        # Row integrals along y; shape (rows, quantities).
        return np.stack([c @ wy for c in cols], axis=1)

    rows = np.concatenate(map_row_blocks(block, spec.nx, threads), axis=0)
    # Exactly rounded, so the result cannot depend on how many quantities
    # were accumulated alongside.
    totals = [math.fsum(wx * rows[:, k]) for k in range(rows.shape[1])]

    # Tail estimate: density on the box rim times the current packet width.
    sigma = float(max(width_at(system.packet.px_params, t), width_at(system.packet.py_params, t)))
    rim_x = np.concatenate([xs, xs])
    rim_y = np.concatenate([np.full(spec.nx, spec.y_min), np.full(spec.nx, spec.y_max)])
    rim = np.abs(psi_wedge(system, rim_x, rim_y, t)) ** 2
    edge = rim.sum() * spec.dx
    rim_x = np.concatenate([np.full(spec.ny, spec.x_min), np.full(spec.ny, spec.x_max)])
    rim_y = np.concatenate([ys, ys])
    rim = np.abs(psi_wedge(system, rim_x, rim_y, t)) ** 2
    edge += rim.sum() * spec.dy

    norm = float(totals[0])
    if not norm > 0:
        raise ValueError(f"non-positive norm {norm!r} at t={t}: grid misses the packet")
    tail = float(edge * sigma / norm)
    if tail > TAIL_TOL:
        warnings.warn(
            f"t={t:g}: estimated tail truncation {tail:.2e} exceeds {TAIL_TOL:g}",
            TailTruncationWarning,
            stacklevel=2,
        )
    nan = math.nan
    return Moments(
        t=float(t),
        norm=norm,
        mean_x=float(totals[1] / norm),
        mean_y=float(totals[2] / norm),
        mean_px=float(hbar * totals[3] / norm) if momentum else nan,
        mean_py=float(hbar * totals[4] / norm) if momentum else nan,
        kinetic=float(hbar**2 / (2 * m) * totals[5] / norm) if momentum else nan,
        tail=tail,
    )


def quad_norm(system: WedgeSystem, t: float, spec: GridSpec, threads: int = 1) -> float:
    """Trapezoid integral of ``|psi|^2`` over the masked grid."""
    return wedge_moments(system, t, spec, momentum=False, threads=threads).norm


def expect_position(system: WedgeSystem, t: float, spec: GridSpec, threads: int = 1):
    mo = wedge_moments(system, t, spec, momentum=False, threads=threads)
    return mo.mean_x, mo.mean_y


def expect_momentum(system: WedgeSystem, t: float, spec: GridSpec, threads: int = 1):
    """``hbar Im <psi|grad psi>`` divided by the norm."""
    mo = wedge_moments(system, t, spec, threads=threads)
    return mo.mean_px, mo.mean_py


def expect_kinetic(system: WedgeSystem, t: float, spec: GridSpec, threads: int = 1) -> float:
    """``-hbar^2/(2m) Re int psi* laplacian(psi)`` over the norm.

    Equal to ``hbar^2/(2m) int |grad psi|^2`` since ``psi`` vanishes on the
    walls, but this integrand also vanishes quadratically there
    (``laplacian(psi) ~ d psi/dt = 0`` on a wall), which keeps the masked
    trapezoid rule accurate; ``|grad psi|^2`` does not vanish at a wall and
    costs first-order accuracy.
    """
    return wedge_moments(system, t, spec, threads=threads).kinetic


def auto_grid(
    system: WedgeSystem,
    t: float,
    k_sigma: float = DEFAULT_K_SIGMA,
    spacing: float | None = None,
) -> GridSpec:
    """Box around every image center +- ``k_sigma`` widths, clipped to the wedge.

    The default spacing is a tenth of the smaller width parameter.
    """
    if k_sigma < 6:
        raise ValueError("k_sigma must be >= 6")
    px, py = system.packet.px_params, system.packet.py_params
    if spacing is None:
        spacing = min(px.beta, py.beta) / 10.0
    reach = k_sigma * float(max(width_at(px, t), width_at(py, t)))
    centers = system.image_centers(t)
    x_lo, y_lo = centers.min(axis=0) - reach
    x_hi, y_hi = centers.max(axis=0) + reach

    # Bounding box of the wedge itself.
    y_lo = max(y_lo, 0.0)
    n = system.n_wedge
    if n >= 2:
        x_lo = max(x_lo, 0.0)
    if n >= 3:
        y_hi = min(y_hi, x_hi * math.tan(math.pi / n))
    if not (x_lo < x_hi and y_lo < y_hi):
        raise ValueError("packet is nowhere near the wedge at this time")
    nx = int(math.ceil((x_hi - x_lo) / spacing)) + 1
    ny = int(math.ceil((y_hi - y_lo) / spacing)) + 1
    return GridSpec(float(x_lo), float(x_hi), float(y_lo), float(y_hi), nx, ny)


@dataclass(frozen=True)
class ExpectationSeries:
    """Per-time observables; each field is an array aligned with ``times``."""

    times: np.ndarray
    norm: np.ndarray
    mean_x: np.ndarray
    mean_y: np.ndarray
    mean_px: np.ndarray
    mean_py: np.ndarray
    kinetic: np.ndarray

    COLUMNS = ("t", "norm", "x", "y", "px", "py", "T")

    def as_array(self) -> np.ndarray:
        return np.column_stack(
            [self.times, self.norm, self.mean_x, self.mean_y, self.mean_px, self.mean_py, self.kinetic]
        )


def expectation_series(
    system: WedgeSystem,
    times,
    k_sigma: float = DEFAULT_K_SIGMA,
    threads: int = 1,
    spec: GridSpec | None = None,
) -> ExpectationSeries:
    """Observables at each time, each on its own :func:`auto_grid` unless ``spec`` is given."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or np.any(np.diff(times) <= 0):
        raise ValueError("times must be a non-empty strictly increasing sequence")
    records = []
    for t in times:
        grid = spec if spec is not None else auto_grid(system, t, k_sigma)
        records.append(wedge_moments(system, t, grid, threads=threads))
    col = lambda name: np.array([getattr(r, name) for r in records])
    return ExpectationSeries(
        times=times,
        norm=col("norm"),
        mean_x=col("mean_x"),
        mean_y=col("mean_y"),
        mean_px=col("mean_px"),
        mean_py=col("mean_py"),
        kinetic=col("kinetic"),
    )


def momentum_angle(px: float, py: float) -> float:
    """Direction of the mean momentum in degrees."""
    return math.degrees(math.atan2(py, px))
