"""Image-sum wavefunction, its gradient, and density grids."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .gaussian import d2psi1d_dx2, psi1d
from .images import WedgeSystem, inside_wedge

# Rows per work unit.  Fixed so that the arithmetic performed for any sample
# never depends on how many workers share the grid.
ROW_BLOCK = 32


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid bounds must satisfy min < max")
        if int(self.nx) != self.nx or int(self.ny) != self.ny or self.nx < 2 or self.ny < 2:
            raise ValueError("nx and ny must be integers >= 2")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)


@dataclass(frozen=True)
class DensityGrid:
    """``|psi|^2`` sampled on ``spec`` at time ``t``; ``values`` has shape (nx, ny)."""

    spec: GridSpec
    t: float
    values: np.ndarray


def image_sum(system: WedgeSystem, func, x, y, masked: bool = True):
    """Signed image sum ``sum_k s_k func(Q_k (x, y))`` of a free solution.

    ``func(x, y)`` may be any free-particle solution at a fixed time.  Terms
    are accumulated in ascending index order.  With ``masked`` the result is
    exactly zero outside the open wedge.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    total = np.zeros(np.broadcast(x, y).shape, dtype=complex)
    for term in system.terms:
        xs, ys = term.isometry.apply(x, y)
        if term.sign > 0:
            total = total + func(xs, ys)
        else:
            total = total - func(xs, ys)
    if masked:
        total = np.where(inside_wedge(system.n_wedge, x, y), total, 0.0)
    return total[()] if total.ndim == 0 else total


def psi_wedge(system: WedgeSystem, x, y, t, masked: bool = True):
    """Wedge wavefunction: signed image sum of the 2D packet, zero outside."""
    px, py = system.packet.px_params, system.packet.py_params

    def free(xs, ys):
        return psi1d(px, xs, t) * psi1d(py, ys, t)

    return image_sum(system, free, x, y, masked=masked)


def laplacian_psi_wedge(system: WedgeSystem, x, y, t, masked: bool = True):
    """Analytic Laplacian of the image sum; rotations and reflections commute with it."""
    px, py = system.packet.px_params, system.packet.py_params

    def lap(xs, ys):
        return d2psi1d_dx2(px, xs, t) * psi1d(py, ys, t) + psi1d(px, xs, t) * d2psi1d_dx2(py, ys, t)

    return image_sum(system, lap, x, y, masked=masked)


def _fields(system: WedgeSystem, x, y, t):
    """``psi``, ``grad psi`` and ``laplacian psi`` of the unmasked image sum in one pass."""
    px, py = system.packet.px_params, system.packet.py_params
    zx = 1.0 + 1j * t / (px.m * px.beta**2 / px.hbar)
    zy = 1.0 + 1j * t / (py.m * py.beta**2 / py.hbar)
    psi = gx = gy = lap = 0.0
    for term in system.terms:
        q = term.isometry
        xs, ys = q.apply(x, y)
        fx = psi1d(px, xs, t)
        fy = psi1d(py, ys, t)
        kx = 1j * px.p0 / px.hbar - (xs - px.x0 - px.p0 * t / px.m) / (px.beta**2 * zx)
        ky = 1j * py.p0 / py.hbar - (ys - py.x0 - py.p0 * t / py.m) / (py.beta**2 * zy)
        f = fx * fy
        dfx = kx * f
        dfy = ky * f
        d2 = (kx**2 - 1.0 / (px.beta**2 * zx) + ky**2 - 1.0 / (py.beta**2 * zy)) * f
        s = term.sign
        psi = psi + s * f
        gx = gx + s * (q.a * dfx + q.c * dfy)
        gy = gy + s * (q.b * dfx + q.d * dfy)
        lap = lap + s * d2
    return psi, gx, gy, lap


def grad_psi_wedge(system: WedgeSystem, x, y, t):
    """Analytic ``(dpsi/dx, dpsi/dy)`` at points strictly inside the wedge."""
    if not np.all(inside_wedge(system.n_wedge, x, y)):
        raise ValueError("gradient requested at a point outside the open wedge")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _, gx, gy, _ = _fields(system, x, y, t)
    gx, gy = np.asarray(gx), np.asarray(gy)
    if gx.ndim == 0:
        return gx[()], gy[()]
    return gx, gy


def _row_blocks(n: int):
    return [(i, min(i + ROW_BLOCK, n)) for i in range(0, n, ROW_BLOCK)]


def map_row_blocks(func, n_rows: int, threads: int = 1) -> list:
    """Apply ``func(start, stop)`` to fixed-size row blocks, in order."""
    blocks = _row_blocks(n_rows)
    if threads <= 1 or len(blocks) == 1:
        return [func(a, b) for a, b in blocks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda ab: func(*ab), blocks))


def density_grid(system: WedgeSystem, spec: GridSpec, t: float, threads: int = 1) -> DensityGrid:
    """``|psi_wedge|^2`` on the grid; bit-identical for any ``threads``."""
    xs, ys = spec.xs, spec.ys

    def block(i0, i1):
        X, Y = np.meshgrid(xs[i0:i1], ys, indexing="ij")
        psi = psi_wedge(system, X, Y, t)
        return psi.real**2 + psi.imag**2

    values = np.concatenate(map_row_blocks(block, spec.nx, threads), axis=0)
    return DensityGrid(spec, float(t), values)


def schrodinger_residual(system: WedgeSystem, x: float, y: float, t: float, h: float) -> float:
    """``|i hbar psi_t + hbar^2/(2m) laplacian(psi)|`` by central differences of step h.

    The closed form is valid for negative times too, so the time stencil is
    always two-sided.
    """
    stencil_x = np.array([x, x + h, x - h, x, x])
    stencil_y = np.array([y, y, y, y + h, y - h])
    if not np.all(inside_wedge(system.n_wedge, stencil_x, stencil_y)):
        raise ValueError("finite-difference stencil leaves the wedge")
    m, hbar = system.packet.m, system.packet.hbar
    c, xp, xm, yp, ym = psi_wedge(system, stencil_x, stencil_y, t)
    psi_t = (psi_wedge(system, x, y, t + h) - psi_wedge(system, x, y, t - h)) / (2 * h)
    lap = (xp + xm + yp + ym - 4 * c) / h**2
    return float(abs(1j * hbar * psi_t + hbar**2 / (2 * m) * lap))
