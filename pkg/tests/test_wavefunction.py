import math

import numpy as np
import pytest

from conftest import psi60_handcoded, psi90_handcoded
from wedgewave import (
    GaussianPacket2D,
    GridSpec,
    ImageTerm,
    WedgeSystem,
    density_grid,
    dpsi1d_dx,
    grad_psi_wedge,
    inside_wedge,
    psi1d,
    psi2d,
    psi_wedge,
    schrodinger_residual,
)
from wedgewave.wavefunction import image_sum, laplacian_psi_wedge

SQ3 = math.sqrt(3.0)


def random_packet(rng, n_wedge, moving=True):
    r = rng.uniform(1.5, 6)
    th = rng.uniform(0.15, 0.85) * math.pi / n_wedge
    p = rng.uniform(-1, 1, 2) if moving else (0.0, 0.0)
    return GaussianPacket2D.from_center(r * math.cos(th), r * math.sin(th), p[0], p[1], rng.uniform(0.6, 1.5))


def random_interior(rng, n_wedge, size, r_max=8.0, margin=0.0):
    r = rng.uniform(0.3, r_max, size)
    th = rng.uniform(0.02, 0.98, size) * math.pi / n_wedge
    return r * np.cos(th), r * np.sin(th)


def test_vanishes_on_both_walls(fig2_system):
    x = np.linspace(0.01, 20, 400)
    for t in (0.0, 1.0, 5.0, 15.0):
        assert np.all(psi_wedge(fig2_system, x, 0.0 * x, t) == 0)
        on_wall = psi_wedge(fig2_system, x, SQ3 * x, t)
        assert np.max(np.abs(on_wall)) < 1e-15
        unmasked = psi_wedge(fig2_system, x, SQ3 * x, t, masked=False)
        assert np.max(np.abs(unmasked)) < 1e-14


def test_center_value_matches_single_packet(fig2_system, fig2_packet):
    direct = psi2d(fig2_packet, 5.0, 3.0, 0.0)
    assert abs(psi_wedge(fig2_system, 5.0, 3.0, 0.0) - direct) < 1e-6
    assert abs(psi_wedge(fig2_system, 5.0, 3.0, 0.0) - 1 / math.sqrt(math.pi)) < 1e-6


def test_right_angle_matches_four_term_formula(rng):
    for _ in range(100):
        packet = random_packet(rng, 2)
        system = WedgeSystem.build(2, packet)
        x, y = rng.uniform(0.01, 8, 2)
        t = rng.uniform(0, 10)
        expected = psi90_handcoded(packet, x, y, t)
        assert abs(psi_wedge(system, x, y, t) - expected) < 1e-12


def test_sixty_degree_matches_six_term_formula(rng):
    packet = random_packet(rng, 3)
    system = WedgeSystem.build(3, packet)
    x, y = random_interior(rng, 3, 200)
    t = rng.uniform(0, 10, 200)
    np.testing.assert_allclose(psi_wedge(system, x, y, t), psi60_handcoded(packet, x, y, t), rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("n", range(1, 7))
def test_boundary_vanishing_random_packets(n, rng):
    for _ in range(5):
        system = WedgeSystem.build(n, random_packet(rng, n))
        peak = abs(psi2d(system.packet, *system.packet.center, 0.0))
        r = rng.uniform(0, 15, 1000)
        th = math.pi / n
        t = rng.uniform(0, 10)
        first = psi_wedge(system, r, 0 * r, t, masked=False)
        second = psi_wedge(system, r * math.cos(th), r * math.sin(th), t, masked=False)
        assert np.max(np.abs(first)) < 1e-12 * peak
        assert np.max(np.abs(second)) < 1e-12 * peak


def test_image_sum_is_linear(fig2_system, rng):
    other = GaussianPacket2D.from_center(2.0, 0.7, 0.3, -0.4, 0.8)
    c = 0.3 - 1.7j
    t = 2.5
    f = lambda u, v: psi2d(fig2_system.packet, u, v, t)
    g = lambda u, v: psi2d(other, u, v, t)
    x, y = random_interior(rng, 3, 50)
    combined = image_sum(fig2_system, lambda u, v: c * f(u, v) + g(u, v), x, y)
    separate = c * image_sum(fig2_system, f, x, y) + image_sum(fig2_system, g, x, y)
    np.testing.assert_allclose(combined, separate, rtol=1e-13, atol=1e-16)
    np.testing.assert_allclose(
        image_sum(fig2_system, lambda u, v: c * f(u, v), x, y), c * psi_wedge(fig2_system, x, y, t), rtol=1e-13, atol=1e-16
    )


def test_outside_is_exactly_zero(fig2_system, rng):
    x, y = rng.uniform(-10, 10, (2, 500))
    vals = psi_wedge(fig2_system, x, y, 3.0)
    assert np.all(vals[~inside_wedge(3, x, y)] == 0)


def test_gradient_matches_finite_differences(rng):
    h = 1e-5
    packet = random_packet(rng, 3)
    system = WedgeSystem.build(3, packet)
    checked = 0
    while checked < 100:
        x, y = random_interior(rng, 3, 1, r_max=7)
        x, y = float(x[0]), float(y[0])
        if not inside_wedge(3, [x - h, x + h, x, x], [y, y, y - h, y + h]).all():
            continue
        t = rng.uniform(0, 5)
        gx, gy = grad_psi_wedge(system, x, y, t)
        fx = (psi_wedge(system, x + h, y, t) - psi_wedge(system, x - h, y, t)) / (2 * h)
        fy = (psi_wedge(system, x, y + h, t) - psi_wedge(system, x, y - h, t)) / (2 * h)
        scale = math.hypot(abs(gx), abs(gy))
        if scale < 1e-4:
            continue
        assert abs(fx - gx) < 1e-6 * scale
        assert abs(fy - gy) < 1e-6 * scale
        checked += 1


def test_gradient_half_plane_mirror_term():
    # N=1: only the mirror term contributes to d/dy at the packet's own peak
    packet = GaussianPacket2D.from_center(0.5, 2.0)
    system = WedgeSystem.build(1, packet)
    _, gy = grad_psi_wedge(system, 0.5, 2.0, 0.0)
    expected = psi1d(packet.px_params, 0.5, 0.0) * dpsi1d_dx(packet.py_params, -2.0, 0.0)
    assert gy == pytest.approx(expected, abs=1e-16)


def test_gradient_small_at_isolated_center(fig2_system):
    gx, gy = grad_psi_wedge(fig2_system, 5.0, 3.0, 0.0)
    assert math.hypot(abs(gx), abs(gy)) < 1e-6


def test_gradient_rejects_exterior(fig2_system):
    with pytest.raises(ValueError):
        grad_psi_wedge(fig2_system, 1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        grad_psi_wedge(fig2_system, np.array([5.0, 1.0]), np.array([3.0, 2.0]), 0.0)


def test_laplacian_matches_free_equation(fig2_system, rng):
    # free evolution: laplacian(psi) = -2i dpsi/dt in natural units
    h = 1e-4
    x, y = random_interior(rng, 3, 20)
    t = 4.0
    dt = (psi_wedge(fig2_system, x, y, t + h) - psi_wedge(fig2_system, x, y, t - h)) / (2 * h)
    np.testing.assert_allclose(laplacian_psi_wedge(fig2_system, x, y, t), -2j * dt, atol=1e-8)


FIG2_GRID = GridSpec(0.0, 12.0, 0.0, 10.0, 241, 201)


def test_density_grid_initial_peak(fig2_system):
    grid = density_grid(fig2_system, FIG2_GRID, 0.0)
    assert grid.values.shape == (241, 201)
    i, j = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    assert (FIG2_GRID.xs[i], FIG2_GRID.ys[j]) == pytest.approx((5.0, 3.0))
    assert grid.values.max() == pytest.approx(1 / math.pi, rel=1e-6)


@pytest.mark.parametrize("t", [5.0, 10.0, 15.0])
def test_density_grid_walls_and_exterior(fig2_system, t):
    grid = density_grid(fig2_system, FIG2_GRID, t)
    X, Y = np.meshgrid(FIG2_GRID.xs, FIG2_GRID.ys, indexing="ij")
    assert np.all(grid.values >= 0)
    assert np.all(grid.values[:, 0] == 0)  # y = 0 wall row
    assert np.all(grid.values[~inside_wedge(3, X, Y)] == 0)


def test_density_grid_exterior_mask_small_box(fig2_system):
    spec = GridSpec(-2, 2, -2, 2, 81, 81)
    grid = density_grid(fig2_system, spec, 1.0)
    X, Y = np.meshgrid(spec.xs, spec.ys, indexing="ij")
    angle = np.degrees(np.arctan2(Y, X))
    outside = ~((angle > 0) & (angle < 60))
    assert np.all(grid.values[outside] == 0)


def test_density_grid_bit_identical_across_threads(fig2_system):
    spec = GridSpec(0.0, 30.0, 0.0, 25.0, 301, 251)
    ref = density_grid(fig2_system, spec, 10.0, threads=1).values
    for threads in (2, 4, 8):
        assert np.array_equal(density_grid(fig2_system, spec, 10.0, threads=threads).values, ref)


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(1, 0, 0, 1, 5, 5)
    with pytest.raises(ValueError):
        GridSpec(0, 1, 0, 1, 1, 5)


def _fig2_interior_points(rng, n):
    pts = []
    while len(pts) < n:
        x, y = rng.normal((5.0, 3.0), 1.5)
        if y > 0.01 and SQ3 * x - y > 0.02:
            pts.append((x, y, rng.uniform(0, 5)))
    return pts


def test_residual_small_and_second_order(fig2_system, rng):
    peak = 1 / math.sqrt(math.pi)
    pts = _fig2_interior_points(rng, 100)
    res = [schrodinger_residual(fig2_system, x, y, t, 1e-3) for x, y, t in pts]
    assert max(res) < 1e-5 * peak
    coarse = sum(schrodinger_residual(fig2_system, x, y, t, 4e-3) for x, y, t in pts)
    fine = sum(schrodinger_residual(fig2_system, x, y, t, 2e-3) for x, y, t in pts)
    assert coarse / fine == pytest.approx(4.0, rel=0.05)


def test_residual_rejects_stencil_outside(fig2_system):
    with pytest.raises(ValueError):
        schrodinger_residual(fig2_system, 1.0, 1e-4, 0.0, 1e-3)


def test_corrupted_sign_passes_pde_but_breaks_walls(fig2_system, rng):
    terms = list(fig2_system.terms)
    terms[2] = ImageTerm(terms[2].isometry, -terms[2].sign)
    broken = WedgeSystem(3, tuple(terms), fig2_system.packet)
    for x, y, t in _fig2_interior_points(rng, 10):
        assert schrodinger_residual(broken, x, y, t, 1e-3) < 1e-5
    x = np.linspace(0.5, 8, 50)
    wall = psi_wedge(broken, x, 0 * x, 3.0, masked=False)
    assert np.max(np.abs(wall)) > 1e-4
