import math

import numpy as np
import pytest
from scipy.special import wofz

from wedgewave import GaussianPacket2D, PacketParams1D, WedgeSystem, psi1d

SQ3 = math.sqrt(3.0)


@pytest.fixture
def fig2_packet():
    return GaussianPacket2D.from_center(5.0, 3.0)


@pytest.fixture
def fig2_system(fig2_packet):
    return WedgeSystem.build(3, fig2_packet)


@pytest.fixture
def rng():
    return np.random.default_rng(20051101)


def psi60_handcoded(packet, x, y, t):
    """The six-term 60 degree solution written out term by term."""
    def p(u, v):
        return psi1d(packet.px_params, u, t) * psi1d(packet.py_params, v, t)

    return (
        p(x, y)
        - p(x, -y)
        + p(-x / 2 - SQ3 * y / 2, SQ3 * x / 2 - y / 2)
        - p(-x / 2 + SQ3 * y / 2, SQ3 * x / 2 + y / 2)
        + p(-x / 2 + SQ3 * y / 2, -SQ3 * x / 2 - y / 2)
        - p(-x / 2 - SQ3 * y / 2, -SQ3 * x / 2 + y / 2)
    )


def psi90_handcoded(packet, x, y, t):
    def p(u, v):
        return psi1d(packet.px_params, u, t) * psi1d(packet.py_params, v, t)

    return p(x, y) - p(x, -y) - p(-x, y) + p(-x, -y)


def _half_line_gaussian_ft(c, a, p):
    """``int_0^inf exp(-c (x - a)^2 - i p x) dx`` for ``Re c > 0``, via Faddeeva."""
    sc = np.sqrt(c)
    w = -sc * a + 1j * p / (2 * sc)
    return np.exp(-1j * p * a) * np.sqrt(np.pi / c) / 2 * np.exp(-(p**2) / (4 * c) - w**2) * wofz(1j * w)


def mirror_phi_exact(params: PacketParams1D, t, p):
    """Closed-form half-line transform of the zero-momentum mirror packet."""
    hbar, beta = params.hbar, params.beta
    z = 1 + 1j * t / (params.m * beta**2 / hbar)
    pref = 1 / np.sqrt(np.sqrt(np.pi) * beta * z)
    c = 1 / (2 * beta**2 * z)
    k = np.asarray(p) / hbar
    val = _half_line_gaussian_ft(c, params.x0, k) - _half_line_gaussian_ft(c, -params.x0, k)
    return pref * val / np.sqrt(2 * np.pi * hbar)


def zero_momentum_norm_exact(system):
    """Norm over the wedge of the image sum of a real isotropic Gaussian.

    The group invariance of ``|psi|^2`` turns the wedge integral into
    ``sum_k s_k <psi_0 | psi_k>`` over the plane, and the overlap of two
    equal Gaussians a distance D apart is ``exp(-D^2 / 4 beta^2)``.
    """
    beta = system.packet.px_params.beta
    c = np.array(system.packet.center)
    total = 0.0
    for term, img in zip(system.terms, system.image_centers(0.0)):
        total += term.sign * math.exp(-np.sum((c - img) ** 2) / (4 * beta**2))
    return total


def polar_wedge_integral(n_wedge, f, r_max, n_r=600, n_theta=120):
    """Gauss-Legendre product rule in polar coordinates over the wedge.

    Independent of the masked Cartesian trapezoid rule used by the package.
    """
    gr, wr = np.polynomial.legendre.leggauss(n_r)
    gt, wt = np.polynomial.legendre.leggauss(n_theta)
    theta_max = math.pi / n_wedge
    r = 0.5 * r_max * (gr + 1)
    wr = 0.5 * r_max * wr
    th = 0.5 * theta_max * (gt + 1)
    wt = 0.5 * theta_max * wt
    R, TH = np.meshgrid(r, th, indexing="ij")
    X, Y = R * np.cos(TH), R * np.sin(TH)
    vals = f(X, Y) * R
    return np.einsum("i,j,ij->", wr, wt, vals)
