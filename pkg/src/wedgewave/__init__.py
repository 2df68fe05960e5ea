"""Exact image-method wave packets for free particles in pi/N wedges."""

from .gaussian import (
    DerivedScales,
    GaussianPacket2D,
    PacketParams1D,
    derived_scales,
    dpsi1d_dx,
    phi1d_free,
    psi1d,
    psi2d,
)
from .images import (
    ClosureReport,
    ImageTerm,
    PlaneIsometry,
    WedgeSystem,
    build_wedge_images,
    inside_wedge,
    verify_closure,
)
from .momentum import (
    MomentumDensity1D,
    longterm_expectations,
    longterm_momentum_density,
    mirror_psi1d,
    momentum_density_fft,
    momentum_stats_series,
)
from .observables import (
    ExpectationSeries,
    TailTruncationWarning,
    auto_grid,
    expect_kinetic,
    expect_momentum,
    expect_position,
    expectation_series,
    quad_norm,
)
from .wavefunction import (
    DensityGrid,
    GridSpec,
    density_grid,
    grad_psi_wedge,
    psi_wedge,
    schrodinger_residual,
)

__version__ = "0.1.0"
