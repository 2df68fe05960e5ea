"""
Momentum distribution of the half-line mirror packet
====================================================

On x > 0 with a wall at x = 0 the solution is psi(x, t) - psi(-x, t).  Its
momentum distribution starts as a Gaussian around p = 0, then shifts to
positive momenta and develops zeros at multiples of pi / x0.  At late times
it approaches the envelope (4 alpha / sqrt(pi)) sin^2(p x0) exp(-alpha^2 p^2).
"""

from pathlib import Path

import numpy as np

from wedgewave import PacketParams1D, longterm_expectations, longterm_momentum_density, momentum_stats_series
from wedgewave.momentum import longterm_l1_distance

params = PacketParams1D(x0=3.0)
times = [0.0, 1.0, 3.0, 10.0, 50.0]
series = momentum_stats_series(params, times)
for md in series:
    print(
        f"t={md.t:5.1f} <p>={md.mean_p:.4f} dp={md.spread_p:.4f} <p^2>={md.mean_p2:.5f} "
        f"L1 to envelope={longterm_l1_distance(md, params):.3f}"
    )
print("envelope (<p>, dp) with sin^2 -> 1/2:", longterm_expectations(params))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    out = Path("demo_out") / "fig4"
    out.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    for md in series[:4]:
        ax.plot(md.p_samples, md.density, label=f"t = {md.t:g}")
    p = series[-2].p_samples
    ax.plot(p, longterm_momentum_density(params, p), "k--", label="long-time envelope")
    ax.set_xlim(-3, 4)
    ax.set_xlabel("p")
    ax.legend()
    fig.savefig(out / "momentum.png", dpi=120, bbox_inches="tight")
