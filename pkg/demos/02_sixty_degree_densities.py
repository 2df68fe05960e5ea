"""
Probability density in a 60 degree wedge
========================================

A packet starting at rest at (5, 3) spreads, reflects off both walls and
develops interference fringes.  The densities are written as CSV plus
16-bit PGM heatmaps and, when matplotlib is available, as one PNG panel.
"""

from pathlib import Path

import numpy as np

from wedgewave import GridSpec, density_grid
from wedgewave.config import load_run_config
from wedgewave.runner import run

root = Path(__file__).resolve().parent.parent
cfg = load_run_config(root / "configs" / "fig2.cfg")
out = Path("demo_out") / "fig2"
result = run(cfg, out)
print("\n".join(p.name for p in result.files))

system = cfg.system()
spec = GridSpec(0.0, 12.0, 0.0, 10.0, 241, 201)
grids = [density_grid(system, spec, t) for t in cfg.times]
for g in grids:
    i, j = np.unravel_index(np.argmax(g.values), g.values.shape)
    print(f"t={g.t:5.1f} peak {g.values.max():.4f} at ({spec.xs[i]:.2f}, {spec.ys[j]:.2f})")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, len(grids), figsize=(4 * len(grids), 3.6))
    for ax, g in zip(axes, grids):
        ax.imshow(np.sqrt(g.values.T), origin="lower", extent=(0, 12, 0, 10), cmap="gray_r")
        ax.set_title(f"t = {g.t:g}")
    fig.savefig(out / "densities.png", dpi=120, bbox_inches="tight")
