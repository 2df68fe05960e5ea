"""
Expectation values and the 30 degree exit angle
===============================================

The same packet ends up moving outward along the wedge bisector, so the
ratio <p_y>/<p_x> approaches tan(30 degrees).  Norm and kinetic energy stay
constant while the packet bounces.
"""

import math
from pathlib import Path

import numpy as np

from wedgewave import expectation_series
from wedgewave.config import load_run_config

root = Path(__file__).resolve().parent.parent
cfg = load_run_config(root / "configs" / "fig2.cfg")
system = cfg.system()

times = np.arange(0.0, 15.01, 1.0)
series = expectation_series(system, times)
for row in series.as_array():
    t, norm, x, y, px, py, kinetic = row
    angle = math.degrees(math.atan2(py, px)) if px > 1e-3 else float("nan")
    print(f"{t:5.1f} {norm:.9f} ({x:6.3f}, {y:6.3f}) ({px:+.4f}, {py:+.4f}) T={kinetic:.7f} angle={angle:6.2f}")

print("tan(30 deg) =", math.tan(math.pi / 6))
