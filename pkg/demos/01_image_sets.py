"""
Image sets for pi/N wedges
==========================

A free solution placed in the wedge 0 < theta < pi/N is made to vanish on
both walls by adding 2N - 1 signed copies of it.  The copies are the
rotations (sign +1) and reflections (sign -1) of the dihedral group.
"""

import numpy as np

from wedgewave import GaussianPacket2D, WedgeSystem, build_wedge_images, psi_wedge, verify_closure
from wedgewave.output import dump_images

# the 60 degree wedge: six terms, alternating signs
print(dump_images(3, (5.0, 3.0)))

# every N closes into a group of order 2N with sign = determinant
for n in range(1, 9):
    report = verify_closure(build_wedge_images(n))
    print(n, report.ok, f"{report.max_deviation:.1e}")

# the image sum vanishes on both walls at any time
system = WedgeSystem.build(3, GaussianPacket2D.from_center(5.0, 3.0, 0.3, -0.2, 1.0))
r = np.linspace(0, 20, 5)
for t in (0.0, 4.0):
    lower = psi_wedge(system, r, 0 * r, t, masked=False)
    upper = psi_wedge(system, r / 2, r * np.sqrt(3) / 2, t, masked=False)
    print(t, np.abs(lower).max(), np.abs(upper).max())
