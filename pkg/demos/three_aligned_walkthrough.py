"""
Three points nearly on a line
=============================

With Manhattan distances a, b, c among the focus and two others, the triple
is epsilon-collinear when one of a+b-c, a+c-b, b+c-a drops to epsilon.  This
walks the standard example: the focus descends onto the segment between two
fixed beacons.
"""

import numpy as np

from kinetic_geom import MovingObject, Scenario, Trajectory, three_aligned
from kinetic_geom.motion import manhattan_distance_fn
from kinetic_geom.piecewise import combine3

horizon = (0.0, 6.0)
focus = Trajectory.from_coefficients([[2.0], [3.0, -1.0]], horizon)   # (2, 3 - t)
left = Trajectory.stationary((0.0, 0.0), horizon)
right = Trajectory.stationary((4.0, 0.0), horizon)

scn = Scenario(
    (MovingObject("focus", focus), MovingObject("left", left), MovingObject("right", right)),
    epsilon=0.5,
)

# the distance functions are piecewise polynomials; print their pieces
a = manhattan_distance_fn(focus, left)
b = manhattan_distance_fn(focus, right)
c = manhattan_distance_fn(left, right)
for name, f in (("a", a), ("b", b), ("c", c)):
    print(name, [(p.coeffs, (iv.lo, iv.hi)) for p, iv in ((pc.func, pc.interval) for pc in f.pieces)])

# the defect with the focus in the middle is a + b - c = 2|3 - t|
defect = combine3(a, b, c, (1, 1, -1))
for t in np.linspace(0, 6, 7):
    print(f"  t={t:.0f}  defect={defect(float(t)):.2f}")

report = three_aligned(scn)
w = report.witness
print("aligned at t =", report.min_time, "via", w.defect,
      "with", scn.objects[w.middle].id, "in the middle")
