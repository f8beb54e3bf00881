"""
Elliptic motion as polynomials
==============================

Orbiting objects move with cos and sin of a linear phase.  The solvers only
understand polynomials, so the orbit is replaced by Taylor polynomials of the
lowest degree that keeps the error under a bound.
"""

import math

import numpy as np

from kinetic_geom import MovingObject, Scenario, Trajectory, approximate_trig_motion, too_far

horizon = (0.0, 2.0)
R1, R2, a, theta0 = 3.0, 2.0, 1.5, 0.3

for err in (1e-3, 1e-6, 1e-9):
    tr = approximate_trig_motion(R1, R2, a, theta0, 0.0, 0.0, horizon, err_bound=err)
    ts = np.linspace(*horizon, 4096)
    x = np.array([tr.coords[0](float(t)) for t in ts])
    worst = np.abs(x - R1 * np.cos(a * ts + theta0)).max()
    print(f"err_bound={err:g}: degree {tr.degree}, sampled error {worst:.1e}")

# a ground station and the orbiter drift out of range
orbiter = approximate_trig_motion(R1, R2, a, theta0, 0.0, 0.0, horizon, err_bound=1e-7)
station = Trajectory.from_coefficients([[1.0, 2.0], [0.0]], horizon)
scn = Scenario(
    (MovingObject("station", station, 0.5, 3.5), MovingObject("orbiter", orbiter, 0.5, 4.0)),
    metric="euclidean",
)
report = too_far(scn)
print("out of range at t =", report.min_time)
if report.found:
    p, q = station.position(report.min_time), orbiter.position(report.min_time)
    print("distance there:", math.dist(p, q))
