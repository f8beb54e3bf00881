"""
Who gets too close first?
=========================

Three drones share a corridor.  We ask when the first one comes within the
safe radius of the lead drone, then check the answer with the grid oracle.
"""

from kinetic_geom import MovingObject, Scenario, Trajectory, too_close
from kinetic_geom.oracle import GridSpec, check_report

horizon = (0.0, 10.0)

# positions are polynomials in t, one coefficient list per coordinate
lead = Trajectory.from_coefficients([[0.0], [0.0]], horizon)
left = Trajectory.from_coefficients([[-10.0, 1.0], [0.5]], horizon)
right = Trajectory.from_coefficients([[12.0, -1.0], [-0.5]], horizon)
late = Trajectory.from_coefficients([[3.0], [9.0, -0.5, 0.02]], horizon)

scn = Scenario(
    (
        MovingObject("lead", lead, safe_radius=2.0),
        MovingObject("left", left, safe_radius=2.0),
        MovingObject("right", right, safe_radius=2.0),
        MovingObject("late", late, safe_radius=1.0),
    ),
    metric="manhattan",
)

report = too_close(scn)
print("first event at t =", report.min_time)
print("objects involved:", [scn.objects[k].id for k in report.participants])

# the oracle samples the raw distances on a dense grid and reports the cell
# where the condition first holds; the analytic time must land inside it
cmp = check_report(scn, report, GridSpec(horizon, 65536))
print("oracle bracket:", (cmp.oracle.lo, cmp.oracle.hi), "->", cmp.verdict)

# moving the focus changes the question, not the machinery
other = too_close(scn, focus=scn.index_of("late"))
print("for 'late' the first event is at t =", other.min_time)
