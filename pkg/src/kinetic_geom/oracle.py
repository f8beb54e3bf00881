"""Brute-force time-grid verifier for the analytic solvers.

Nothing here touches the piecewise or root-finding code: positions are
evaluated on a uniform grid and distances are formed directly from them.
An event is reported as the grid cell in which its condition first holds.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .motion import Metric, Scenario, Trajectory
from .events import DEFECTS, EventKind, EventReport
from .poly import DEFAULT_TOL, Interval, as_interval

DEFAULT_SAMPLES = 65536


@dataclass(frozen=True)
class GridSpec:
    horizon: Interval
    samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        object.__setattr__(self, "horizon", as_interval(self.horizon))
        if int(self.samples) != self.samples or self.samples < 2:
            raise ValueError("a grid needs at least 2 samples")

    @property
    def cell(self) -> float:
        return self.horizon.width / (self.samples - 1)

    def times(self) -> np.ndarray:
        return np.linspace(self.horizon.lo, self.horizon.hi, self.samples)


@dataclass(frozen=True)
class OracleEvent:
    """First grid cell ``[lo, hi]`` where the event condition holds.

    ``lo == hi`` when the condition already holds at the first sample.
    ``participants`` are those true at ``hi``, in the same form the solvers
    use (indices, or ``(i, j)`` pairs for 3-Aligned).
    """

    lo: float
    hi: float
    participants: tuple


def sample_fn(f: Callable[[float], float], grid: GridSpec) -> list[tuple[float, float]]:
    """``(t, f(t))`` on the uniform grid, endpoints included.

    ``f`` is any callable of time, typically a polynomial or piecewise function.
    """
    return [(float(t), f(float(t))) for t in grid.times()]


def _positions(traj: Trajectory, ts: np.ndarray) -> np.ndarray:
    out = np.empty((traj.dim, ts.size))
    for k, p in enumerate(traj.coords):
        acc = np.zeros_like(ts)
        for c in reversed(p.coeffs):
            acc = acc * ts + c
        out[k] = acc
    return out


def _dist(pa: np.ndarray, pb: np.ndarray, metric: Metric) -> np.ndarray:
    if metric is Metric.MANHATTAN:
        return np.abs(pa - pb).sum(axis=0)
    return np.sqrt(((pa - pb) ** 2).sum(axis=0))


def event_margins(scn: Scenario, kind, grid: GridSpec, focus: int = 0,
                  epsilon: Optional[float] = None, middle_only: bool = False):
    """Signed distance to the event condition on the grid.

    Returns ``(labels, margins)`` where ``margins[r, k] <= 0`` exactly when
    the event condition holds for participant ``labels[r]`` at sample ``k``.
    """
    kind = EventKind(kind)
    ts = grid.times()
    pos = [_positions(o.traj, ts) for o in scn.objects]
    others = [k for k in range(scn.n) if k != focus]
    labels, rows = [], []
    if kind is not EventKind.THREE_ALIGNED:
        for j in others:
            d = _dist(pos[focus], pos[j], scn.metric)
            if kind is EventKind.TOO_CLOSE:
                thr = min(scn.objects[focus].safe_radius, scn.objects[j].safe_radius)
                rows.append(d - thr)
            else:
                thr = min(scn.objects[focus].comm_range, scn.objects[j].comm_range)
                rows.append(thr - d)
            labels.append(j)
    else:
        eps = scn.epsilon if epsilon is None else epsilon
        names = [name for name, _ in (DEFECTS[:1] if middle_only else DEFECTS)]
        for i, j in itertools.combinations(others, 2):
            a = _dist(pos[focus], pos[i], Metric.MANHATTAN)
            b = _dist(pos[focus], pos[j], Metric.MANHATTAN)
            c = _dist(pos[i], pos[j], Metric.MANHATTAN)
            values = {"a+b-c": a + b - c, "a+c-b": a + c - b, "b+c-a": b + c - a}
            m = np.min([np.abs(values[n]) for n in names], axis=0) - eps
            if a[0] == 0 or b[0] == 0 or c[0] == 0:
                m[0] = min(m[0], 0.0)
            rows.append(m)
            labels.append((i, j))
    return labels, np.array(rows)


def _first_event(labels, margins, grid: GridSpec) -> Optional[OracleEvent]:
    hit = (margins <= 0.0).any(axis=0)
    if not hit.any():
        return None
    k = int(np.argmax(hit))
    ts = grid.times()
    lo = float(ts[k - 1]) if k else float(ts[0])
    members = tuple(labels[r] for r in range(len(labels)) if margins[r, k] <= 0.0)
    return OracleEvent(lo, float(ts[k]), members)


def oracle_first_event(scn: Scenario, kind, grid: Optional[GridSpec] = None,
                       focus: int = 0, epsilon: Optional[float] = None,
                       middle_only: bool = False) -> Optional[OracleEvent]:
    """First grid bracket of the event, or ``None`` if no sample triggers it."""
    grid = grid or GridSpec(scn.horizon)
    labels, margins = event_margins(scn, kind, grid, focus, epsilon, middle_only)
    return _first_event(labels, margins, grid)


@dataclass(frozen=True)
class Approach:
    """How close the sampled condition came to flipping.

    ``graze`` is the smallest positive margin before the first event sample
    (infinite if the event holds at the first sample); ``depth`` is the
    largest violation anywhere on the grid (0 if there is no event).
    """

    graze: float
    depth: float


def _approach(margins) -> Approach:
    worst = margins.min(axis=0)
    hit = worst <= 0.0
    stop = int(np.argmax(hit)) if hit.any() else worst.size
    graze = float(worst[:stop].min()) if stop else math.inf
    return Approach(graze, float(max(0.0, -worst.min())))


def approach(scn: Scenario, kind, grid: Optional[GridSpec] = None, focus: int = 0,
             epsilon: Optional[float] = None, middle_only: bool = False) -> Approach:
    grid = grid or GridSpec(scn.horizon)
    _, margins = event_margins(scn, kind, grid, focus, epsilon, middle_only)
    return _approach(margins)


@dataclass(frozen=True)
class Comparison:
    verdict: str  # "PASS", "EXEMPT" or "FAIL"
    analytic: Optional[float]
    oracle: Optional[OracleEvent]
    approach: Approach
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict != "FAIL"


def compare_time(analytic: Optional[float], event: Optional[OracleEvent], grid: GridSpec,
                 near: Approach, tol: float = DEFAULT_TOL) -> Comparison:
    """Bracket rule: the analytic time must lie in the oracle cell, give or take one cell.

    A disagreement is a boundary graze, reported as ``EXEMPT``, when it can
    be explained by the grid missing a touch of the threshold (the samples
    came within ``10 * tol`` of it) or by the grid catching a violation no
    deeper than ``10 * tol``.
    """
    slack = grid.cell + tol
    limit = 10 * tol
    if analytic is None and event is None:
        return Comparison("PASS", analytic, event, near)
    if analytic is not None and event is not None:
        if event.lo - slack <= analytic <= event.hi + slack:
            return Comparison("PASS", analytic, event, near)
        detail = f"time {analytic!r} outside oracle bracket [{event.lo!r}, {event.hi!r}]"
        grazing = near.graze <= limit if analytic < event.lo else near.depth <= limit
    elif analytic is None:
        detail = f"oracle saw an event in [{event.lo!r}, {event.hi!r}] but none was reported"
        grazing = near.depth <= limit
    else:
        detail = f"event at {analytic!r} but the oracle saw none"
        grazing = near.graze <= limit
    return Comparison("EXEMPT" if grazing else "FAIL", analytic, event, near, detail)


def check_report(scn: Scenario, report: EventReport, grid: Optional[GridSpec] = None,
                 epsilon: Optional[float] = None, middle_only: bool = False,
                 tol: float = DEFAULT_TOL) -> Comparison:
    """Run the oracle for ``report``'s query and compare the event times."""
    grid = grid or GridSpec(scn.horizon)
    labels, margins = event_margins(scn, report.kind, grid, report.focus, epsilon, middle_only)
    return compare_time(report.min_time, _first_event(labels, margins, grid), grid,
                        _approach(margins), tol)
