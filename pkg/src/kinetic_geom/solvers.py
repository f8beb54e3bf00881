"""First-event queries: Too Close, Too Far and epsilon-approximately 3-Aligned.

Every query is posed for one focus object against the rest of the scenario
and returns an :class:`EventReport` holding the earliest event time and the
set of objects (or object pairs) realising it.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

from .events import DEFECTS, AlignmentWitness, EventKind, EventReport
from .errors import ConfigurationError, ContractError, NumericalFailureError, UnsupportedMetricError
from .motion import Metric, Scenario, euclidean_distance_sq_fn, manhattan_distance_fn
from .piecewise import PiecewiseFunction, combine3, first_time_geq, first_time_leq
from .poly import DEFAULT_TOL


class _Earliest:
    """Running minimum with tie set, as used by every solver.

    A time within ``tol`` of the current minimum joins the tie set; a time
    smaller by more than ``tol`` replaces it.
    """

    def __init__(self, tol: float):
        self.tol = tol
        self.time: Optional[float] = None
        self.members: list = []
        self.extra: list = []

    def offer(self, t: Optional[float], member, extra=None) -> None:
        if t is None:
            return
        if self.time is None or t < self.time - self.tol:
            self.time = t
            self.members = [member]
            self.extra = [extra]
        elif t <= self.time + self.tol:
            self.time = min(self.time, t)
            self.members.append(member)
            self.extra.append(extra)


def _map(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _check_focus(scn: Scenario, focus: int) -> int:
    if not 0 <= focus < scn.n:
        raise IndexError(f"focus index {focus} out of range for {scn.n} objects")
    return focus


def _annotated(fn, focus):
    def run(j):
        try:
            return fn(j)
        except NumericalFailureError as exc:
            raise NumericalFailureError(
                f"pair ({focus}, {j}): {exc}", interval=exc.interval, pair=(focus, j)
            ) from exc
    return run


def pair_distance_fn(scn: Scenario, i: int, j: int, tol: float = DEFAULT_TOL) -> PiecewiseFunction:
    """Distance between objects ``i`` and ``j`` in the scenario's metric.

    For the Euclidean metric this is the *squared* distance, a single piece.
    """
    a, b = scn.objects[i].traj, scn.objects[j].traj
    if scn.metric is Metric.MANHATTAN:
        return manhattan_distance_fn(a, b, tol)
    return PiecewiseFunction.from_polynomial(euclidean_distance_sq_fn(a, b), scn.horizon)


def _threshold_query(scn: Scenario, focus: int, kind: EventKind, radius: Callable,
                     tol: float, threads: int) -> EventReport:
    _check_focus(scn, focus)
    below = kind is EventKind.TOO_CLOSE
    squared = scn.metric is Metric.EUCLIDEAN

    def first_time(j):
        thr = min(radius(scn.objects[focus]), radius(scn.objects[j]))
        dist = pair_distance_fn(scn, focus, j, tol)
        if squared:
            thr = thr * thr
        return first_time_leq(dist, thr, tol) if below else first_time_geq(dist, thr, tol)

    others = [j for j in range(scn.n) if j != focus]
    times = _map(_annotated(first_time, focus), others, threads)
    best = _Earliest(tol)
    for j, t in zip(others, times):
        best.offer(t, j)
    return EventReport(kind, focus, best.time, tuple(sorted(best.members)))


def too_close(scn: Scenario, focus: int = 0, tol: float = DEFAULT_TOL,
              threads: int = 1) -> EventReport:
    """Earliest time the focus is within ``min(g_focus, g_j)`` of some object ``j``."""
    return _threshold_query(scn, focus, EventKind.TOO_CLOSE, lambda o: o.safe_radius,
                            tol, threads)


def too_far(scn: Scenario, focus: int = 0, tol: float = DEFAULT_TOL,
            threads: int = 1) -> EventReport:
    """Earliest time some object ``j`` is at least ``min(r_focus, r_j)`` from the focus.

    Raises:
        ConfigurationError: an object has no communication range.
    """
    missing = [o.id for o in scn.objects if o.comm_range is None]
    if missing:
        raise ConfigurationError(f"too-far needs comm_range for every object; missing: {missing}")
    return _threshold_query(scn, focus, EventKind.TOO_FAR, lambda o: o.comm_range,
                            tol, threads)


def _manhattan(p, q) -> float:
    return sum(abs(x - y) for x, y in zip(p, q))


def _triple(defect: str, focus: int, i: int, j: int) -> tuple[int, int, int]:
    if defect == "a+c-b":
        return (focus, i, j)
    if defect == "b+c-a":
        return (i, j, focus)
    return (i, focus, j)


def _aligned_at_start(scn: Scenario, focus: int, pairs, eps: float,
                      defects) -> tuple[list, list]:
    t0 = scn.horizon.lo
    pos = [o.traj.position(t0) for o in scn.objects]
    members, witnesses = [], []
    for i, j in pairs:
        a = _manhattan(pos[focus], pos[i])
        b = _manhattan(pos[focus], pos[j])
        c = _manhattan(pos[i], pos[j])
        values = {"a+b-c": a + b - c, "a+c-b": a + c - b, "b+c-a": b + c - a}
        fired = next((name for name, _ in defects if abs(values[name]) <= eps), None)
        if fired is None and (a == 0 or b == 0 or c == 0):
            fired = "coincident"
        if fired is not None:
            triple = _triple(fired, focus, i, j) if fired != "coincident" else (i, focus, j)
            members.append((i, j))
            witnesses.append(AlignmentWitness(fired, triple))
    return members, witnesses


def _first_abs_leq(f: PiecewiseFunction, eps: float, tol: float) -> Optional[float]:
    # first t with |F(t)| <= eps; F starts outside [-eps, eps] and is
    # continuous, so it must first cross the nearer bound
    v0 = f(f.breaks[0])
    if abs(v0) <= eps:
        return f.breaks[0]
    if v0 > 0:
        return first_time_leq(f, eps, tol)
    return first_time_geq(f, -eps, tol)


def three_aligned(scn: Scenario, focus: int = 0, middle_only: bool = False,
                  epsilon: Optional[float] = None, tol: float = DEFAULT_TOL,
                  threads: int = 1) -> EventReport:
    """Earliest time the focus and two other objects are epsilon-collinear.

    Collinearity is measured on Manhattan distances: with ``a``, ``b``, ``c``
    the distances focus-i, focus-j and i-j, the triple is aligned when one of
    ``a+b-c``, ``a+c-b``, ``b+c-a`` is within ``epsilon`` of zero.  With
    ``middle_only`` only ``a+b-c`` (focus in the middle) is considered.

    Raises:
        UnsupportedMetricError: the scenario metric is not Manhattan.
    """
    if scn.metric is not Metric.MANHATTAN:
        raise UnsupportedMetricError("three-aligned is defined for the Manhattan metric only")
    if scn.n < 3:
        raise ContractError("three-aligned needs at least three objects")
    _check_focus(scn, focus)
    eps = scn.epsilon if epsilon is None else float(epsilon)
    if not eps > 0:
        raise ContractError("epsilon must be positive")
    defects = DEFECTS[:1] if middle_only else DEFECTS
    others = [k for k in range(scn.n) if k != focus]
    pairs = list(itertools.combinations(others, 2))

    members, witnesses = _aligned_at_start(scn, focus, pairs, eps, defects)
    if members:
        return EventReport(EventKind.THREE_ALIGNED, focus, scn.horizon.lo,
                           tuple(members), tuple(witnesses))

    trajs = [o.traj for o in scn.objects]
    to_focus = {k: manhattan_distance_fn(trajs[focus], trajs[k], tol) for k in others}

    def earliest(pair):
        i, j = pair
        a, b = to_focus[i], to_focus[j]
        c = manhattan_distance_fn(trajs[i], trajs[j], tol)
        best_t, best_name = None, None
        for name, signs in defects:
            t = _first_abs_leq(combine3(a, b, c, signs, tol), eps, tol)
            if t is not None and (best_t is None or t < best_t):
                best_t, best_name = t, name
        return best_t, best_name

    results = _map(_annotated(earliest, focus), pairs, threads)
    best = _Earliest(tol)
    for (i, j), (t, name) in zip(pairs, results):
        if t is not None:
            best.offer(t, (i, j), AlignmentWitness(name, _triple(name, focus, i, j)))
    order = sorted(range(len(best.members)), key=lambda k: best.members[k])
    return EventReport(
        EventKind.THREE_ALIGNED, focus, best.time,
        tuple(best.members[k] for k in order), tuple(best.extra[k] for k in order),
    )


def solve(kind: EventKind, scn: Scenario, focus: int = 0, **kwargs) -> EventReport:
    """Dispatch to the solver for ``kind``."""
    kind = EventKind(kind)
    if kind is EventKind.TOO_CLOSE:
        return too_close(scn, focus, **kwargs)
    if kind is EventKind.TOO_FAR:
        return too_far(scn, focus, **kwargs)
    return three_aligned(scn, focus, **kwargs)
