import math
import random
from pathlib import Path

import numpy as np
import pytest

from kinetic_geom import MovingObject, Polynomial, Scenario, Trajectory

FIXTURES = Path(__file__).parent / "fixtures"

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def record_criterion():
    """Log one acceptance line; printed in the terminal summary."""
    def record(name: str, passed: bool, detail: str = ""):
        _CRITERIA.append((name, passed, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pw_invariants(f, tol=1e-7):
    """Assert every PiecewiseFunction invariant on ``f``."""
    f.check_invariants(tol)
    assert f.breaks[0] == f.horizon.lo and f.breaks[-1] == f.horizon.hi
    assert len(f.switchpoints) == f.num_pieces - 1
    for a, b in zip(f.breaks, f.breaks[1:]):
        assert a < b or f.horizon.lo == f.horizon.hi


def random_poly(rng: random.Random, degree: int, lo: float = 0.0, hi: float = 1.0,
                with_roots: bool = None) -> Polynomial:
    """Random polynomial; half the time built from roots inside ``[lo, hi]``."""
    if with_roots is None:
        with_roots = rng.random() < 0.5
    if degree == 0:
        return Polynomial([rng.uniform(-5, 5)])
    if with_roots:
        p = Polynomial([rng.uniform(0.2, 3.0) * rng.choice((-1, 1))])
        for _ in range(degree):
            r = rng.uniform(lo - 0.2 * (hi - lo), hi + 0.2 * (hi - lo))
            p = p * Polynomial([-r, 1.0])
        return p
    return Polynomial([rng.uniform(-3, 3) for _ in range(degree + 1)])


def random_trajectory(rng: random.Random, d: int, s: int, horizon, spread=10.0) -> Trajectory:
    lo, hi = horizon
    width = hi - lo
    coords = []
    for _ in range(d):
        c = [rng.uniform(-spread, spread)]
        for k in range(1, s + 1):
            # keep each term's excursion over the horizon of order ``spread``
            c.append(rng.uniform(-1, 1) * spread / width ** k)
        coords.append(c)
    return Trajectory.from_coefficients(coords, horizon)


def random_scenario(rng: random.Random, n: int, d: int, s: int, metric="manhattan",
                    horizon=(0.0, 10.0), epsilon=0.2) -> Scenario:
    objs = []
    for k in range(n):
        g = rng.uniform(0.5, 3.0)
        r = g + rng.uniform(5.0, 20.0)
        objs.append(MovingObject(f"q{k}", random_trajectory(rng, d, s, horizon), g, r))
    return Scenario(tuple(objs), metric=metric, horizon=horizon, epsilon=epsilon)


def quiet_start_scenario(rng: random.Random, kind, n: int, d: int, s: int,
                         horizon=(0.0, 10.0), epsilon=0.2, margin=0.05,
                         metric="manhattan", max_tries=500) -> Scenario:
    """Random scenario whose event condition is clearly false at the start.

    Safe radii are enlarged for Too Close and communication ranges widened
    for Too Far, so that events are common but happen after time 0.
    """
    from kinetic_geom.events import EventKind
    from kinetic_geom.oracle import GridSpec, event_margins

    kind = EventKind(kind)
    for _ in range(max_tries):
        scn = random_scenario(rng, n, d, s, metric=metric, horizon=horizon, epsilon=epsilon)
        if kind is EventKind.TOO_CLOSE:
            objs = []
            for o in scn.objects:
                g = rng.uniform(6.0, 15.0)
                objs.append(MovingObject(o.id, o.traj, g, g + rng.uniform(5.0, 20.0)))
            scn = Scenario(tuple(objs), metric=scn.metric, horizon=horizon, epsilon=epsilon)
        elif kind is EventKind.TOO_FAR:
            objs = tuple(MovingObject(o.id, o.traj, o.safe_radius,
                                      o.safe_radius + rng.uniform(25.0, 45.0)) for o in scn.objects)
            scn = Scenario(objs, metric=scn.metric, horizon=horizon, epsilon=epsilon)
        _, m = event_margins(scn, kind, GridSpec(horizon, 2))
        if (m[:, 0] > margin).all():
            return scn
    raise RuntimeError(f"no quiet-start scenario found for {kind}")


def dense_sign_changes(p, lo, hi, samples=20001):
    ts = np.linspace(lo, hi, samples)
    vals = np.array([p(float(t)) for t in ts])
    sg = np.sign(vals)
    out = []
    k = 0
    while k < len(ts) - 1:
        if sg[k] == 0:
            out.append((float(ts[k]), float(ts[k])))
        elif sg[k] * sg[k + 1] < 0:
            out.append((float(ts[k]), float(ts[k + 1])))
        k += 1
    if sg[-1] == 0:
        out.append((float(ts[-1]), float(ts[-1])))
    return out


def manhattan(p, q):
    return sum(abs(x - y) for x, y in zip(p, q))


def euclid(p, q):
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(p, q)))
