"""Acceptance criteria, one test each, with a PASS/FAIL line in the terminal summary."""
import math
import random
import statistics
import time

import numpy as np
import pytest

from kinetic_geom.cli import main
from kinetic_geom.events import EventKind
from kinetic_geom.motion import (MovingObject, Scenario, Trajectory, approximate_trig_motion,
                                 manhattan_distance_fn)
from kinetic_geom.oracle import GridSpec, check_report
from kinetic_geom.piecewise import Op, abs_pieces, combine
from kinetic_geom.poly import Polynomial, scale
from kinetic_geom.scenario_file import load_scenario
from kinetic_geom.solvers import solve, three_aligned, too_close, too_far

from conftest import pw_invariants, quiet_start_scenario, random_poly, random_trajectory


def test_piece_count_bounds(record_criterion):
    rng = random.Random(2024)
    start = time.perf_counter()
    violations = 0
    for _ in range(500):
        d, s = rng.randint(1, 3), rng.randint(1, 3)
        h = (0.0, rng.uniform(1, 20))
        f = manhattan_distance_fn(random_trajectory(rng, d, s, h), random_trajectory(rng, d, s, h))
        pw_invariants(f)
        if f.num_switchpoints > d * s or f.num_pieces > d * s + 1:
            violations += 1
    elapsed = time.perf_counter() - start
    ok = violations == 0 and elapsed < 10
    record_criterion("1 piece-count bounds", ok, f"violations={violations} time={elapsed:.2f}s")
    assert ok


def test_abs_value_correctness(record_criterion):
    rng = random.Random(7)
    bad_value = bad_switch = 0
    for _ in range(500):
        deg = rng.randint(0, 6)
        hi = rng.uniform(0.5, 5)
        p = random_poly(rng, deg, 0, hi)
        f = abs_pieces(p, (0, hi))
        pw_invariants(f)
        sc = scale(p, (0, hi))
        ts = [rng.uniform(0, hi) for _ in range(1000)]
        bad_value += sum(abs(f(t) - abs(p(t))) > 1e-9 * sc for t in ts)
        bad_switch += sum(abs(p(tau)) > 1e-9 * sc for tau in f.switchpoints)
    sq = abs_pieces(Polynomial([1, -2, 1]), (0, 2))
    ok = bad_value == 0 and bad_switch == 0 and sq.num_pieces == 1
    record_criterion("2 abs-value correctness", ok,
                     f"value_mismatches={bad_value} nonzero_switchpoints={bad_switch} "
                     f"(t-1)^2_pieces={sq.num_pieces}")
    assert ok


def test_combination_bound(record_criterion):
    rng = random.Random(31)
    violations = 0
    for _ in range(500):
        hi = rng.uniform(1, 10)
        f, g = (abs_pieces(random_poly(rng, rng.randint(1, 4), 0, hi, with_roots=True), (0, hi))
                for _ in range(2))
        if rng.random() < 0.5:
            f = combine(f, abs_pieces(random_poly(rng, 2, 0, hi, with_roots=True), (0, hi)), Op.ADD)
        h = combine(f, g, rng.choice(list(Op)))
        pw_invariants(h)
        violations += h.num_switchpoints > f.num_switchpoints + g.num_switchpoints
    ok = violations == 0
    record_criterion("3 combination bound", ok, f"violations={violations}")
    assert ok


def test_oracle_equivalence(record_criterion):
    start = time.perf_counter()
    details, ok = [], True
    for seed, kind in enumerate(EventKind):
        rng = random.Random(1000 + seed)
        verdicts, events = [], 0
        for _ in range(100):
            n = rng.randint(3 if kind is EventKind.THREE_ALIGNED else 2, 6)
            d = rng.randint(2, 3) if kind is EventKind.THREE_ALIGNED else rng.randint(1, 3)
            s = rng.randint(1, 3)
            metric = "manhattan" if kind is EventKind.THREE_ALIGNED else rng.choice(("manhattan", "euclidean"))
            scn = quiet_start_scenario(rng, kind, n, d, s, epsilon=0.05, metric=metric)
            rep = solve(kind, scn)
            verdicts.append(check_report(scn, rep, GridSpec(scn.horizon, 65536)).verdict)
            events += rep.found
        strict = verdicts.count("PASS") / len(verdicts)
        total = (len(verdicts) - verdicts.count("FAIL")) / len(verdicts)
        ok = ok and strict >= 0.99 and total == 1.0
        details.append(f"{kind.value}: strict={strict:.2f} with_exemptions={total:.2f} "
                       f"events={events}/100")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 60
    record_criterion("4 oracle equivalence", ok, "; ".join(details) + f" time={elapsed:.1f}s")
    assert ok


def test_worked_fixtures(record_criterion, fixtures_dir):
    def scn(name):
        return load_scenario(fixtures_dir / name).scenario

    close = too_close(scn("too_close_1d.json")).min_time
    far = too_far(scn("too_far_linear.json")).min_time
    aligned = three_aligned(scn("three_aligned_worked.json")).min_time
    static = three_aligned(scn("static_collinear.json")).min_time
    ok = (abs(close - 8.0) <= 1e-9 and abs(far - 5.0) <= 1e-9
          and abs(aligned - 2.75) <= 1e-6 and static == 0.0)
    record_criterion("5 worked fixtures", ok,
                     f"too_close={close!r} too_far={far!r} three_aligned={aligned!r} static={static!r}")
    assert ok


def _median_time(fn, runs=5):
    times = []
    for _ in range(runs):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times)


def _slope(ns, ts):
    return float(np.polyfit(np.log(ns), np.log(ts), 1)[0])


def _crowd(n, seed=0):
    # objects far apart with small safe radii: every pair is fully processed
    rng = random.Random(seed)
    h = (0.0, 10.0)
    objs = []
    for k in range(n):
        coords = [[rng.uniform(-100, 100)] + [rng.uniform(-1, 1) for _ in range(2)] for _ in range(2)]
        objs.append(MovingObject(f"o{k}", Trajectory.from_coefficients(coords, h), 0.01))
    return Scenario(tuple(objs), "manhattan", h)


def _anti_diagonal(n, seed=0):
    # focus at the origin, the rest spaced along x + y = C: no triple is ever
    # aligned, so every pair runs the full defect analysis
    rng = random.Random(seed)
    h = (0.0, 10.0)
    objs = [MovingObject("focus", Trajectory.stationary((0.0, 0.0), h))]
    c = 10.0 * n
    for k in range(1, n):
        x = 10.0 * k
        coords = [[x, rng.uniform(-0.1, 0.1)], [c - x, rng.uniform(-0.1, 0.1)]]
        objs.append(MovingObject(f"o{k}", Trajectory.from_coefficients(coords, h)))
    return Scenario(tuple(objs), "manhattan", h, epsilon=1e-3)


@pytest.mark.slow
def test_complexity(record_criterion):
    ns = [1_000, 10_000, 100_000]
    start = time.perf_counter()
    ts = [_median_time(lambda s=_crowd(n): too_close(s)) for n in ns]
    close_elapsed = time.perf_counter() - start
    close_slope = _slope(ns, ts)

    ms = [50, 100, 200, 400]
    start = time.perf_counter()
    us = [_median_time(lambda s=_anti_diagonal(m): three_aligned(s)) for m in ms]
    aligned_elapsed = time.perf_counter() - start
    aligned_slope = _slope(ms, us)

    ok = (0.8 <= close_slope <= 1.3 and 1.7 <= aligned_slope <= 2.3
          and close_elapsed < 120 and aligned_elapsed < 120)
    record_criterion("6 complexity", ok,
                     f"too_close slope={close_slope:.2f} ({close_elapsed:.0f}s) "
                     f"three_aligned slope={aligned_slope:.2f} ({aligned_elapsed:.0f}s)")
    assert ok


def test_trig_approximation(record_criterion):
    rng = random.Random(99)
    ts = np.linspace(0.0, 1.0, 4096)
    passed, worst = 0, 0.0
    for _ in range(50):
        r1, r2 = rng.uniform(0, 10), rng.uniform(0, 10)
        a, th = rng.uniform(-10, 10), rng.uniform(-math.pi, math.pi)
        x0, y0 = rng.uniform(-10, 10), rng.uniform(-10, 10)
        tr = approximate_trig_motion(r1, r2, a, th, x0, y0, (0.0, 1.0), err_bound=1e-6)
        x = np.array([tr.coords[0](float(t)) for t in ts])
        y = np.array([tr.coords[1](float(t)) for t in ts])
        err = max(np.abs(x - (r1 * np.cos(a * ts + th) + x0)).max(),
                  np.abs(y - (r2 * np.sin(a * ts + th) + y0)).max())
        worst = max(worst, err)
        passed += err <= 1e-6
    ok = passed == 50
    record_criterion("7 trig approximation", ok, f"passed={passed}/50 worst_error={worst:.2e}")
    assert ok


def test_cli_determinism(record_criterion, fixtures_dir, tmp_path, capsys):
    commands = [
        ["too-close", "too_close_1d.json"],
        ["too-close", "orbits.json"],
        ["too-far", "too_far_linear.json"],
        ["too-far", "orbits.json"],
        ["three-aligned", "three_aligned_worked.json"],
        ["three-aligned", "static_collinear.json", "--middle-only"],
        ["pieces", "three_aligned_worked.json", "--pair", "focus,right", "--trace", str(tmp_path / "t.csv")],
        ["oracle-check", "too_close_1d.json", "--kind", "too-close"],
        ["oracle-check", "three_aligned_worked.json", "--kind", "three-aligned"],
    ]
    unstable = []
    for cmd in commands:
        argv = [cmd[0], str(fixtures_dir / cmd[1]), *cmd[2:]]
        outs = set()
        for extra in ([], [], ["--threads", "4"]):
            main(argv + extra)
            outs.add(capsys.readouterr().out)
        if len(outs) != 1:
            unstable.append(" ".join(cmd[:2]))
    ok = not unstable
    record_criterion("8 determinism", ok, f"commands={len(commands)} unstable={unstable}")
    assert ok
