"""JSON scenario documents: parsing with field-addressed errors, and writing.

A scenario document looks like::

    {
      "horizon": 10,
      "dimension": 2,
      "metric": "manhattan",
      "epsilon": 0.001,
      "objects": [
        {"id": "a", "coords": [[0, 1], [2]], "safe_radius": 1, "comm_range": 5}
      ],
      "trig_objects": [
        {"id": "sat", "R1": 3, "R2": 2, "a": 1, "theta0": 0, "x0": 0, "y0": 0,
         "err_bound": 1e-6, "safe_radius": 0.5}
      ],
      "expected": {"too-close": 8.0, "too-far": null}
    }

``coords`` holds one coefficient array per dimension, ascending powers of t.
``expected`` is optional and only read by ``oracle-check``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .errors import ApproximationInfeasibleError, ContractError, DegreeOverflowError, KineticError
from .events import EventKind
from .motion import Metric, MovingObject, Scenario, Trajectory, approximate_trig_motion
from .poly import Interval, Polynomial

DEFAULT_EPSILON = 1e-3
DEFAULT_ERR_BOUND = 1e-6


class ScenarioFileError(KineticError, ValueError):
    """Malformed scenario document; the message starts with the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class ScenarioDocument:
    scenario: Scenario
    expected: dict = field(default_factory=dict)


def _number(doc: dict, key: str, where: str, default: Any = ..., positive=False,
            nonnegative=False) -> Optional[float]:
    if key not in doc or doc[key] is None:
        if default is ...:
            raise ScenarioFileError(f"{where}.{key}" if where else key, "required number is missing")
        return default
    v = doc[key]
    path = f"{where}.{key}" if where else key
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ScenarioFileError(path, f"expected a finite number, got {v!r}")
    if positive and not v > 0:
        raise ScenarioFileError(path, f"must be > 0, got {v!r}")
    if nonnegative and not v >= 0:
        raise ScenarioFileError(path, f"must be >= 0, got {v!r}")
    return float(v)


def _object_id(doc: dict, where: str) -> str:
    v = doc.get("id")
    if not isinstance(v, str) or not v:
        raise ScenarioFileError(f"{where}.id", f"expected a nonempty string, got {v!r}")
    return v


def _radii(doc: dict, where: str, default_safe=...):
    safe = _number(doc, "safe_radius", where, default=default_safe, nonnegative=True)
    comm = _number(doc, "comm_range", where, default=None, positive=True)
    if comm is not None and not comm > safe:
        raise ScenarioFileError(f"{where}.comm_range", f"must exceed safe_radius ({safe!r})")
    return safe, comm


def _coords(doc: dict, where: str, dim: int, horizon: Interval) -> Trajectory:
    coords = doc.get("coords")
    if not isinstance(coords, list):
        raise ScenarioFileError(f"{where}.coords", "expected a list of coefficient arrays")
    if len(coords) != dim:
        raise ScenarioFileError(f"{where}.coords", f"expected {dim} coordinate arrays, got {len(coords)}")
    polys = []
    for k, arr in enumerate(coords):
        path = f"{where}.coords[{k}]"
        if not isinstance(arr, list) or not arr:
            raise ScenarioFileError(path, "expected a nonempty array of numbers")
        for m, c in enumerate(arr):
            if isinstance(c, bool) or not isinstance(c, (int, float)) or not math.isfinite(c):
                raise ScenarioFileError(f"{path}[{m}]", f"expected a finite number, got {c!r}")
        try:
            polys.append(Polynomial(arr))
        except DegreeOverflowError as exc:
            raise ScenarioFileError(path, str(exc)) from None
    return Trajectory(tuple(polys), horizon)


def parse_scenario(doc: Any) -> ScenarioDocument:
    """Validate a decoded JSON document and build the scenario.

    Raises:
        ScenarioFileError: naming the first invalid field.
    """
    if not isinstance(doc, dict):
        raise ScenarioFileError("<root>", "expected a JSON object")
    m = _number(doc, "horizon", "", positive=True)
    horizon = Interval(0.0, m)
    dim = doc.get("dimension")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ScenarioFileError("dimension", f"expected a positive integer, got {dim!r}")
    metric = doc.get("metric", "manhattan")
    try:
        metric = Metric(metric)
    except ValueError:
        raise ScenarioFileError("metric", f"expected 'manhattan' or 'euclidean', got {metric!r}") from None
    epsilon = _number(doc, "epsilon", "", default=DEFAULT_EPSILON, positive=True)

    objects = []
    raw = doc.get("objects", [])
    if not isinstance(raw, list):
        raise ScenarioFileError("objects", "expected a list")
    for k, od in enumerate(raw):
        where = f"objects[{k}]"
        if not isinstance(od, dict):
            raise ScenarioFileError(where, "expected an object")
        oid = _object_id(od, where)
        safe, comm = _radii(od, where)
        objects.append(MovingObject(oid, _coords(od, where, dim, horizon), safe, comm))

    trig = doc.get("trig_objects", [])
    if not isinstance(trig, list):
        raise ScenarioFileError("trig_objects", "expected a list")
    if trig and dim != 2:
        raise ScenarioFileError("trig_objects", f"elliptic motion is planar but dimension is {dim}")
    for k, td in enumerate(trig):
        where = f"trig_objects[{k}]"
        if not isinstance(td, dict):
            raise ScenarioFileError(where, "expected an object")
        oid = _object_id(td, where)
        params = [_number(td, key, where) for key in ("R1", "R2", "a", "theta0", "x0", "y0")]
        err = _number(td, "err_bound", where, default=DEFAULT_ERR_BOUND, positive=True)
        safe, comm = _radii(td, where, default_safe=0.0)
        try:
            traj = approximate_trig_motion(*params, horizon=horizon, err_bound=err)
        except ApproximationInfeasibleError as exc:
            raise ScenarioFileError(where, str(exc)) from None
        objects.append(MovingObject(oid, traj, safe, comm))

    seen = set()
    for k, o in enumerate(objects):
        if o.id in seen:
            raise ScenarioFileError("objects", f"duplicate object id {o.id!r}")
        seen.add(o.id)
    if len(objects) < 2:
        raise ScenarioFileError("objects", "at least two objects are required")
    try:
        scenario = Scenario(tuple(objects), metric, horizon, epsilon)
    except ContractError as exc:
        raise ScenarioFileError("<root>", str(exc)) from None

    expected = doc.get("expected", {})
    if not isinstance(expected, dict):
        raise ScenarioFileError("expected", "expected an object keyed by query kind")
    parsed = {}
    for key, value in expected.items():
        try:
            kind = EventKind(key)
        except ValueError:
            raise ScenarioFileError(f"expected.{key}", "unknown query kind") from None
        parsed[kind] = _number(expected, key, "expected", default=None)
    return ScenarioDocument(scenario, parsed)


def load_scenario(path) -> ScenarioDocument:
    """Read and parse a scenario file.

    Raises:
        ScenarioFileError: unreadable file, invalid JSON (with line and
            column) or invalid content (with field path).
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioFileError(str(path), f"cannot read file ({exc.strerror})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFileError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return parse_scenario(doc)


def scenario_to_document(scn: Scenario) -> dict:
    """Inverse of :func:`parse_scenario` for polynomial objects (no ``trig_objects``)."""
    if scn.horizon.lo != 0.0:
        raise ContractError("scenario documents describe horizons starting at 0")
    objects = []
    for o in scn.objects:
        od = {"id": o.id, "coords": [list(p.coeffs) or [0.0] for p in o.traj.coords],
              "safe_radius": o.safe_radius}
        if o.comm_range is not None:
            od["comm_range"] = o.comm_range
        objects.append(od)
    return {"horizon": scn.horizon.hi, "dimension": scn.dim, "metric": scn.metric.value,
            "epsilon": scn.epsilon, "objects": objects}
