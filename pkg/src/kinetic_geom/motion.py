"""Polynomial trajectories, moving objects and their pairwise distance functions."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ApproximationInfeasibleError, ContractError
from .piecewise import Op, PiecewiseFunction, abs_pieces, combine
from .poly import DEFAULT_TOL, Interval, Polynomial, as_interval, compose_linear

#: Largest Taylor degree :func:`approximate_trig_motion` may produce.
TRIG_MAX_DEGREE = 24


class Metric(enum.Enum):
    MANHATTAN = "manhattan"
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class Trajectory:
    """Position ``t -> (coords[0](t), ..., coords[d-1](t))`` on ``horizon``."""

    coords: tuple[Polynomial, ...]
    horizon: Interval

    def __post_init__(self):
        coords = tuple(c if isinstance(c, Polynomial) else Polynomial(c) for c in self.coords)
        if not coords:
            raise ContractError("a trajectory needs at least one coordinate")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "horizon", as_interval(self.horizon))

    @classmethod
    def from_coefficients(cls, coords: Sequence[Sequence[float]], horizon) -> "Trajectory":
        return cls(tuple(Polynomial(c) for c in coords), as_interval(horizon))

    @classmethod
    def stationary(cls, point: Sequence[float], horizon) -> "Trajectory":
        return cls.from_coefficients([[x] for x in point], horizon)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.coords)

    def position(self, t: float) -> tuple[float, ...]:
        return tuple(c(t) for c in self.coords)


@dataclass(frozen=True)
class MovingObject:
    """A point object with its safe radius and optional communication range."""

    id: str
    traj: Trajectory
    safe_radius: float = 0.0
    comm_range: Optional[float] = None

    def __post_init__(self):
        if not self.safe_radius >= 0:
            raise ContractError(f"object {self.id!r}: safe_radius must be >= 0")
        if self.comm_range is not None:
            if not self.comm_range > 0:
                raise ContractError(f"object {self.id!r}: comm_range must be > 0")
            if not self.comm_range > self.safe_radius:
                raise ContractError(f"object {self.id!r}: comm_range must exceed safe_radius")


@dataclass(frozen=True)
class Scenario:
    """The system of moving objects queried by the solvers."""

    objects: tuple[MovingObject, ...]
    metric: Metric = Metric.MANHATTAN
    horizon: Optional[Interval] = None
    epsilon: float = 1e-3
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        objs = tuple(self.objects)
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "metric", Metric(self.metric))
        if len(objs) < 2:
            raise ContractError("a scenario needs at least two objects")
        h = as_interval(self.horizon) if self.horizon is not None else objs[0].traj.horizon
        object.__setattr__(self, "horizon", h)
        d = objs[0].traj.dim
        for o in objs:
            if o.traj.horizon != h:
                raise ContractError(f"object {o.id!r} has horizon {o.traj.horizon}, expected {h}")
            if o.traj.dim != d:
                raise ContractError(f"object {o.id!r} has dimension {o.traj.dim}, expected {d}")
        index = {o.id: k for k, o in enumerate(objs)}
        if len(index) != len(objs):
            raise ContractError("object ids must be unique")
        if not self.epsilon > 0:
            raise ContractError("epsilon must be positive")
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.objects)

    @property
    def dim(self) -> int:
        return self.objects[0].traj.dim

    def index_of(self, obj_id: str) -> int:
        try:
            return self._index[obj_id]
        except KeyError:
            raise KeyError(f"unknown object id {obj_id!r}") from None


def difference(a: Trajectory, b: Trajectory) -> Trajectory:
    """Coordinate-wise ``a - b``."""
    if a.dim != b.dim:
        raise ContractError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.horizon != b.horizon:
        raise ContractError(f"horizon mismatch: {a.horizon} vs {b.horizon}")
    return Trajectory(tuple(p - q for p, q in zip(a.coords, b.coords)), a.horizon)


def manhattan_distance_fn(a: Trajectory, b: Trajectory, tol: float = DEFAULT_TOL) -> PiecewiseFunction:
    """L1 distance between two trajectories as a piecewise polynomial.

    Each coordinate gap contributes ``|a_k - b_k|`` by :func:`abs_pieces`; the
    sum then has at most ``d * s`` switchpoints for coordinates of degree ``s``.
    """
    diff = difference(a, b)
    h = diff.horizon
    total = abs_pieces(diff.coords[0], h, tol)
    for p in diff.coords[1:]:
        total = combine(total, abs_pieces(p, h, tol), Op.ADD, tol)
    return total


def euclidean_distance_sq_fn(a: Trajectory, b: Trajectory) -> Polynomial:
    """Squared Euclidean distance, a single polynomial of degree ``2s``."""
    diff = difference(a, b)
    acc = Polynomial()
    for p in diff.coords:
        acc = acc + p * p
    return acc


def taylor_degree(amplitude: float, phase_radius: float, err_bound: float,
                  max_degree: int = TRIG_MAX_DEGREE) -> int:
    """Smallest ``n`` whose Lagrange remainder ``A r^(n+1)/(n+1)!`` is ``<= err_bound``.

    Raises:
        ApproximationInfeasibleError: no ``n <= max_degree`` is good enough.
    """
    amplitude = abs(amplitude)
    if amplitude == 0.0 or phase_radius == 0.0:
        return 0
    term = amplitude * phase_radius  # remainder bound for n = 0
    for n in range(max_degree + 1):
        if term <= err_bound:
            return n
        term *= phase_radius / (n + 2)
    raise ApproximationInfeasibleError(
        f"need more than {max_degree} Taylor terms for amplitude {amplitude}, "
        f"phase radius {phase_radius}, error {err_bound}; shrink the horizon or relax the bound"
    )


def _taylor_trig(amplitude: float, rate: float, phase0: float, center: float,
                 degree: int) -> Polynomial:
    # amplitude * cos(rate * t + phase0) expanded about t = center, in powers of t
    phi_c = rate * center + phase0
    derivs = (math.cos(phi_c), -math.sin(phi_c), -math.cos(phi_c), math.sin(phi_c))
    local = []
    fact = 1.0
    for k in range(degree + 1):
        if k:
            fact *= k
        local.append(amplitude * derivs[k % 4] * rate ** k / fact)
    # local is in powers of (t - center)
    return compose_linear(Polynomial(local), -center, 1.0)


def approximate_trig_motion(R1: float, R2: float, a: float, theta0: float,
                            x0: float, y0: float, horizon,
                            err_bound: float = 1e-6,
                            max_degree: int = TRIG_MAX_DEGREE) -> Trajectory:
    """Polynomial approximation of elliptic motion at constant angular rate.

    Approximates ``x = R1 cos(a t + theta0) + x0``, ``y = R2 sin(a t + theta0) + y0``
    by Taylor polynomials centred at the middle of the horizon.  Each
    coordinate uses the lowest degree whose remainder bound over the horizon
    is at most ``err_bound``.
    """
    if not err_bound > 0:
        raise ValueError("err_bound must be positive")
    h = as_interval(horizon)
    center = h.midpoint
    radius = abs(a) * 0.5 * h.width
    if not math.isfinite(radius):
        raise ValueError("a * horizon width must be finite")
    # leave part of the budget for rounding in the change of basis
    budget = 0.5 * err_bound
    nx = taylor_degree(R1, radius, budget, max_degree)
    ny = taylor_degree(R2, radius, budget, max_degree)
    x = _taylor_trig(R1, a, theta0, center, nx) + x0
    # sin(phi) = cos(phi - pi/2)
    y = _taylor_trig(R2, a, theta0 - 0.5 * math.pi, center, ny) + y0
    return Trajectory((x, y), h)
