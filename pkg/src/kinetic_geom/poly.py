"""Univariate real polynomials in time and real-root isolation on intervals.

Polynomials are immutable tuples of float coefficients in ascending powers
of ``t``.  Root isolation splits the interval at the critical points of the
polynomial (found recursively from the derivative), so every segment is
monotone and holds at most one simple root, which is then refined by a
bisection-safeguarded Newton iteration.  Critical points and endpoints where
the value is indistinguishable from zero are reported as roots too; this is
how tangential (even multiplicity) zeros such as those of ``(t - 1)**2`` are
found even though the sign never changes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeOverflowError, EverywhereZeroError, NumericalFailureError

#: Highest degree a :class:`Polynomial` may carry.
MAX_DEGREE = 64

#: Default root tolerance, in time units.
DEFAULT_TOL = 1e-9

_EPS = 2.220446049250313e-16
_MAX_ITER = 200


@dataclass(frozen=True)
class Interval:
    """Closed time interval ``[lo, hi]`` with finite endpoints."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, t) -> bool:
        return self.lo <= t <= self.hi

    def __iter__(self):
        yield self.lo
        yield self.hi


def as_interval(iv) -> Interval:
    """Coerce an ``Interval`` or a ``(lo, hi)`` pair to an ``Interval``."""
    if isinstance(iv, Interval):
        return iv
    lo, hi = iv
    return Interval(float(lo), float(hi))


class Polynomial:
    """Immutable real polynomial ``sum(c[k] * t**k)``.

    Trailing zero coefficients are stripped, so the zero polynomial has an
    empty coefficient tuple.  Its degree is reported as 0.

    >>> p = Polynomial([1, -2, 1])
    >>> p(1.0), p.degree
    (0.0, 2)
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[float] = (), max_degree: int = MAX_DEGREE):
        c = [float(x) for x in coeffs]
        while c and c[-1] == 0.0:
            c.pop()
        for x in c:
            if not math.isfinite(x):
                raise ValueError(f"non-finite coefficient in {c}")
        if len(c) - 1 > max_degree:
            raise DegreeOverflowError(
                f"degree {len(c) - 1} exceeds the maximum working degree {max_degree}"
            )
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Polynomial":
        # coeffs must already be canonical floats
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        return p

    @classmethod
    def constant(cls, value: float) -> "Polynomial":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff: float = 1.0) -> "Polynomial":
        return cls([0.0] * degree + [coeff])

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __call__(self, t: float) -> float:
        return _horner(self.coeffs, t)

    def __add__(self, other):
        other = _coerce(other)
        return Polynomial._raw(_strip(_add(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Polynomial._raw(_strip(_add(self.coeffs, tuple(-c for c in other.coeffs))))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Polynomial._raw(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            if other == 0:
                return Polynomial._raw(())
            return Polynomial._raw(tuple(c * other for c in self.coeffs))
        return mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"

    def derivative(self) -> "Polynomial":
        return derivative(self)

    def shift(self, c: float) -> "Polynomial":
        """Return ``q`` with ``q(t) = self(t + c)``."""
        return compose_linear(self, c, 1.0)

    def close_to(self, other: "Polynomial", atol: float = 1e-12) -> bool:
        """Coefficient-wise comparison within an absolute tolerance."""
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        for k in range(n):
            x = a[k] if k < len(a) else 0.0
            y = b[k] if k < len(b) else 0.0
            if abs(x - y) > atol:
                return False
        return True


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial((x,))


def _strip(c) -> tuple:
    n = len(c)
    while n and c[n - 1] == 0.0:
        n -= 1
    return tuple(c[:n])


def _add(a: tuple, b: tuple) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, x in enumerate(b):
        out[k] += x
    return out


def _horner(c: Sequence[float], t: float) -> float:
    acc = 0.0
    for x in reversed(c):
        acc = acc * t + x
    return acc


def _horner_with_derivative(c: Sequence[float], t: float):
    p = 0.0
    dp = 0.0
    for x in reversed(c):
        dp = dp * t + p
        p = p * t + x
    return p, dp


def _eval_error_bound(c: Sequence[float], t: float) -> float:
    # a priori rounding bound of Horner's scheme, with a safety factor
    at = abs(t)
    acc = 0.0
    for x in reversed(c):
        acc = acc * at + abs(x)
    return 64.0 * len(c) * _EPS * acc


def eval_error_bound(p: Polynomial, t: float) -> float:
    """Bound on the rounding error of :func:`evaluate` at ``t``."""
    return _eval_error_bound(p.coeffs, t)


def evaluate(p: Polynomial, t: float) -> float:
    """Evaluate ``p`` at ``t`` by Horner accumulation."""
    return _horner(p.coeffs, t)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def sub(p: Polynomial, q: Polynomial) -> Polynomial:
    return p - q


def neg(p: Polynomial) -> Polynomial:
    return -p


def mul(p: Polynomial, q: Polynomial, max_degree: int = MAX_DEGREE) -> Polynomial:
    """Product of two polynomials.

    Raises:
        DegreeOverflowError: if the product degree exceeds ``max_degree``.
    """
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return Polynomial._raw(())
    if len(a) + len(b) - 2 > max_degree:
        raise DegreeOverflowError(
            f"product degree {len(a) + len(b) - 2} exceeds the maximum working degree {max_degree}"
        )
    out = [0.0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0.0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return Polynomial._raw(_strip(out))


def derivative(p: Polynomial) -> Polynomial:
    c = p.coeffs
    return Polynomial._raw(_strip([k * c[k] for k in range(1, len(c))]))


def compose_linear(p: Polynomial, shift: float, scale: float) -> Polynomial:
    """Return ``q(t) = p(scale * t + shift)``."""
    inner = Polynomial._raw(_strip((float(shift), float(scale))))
    acc = Polynomial._raw(())
    for x in reversed(p.coeffs):
        acc = mul(acc, inner) + x
    return acc


def scale(p: Polynomial, iv) -> float:
    """Magnitude used by the tolerance model: ``max|c_k| * max(1, hi)**deg``."""
    iv = as_interval(iv)
    if p.is_zero:
        return 0.0
    return max(abs(c) for c in p.coeffs) * max(1.0, abs(iv.hi), abs(iv.lo)) ** p.degree


def roots_in(p: Polynomial, iv, tol: float = DEFAULT_TOL) -> list[float]:
    """All distinct real roots of ``p`` in the closed interval ``iv``.

    Roots are returned in increasing order.  Roots closer together than
    ``tol``, or separated only by rounding noise (as happens next to a
    nearly double root), are merged into one, and multiplicities are not
    reported.

    Raises:
        EverywhereZeroError: ``p`` is the zero polynomial.
        NumericalFailureError: refinement did not converge.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.is_zero:
        raise EverywhereZeroError("polynomial vanishes identically; every time is a root")
    iv = as_interval(iv)
    return _cluster(p.coeffs, _roots(p.coeffs, iv.lo, iv.hi, tol), tol)


def _cluster(c: tuple, roots: list[float], tol: float) -> list[float]:
    """Merge roots closer than ``tol``, or separated only by rounding noise.

    Each cluster is represented by its member of smallest ``|p|`` (the
    earliest on ties), which for a tangential zero is the critical point.
    """
    roots.sort()
    out: list[float] = []
    best_val = 0.0
    for r in roots:
        v = abs(_horner(c, r))
        if out:
            prev = out[-1]
            mid = 0.5 * (prev + r)
            if r - prev <= tol or abs(_horner(c, mid)) <= _eval_error_bound(c, mid):
                if v < best_val:
                    out[-1], best_val = r, v
                continue
        out.append(r)
        best_val = v
    return out


def _roots(c: tuple, lo: float, hi: float, tol: float) -> list[float]:
    n = len(c)
    if n <= 1:
        return []
    if n == 2:
        r = -c[0] / c[1]
        if lo - tol <= r <= hi + tol:
            return [min(max(r, lo), hi)]
        return []
    if lo == hi:
        return [lo] if abs(_horner(c, lo)) <= _eval_error_bound(c, lo) else []

    dc = _strip([k * c[k] for k in range(1, n)])
    crit = [x for x in _cluster(dc, _roots(dc, lo, hi, tol), tol) if lo < x < hi]
    knots = [lo] + crit + [hi]
    values = [_horner(c, x) for x in knots]

    found = []
    for x, v in zip(knots, values):
        if v == 0.0 or abs(v) <= _eval_error_bound(c, x):
            found.append(x)
    for k in range(len(knots) - 1):
        fa, fb = values[k], values[k + 1]
        if (fa < 0.0 < fb) or (fb < 0.0 < fa):
            found.append(_refine(c, knots[k], knots[k + 1], fa, 1e-6 * tol))
    return found


def _refine(c: tuple, a: float, b: float, fa: float, floor: float) -> float:
    """Root of a polynomial that is monotone on ``[a, b]`` and changes sign.

    Newton steps are accepted only while they stay inside the bracket and
    shrink it quickly; otherwise the bracket is bisected.  Iteration stops
    at relative machine precision or at the absolute width ``floor``.
    """
    neg_at_a = fa < 0.0
    x = 0.5 * (a + b)
    width = b - a
    for _ in range(_MAX_ITER):
        fx, dfx = _horner_with_derivative(c, x)
        if fx == 0.0:
            return x
        if (fx < 0.0) == neg_at_a:
            a = x
        else:
            b = x
        if b - a <= max(4.0 * _EPS * max(abs(a), abs(b)), floor):
            return 0.5 * (a + b)
        step_ok = False
        if dfx != 0.0:
            xn = x - fx / dfx
            if a < xn < b and abs(xn - x) < 0.5 * width:
                step_ok = True
        width = abs(xn - x) if step_ok else b - a
        x = xn if step_ok else 0.5 * (a + b)
        if step_ok and width <= max(2.0 * _EPS * abs(x), floor):
            return x
    raise NumericalFailureError(f"root refinement did not converge on [{a}, {b}]", interval=(a, b))
