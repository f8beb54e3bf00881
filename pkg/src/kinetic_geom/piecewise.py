"""Continuous piecewise-polynomial functions of time.

A :class:`PiecewiseFunction` stores ``k + 1`` increasing breakpoints and
``k`` polynomials; piece ``i`` is the closed interval
``[breaks[i], breaks[i + 1]]``.  Neighbouring pieces share their endpoint and
always carry different polynomials, so the interior breakpoints are exactly
the switchpoints and a function with ``k - 1`` switchpoints has ``k`` pieces.
"""
from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ContractError, EverywhereZeroError, PreconditionError
from .poly import DEFAULT_TOL, Interval, Polynomial, as_interval, eval_error_bound, roots_in

#: Absolute coefficient tolerance for deciding two adjacent pieces are equal.
COMPACTION_ATOL = 1e-12


class Sign(enum.IntEnum):
    """Which of ``p`` / ``-p`` equals ``|p|`` on an interval."""

    MINUS = -1
    PLUS = 1


class Op(enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"


@dataclass(frozen=True)
class Piece:
    func: Polynomial
    interval: Interval


class PiecewiseFunction:
    """Piecewise polynomial on a closed horizon, compacted on construction.

    Args:
        breaks: increasing breakpoints, first and last being the horizon.
            A single breakpoint is allowed for a degenerate horizon.
        polys: one polynomial per piece (``len(breaks) - 1`` of them, or
            one for a degenerate horizon).
    """

    __slots__ = ("breaks", "polys")

    def __init__(self, breaks: Sequence[float], polys: Sequence[Polynomial]):
        breaks = [float(b) for b in breaks]
        polys = list(polys)
        if len(breaks) == 1:
            breaks = [breaks[0], breaks[0]]
        if len(polys) != len(breaks) - 1 or not polys:
            raise ContractError(
                f"{len(breaks)} breakpoints need {len(breaks) - 1} polynomials, got {len(polys)}"
            )
        for a, b in zip(breaks, breaks[1:]):
            if not a <= b:
                raise ContractError(f"breakpoints not increasing: {breaks}")
        if breaks[0] < breaks[-1]:
            for a, b in zip(breaks, breaks[1:]):
                if a == b:
                    raise ContractError(f"zero-width piece at {a}")
        b2, p2 = _compact(breaks, polys)
        object.__setattr__(self, "breaks", b2)
        object.__setattr__(self, "polys", p2)

    @classmethod
    def _raw(cls, breaks: tuple, polys: tuple) -> "PiecewiseFunction":
        f = object.__new__(cls)
        object.__setattr__(f, "breaks", breaks)
        object.__setattr__(f, "polys", polys)
        return f

    @classmethod
    def from_pieces(cls, pieces: Sequence[Piece]) -> "PiecewiseFunction":
        if not pieces:
            raise ContractError("at least one piece is required")
        for left, right in zip(pieces, pieces[1:]):
            if left.interval.hi != right.interval.lo:
                raise ContractError(
                    f"pieces do not abut: {left.interval} then {right.interval}"
                )
        breaks = [pieces[0].interval.lo] + [pc.interval.hi for pc in pieces]
        return cls(breaks, [pc.func for pc in pieces])

    @classmethod
    def from_polynomial(cls, p: Polynomial, horizon) -> "PiecewiseFunction":
        h = as_interval(horizon)
        return cls._raw((h.lo, h.hi), (p,))

    @classmethod
    def constant(cls, value: float, horizon) -> "PiecewiseFunction":
        return cls.from_polynomial(Polynomial.constant(value), horizon)

    def __setattr__(self, name, value):
        raise AttributeError("PiecewiseFunction is immutable")

    @property
    def horizon(self) -> Interval:
        return Interval(self.breaks[0], self.breaks[-1])

    @property
    def pieces(self) -> tuple[Piece, ...]:
        return tuple(
            Piece(p, Interval(a, b)) for p, a, b in zip(self.polys, self.breaks, self.breaks[1:])
        )

    @property
    def switchpoints(self) -> tuple[float, ...]:
        return self.breaks[1:-1]

    @property
    def num_pieces(self) -> int:
        return len(self.polys)

    @property
    def num_switchpoints(self) -> int:
        return len(self.polys) - 1

    def piece_index(self, t: float) -> int:
        """Index of the piece containing ``t`` (the left one at a switchpoint)."""
        k = bisect.bisect_left(self.breaks, t, 1, len(self.breaks) - 1) - 1
        return max(k, 0)

    def __call__(self, t: float) -> float:
        return self.polys[self.piece_index(t)](t)

    def __neg__(self) -> "PiecewiseFunction":
        return PiecewiseFunction._raw(self.breaks, tuple(-p for p in self.polys))

    def __add__(self, other):
        return combine(self, _lift(other, self), Op.ADD)

    def __sub__(self, other):
        return combine(self, _lift(other, self), Op.SUB)

    def __mul__(self, other):
        return combine(self, _lift(other, self), Op.MUL)

    def __repr__(self):
        inner = ", ".join(f"({list(p.coeffs)}, [{a:g}, {b:g}])" for p, a, b in
                          zip(self.polys, self.breaks, self.breaks[1:]))
        return f"PiecewiseFunction({inner})"

    def check_invariants(self, tol: float = 1e-7) -> None:
        """Assert coverage, ordering, maximality and continuity.

        Continuity is checked to ``tol`` relative to the values, plus the
        rounding error of evaluating both pieces at the switchpoint.

        Raises:
            ContractError: naming the first violated invariant.
        """
        b, p = self.breaks, self.polys
        if len(b) != len(p) + 1:
            raise ContractError("breakpoint/piece count mismatch")
        if any(x > y for x, y in zip(b, b[1:])):
            raise ContractError("pieces out of order")
        for k in range(len(p) - 1):
            if p[k].close_to(p[k + 1], COMPACTION_ATOL):
                raise ContractError(f"adjacent pieces {k}, {k + 1} share a polynomial")
            tau = b[k + 1]
            left, right = p[k](tau), p[k + 1](tau)
            noise = eval_error_bound(p[k], tau) + eval_error_bound(p[k + 1], tau)
            if abs(left - right) > tol * max(1.0, abs(left), abs(right)) + noise:
                raise ContractError(f"discontinuity {left} vs {right} at switchpoint {tau}")
        if len(self.switchpoints) != self.num_pieces - 1:
            raise ContractError("switchpoint count is not piece count - 1")


def _lift(x, like: PiecewiseFunction) -> PiecewiseFunction:
    if isinstance(x, PiecewiseFunction):
        return x
    if isinstance(x, Polynomial):
        return PiecewiseFunction.from_polynomial(x, like.horizon)
    return PiecewiseFunction.constant(float(x), like.horizon)


def _compact(breaks, polys) -> tuple[tuple, tuple]:
    out_b = [breaks[0]]
    out_p = [polys[0]]
    for k in range(1, len(polys)):
        if polys[k].close_to(out_p[-1], COMPACTION_ATOL):
            continue
        out_b.append(breaks[k])
        out_p.append(polys[k])
    out_b.append(breaks[-1])
    return tuple(out_b), tuple(out_p)


def piece_sign_on(p: Polynomial, iv, tol: float = DEFAULT_TOL) -> Sign:
    """Sign of ``p`` on an interval free of interior zeros, read at the midpoint.

    Raises:
        PreconditionError: the midpoint value is within ``tol`` of zero.
    """
    iv = as_interval(iv)
    v = p(iv.midpoint)
    if abs(v) <= tol:
        raise PreconditionError(f"{p!r} is ~0 at the midpoint of [{iv.lo}, {iv.hi}]")
    return Sign.PLUS if v > 0 else Sign.MINUS


def _gap_sign(p: Polynomial, a: float, b: float) -> Sign:
    # lenient variant used internally: a tiny p may take either sign
    v = p(0.5 * (a + b))
    if v == 0.0:
        v = max((p(a + f * (b - a)) for f in (0.25, 0.75)), key=abs)
    return Sign.MINUS if v < 0 else Sign.PLUS


def abs_pieces(p: Polynomial, horizon, tol: float = DEFAULT_TOL) -> PiecewiseFunction:
    """Description of ``|p|`` by pieces taken from ``{p, -p}``.

    Zeros where ``p`` does not change sign leave no switchpoint behind.
    """
    h = as_interval(horizon)
    if p.is_constant:
        return PiecewiseFunction._raw((h.lo, h.hi), (p if p(0.0) >= 0 else -p,))
    if h.lo == h.hi:
        return PiecewiseFunction._raw((h.lo, h.hi), (p if p(h.lo) >= 0 else -p,))
    cuts = [h.lo]
    for r in roots_in(p, h, tol):
        if r - cuts[-1] > tol and h.hi - r > tol:
            cuts.append(r)
    cuts.append(h.hi)

    breaks = [h.lo]
    polys: list[Polynomial] = []
    prev: Optional[Sign] = None
    neg = None
    for a, b in zip(cuts, cuts[1:]):
        s = _gap_sign(p, a, b)
        if s is prev:
            breaks[-1] = b
            continue
        if s is Sign.PLUS:
            polys.append(p)
        else:
            if neg is None:
                neg = -p
            polys.append(neg)
        breaks.append(b)
        prev = s
    return PiecewiseFunction._raw(tuple(breaks), tuple(polys))


def abs_of(f: PiecewiseFunction, tol: float = DEFAULT_TOL) -> PiecewiseFunction:
    """``|F|`` for a piecewise function, applying :func:`abs_pieces` per piece."""
    breaks = [f.breaks[0]]
    polys: list[Polynomial] = []
    for p, a, b in zip(f.polys, f.breaks, f.breaks[1:]):
        sub = abs_pieces(p, (a, b), tol)
        breaks.extend(sub.breaks[1:])
        polys.extend(sub.polys)
    if f.breaks[0] == f.breaks[-1]:
        breaks = [f.breaks[0], f.breaks[0]]
        polys = polys[:1]
    return PiecewiseFunction(breaks, polys)


def _apply(op: Op, p: Polynomial, q: Polynomial) -> Polynomial:
    if op is Op.ADD:
        return p + q
    if op is Op.SUB:
        return p - q
    return p * q


def combine(f: PiecewiseFunction, g: PiecewiseFunction, op: Op,
            tol: float = DEFAULT_TOL) -> PiecewiseFunction:
    """Piecewise ``F + G``, ``F - G`` or ``F * G`` on their common horizon.

    The two partitions are overlaid; breakpoints of ``F`` and ``G`` closer
    than ``tol`` are treated as one (the ``F`` breakpoint is kept).  Every
    switchpoint of the result is a switchpoint of ``F`` or of ``G``.
    """
    fb, gb = f.breaks, g.breaks
    if fb[0] != gb[0] or fb[-1] != gb[-1]:
        raise ContractError(
            f"horizon mismatch: [{fb[0]}, {fb[-1]}] vs [{gb[0]}, {gb[-1]}]"
        )
    fp, gp = f.polys, g.polys
    if len(fp) == 1 and len(gp) == 1:
        return PiecewiseFunction._raw(fb, (_apply(op, fp[0], gp[0]),))

    breaks = [fb[0]]
    polys = []
    i = j = 0
    nf, ng = len(fp), len(gp)
    while i < nf and j < ng:
        polys.append(_apply(op, fp[i], gp[j]))
        ef, eg = fb[i + 1], gb[j + 1]
        if abs(ef - eg) <= tol or (i == nf - 1 and j == ng - 1):
            breaks.append(ef)
            i += 1
            j += 1
        elif ef < eg:
            breaks.append(ef)
            i += 1
        else:
            breaks.append(eg)
            j += 1
    # a break merged at the end may leave the other sequence one short
    breaks[-1] = fb[-1]
    b2, p2 = _compact(breaks, polys)
    return PiecewiseFunction._raw(b2, p2)


def combine3(f: PiecewiseFunction, g: PiecewiseFunction, h: PiecewiseFunction,
             signs: Sequence[int] = (1, 1, 1), tol: float = DEFAULT_TOL) -> PiecewiseFunction:
    """``sf*F + sg*G + sh*H`` for signs in ``{+1, -1}``, as two combinations."""
    sf, sg, sh = signs
    if any(s not in (1, -1) for s in signs):
        raise ValueError(f"signs must be +1 or -1, got {signs}")
    first = combine(f, g, Op.ADD if sg == sf else Op.SUB, tol)
    if sf < 0:
        first = -first
    return combine(first, h, Op.ADD if sh > 0 else Op.SUB, tol)


def extrema_on(f: PiecewiseFunction, tol: float = DEFAULT_TOL):
    """Global ``((t_min, min), (t_max, max))`` of ``F`` over its horizon.

    Candidates are piece endpoints and the critical points inside each
    piece.  Ties go to the smallest time.
    """
    best_lo = best_hi = None
    for p, a, b in zip(f.polys, f.breaks, f.breaks[1:]):
        cands = [a]
        dp = p.derivative()
        if not dp.is_zero and a < b:
            cands.extend(roots_in(dp, (a, b), tol))
        cands.append(b)
        for t in cands:
            v = p(t)
            slack = 1e-12 * (1.0 + abs(v))
            if best_lo is None or v < best_lo[1] - slack:
                best_lo = (t, v)
            if best_hi is None or v > best_hi[1] + slack:
                best_hi = (t, v)
    return best_lo, best_hi


def first_time_leq(f: PiecewiseFunction, c: float, tol: float = DEFAULT_TOL) -> Optional[float]:
    """Smallest ``t`` on the horizon with ``F(t) <= c``, or ``None``."""
    return _first_crossing(f, c, tol, below=True)


def first_time_geq(f: PiecewiseFunction, c: float, tol: float = DEFAULT_TOL) -> Optional[float]:
    """Smallest ``t`` on the horizon with ``F(t) >= c``, or ``None``."""
    return _first_crossing(f, c, tol, below=False)


def _first_crossing(f, c, tol, below):
    lo = f.breaks[0]
    v0 = f.polys[0](lo)
    if (v0 <= c) if below else (v0 >= c):
        return lo
    # F starts strictly on the wrong side; by continuity the first root of
    # F - c is the first time the condition holds
    for p, a, b in zip(f.polys, f.breaks, f.breaks[1:]):
        q = p - c
        try:
            rs = roots_in(q, (a, b), tol)
        except EverywhereZeroError:
            return a
        if rs:
            return rs[0]
    return None
