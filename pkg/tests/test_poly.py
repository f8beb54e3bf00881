import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kinetic_geom.errors import DegreeOverflowError, EverywhereZeroError
from kinetic_geom.poly import (Interval, MAX_DEGREE, Polynomial, compose_linear, derivative,
                               evaluate, mul, roots_in, scale)

from conftest import dense_sign_changes, random_poly

coeff = st.floats(-100, 100, allow_nan=False)
polys = st.lists(coeff, min_size=0, max_size=6).map(Polynomial)
times = st.floats(-10, 10, allow_nan=False)


def test_eval_examples():
    assert evaluate(Polynomial([1]), 5) == 1
    assert evaluate(Polynomial([1, -2, 1]), 1) == 0
    # direct monomial sum: 3 * 1.5**2 - 2 * 1.5 + 7
    assert evaluate(Polynomial([7, -2, 3]), 1.5) == pytest.approx(3 * 2.25 - 3 + 7) == 10.75


def test_canonical_form():
    p = Polynomial([1, 2, 0, 0])
    assert p.coeffs == (1.0, 2.0)
    z = Polynomial([0, 0])
    assert z.is_zero and z.coeffs == () and z.degree == 0 and z(3.0) == 0.0


def test_arith_examples():
    p = Polynomial([1, -2, 1])
    assert (p - p).is_zero
    assert derivative(p).coeffs == (-2.0, 2.0)
    assert (Polynomial([0, 1]) * Polynomial([0, 1])).coeffs == (0.0, 0.0, 1.0)
    assert (-p).coeffs == (-1.0, 2.0, -1.0)


def test_degree_limits():
    with pytest.raises(DegreeOverflowError):
        Polynomial([1.0] * (MAX_DEGREE + 2))
    big = Polynomial.monomial(40)
    with pytest.raises(DegreeOverflowError):
        mul(big, big)
    with pytest.raises(DegreeOverflowError):
        mul(Polynomial([0, 1]), Polynomial([0, 0, 1]), max_degree=2)


def test_immutable():
    p = Polynomial([1, 2])
    with pytest.raises(AttributeError):
        p.coeffs = (3.0,)


def test_compose_linear_matches_pointwise():
    p = Polynomial([1, -3, 0.5, 2])
    q = compose_linear(p, 0.7, -1.3)
    for t in np.linspace(-2, 2, 17):
        assert q(t) == pytest.approx(p(-1.3 * t + 0.7), rel=1e-12, abs=1e-12)


@given(polys, polys, st.lists(times, min_size=1, max_size=5))
def test_ring_ops_agree_with_eval(p, q, ts):
    for t in ts:
        for op, expect in ((p + q, p(t) + q(t)), (p - q, p(t) - q(t)), (p * q, p(t) * q(t))):
            mag = 1 + sum(abs(c) for c in p.coeffs + q.coeffs) ** 2 * max(1, abs(t)) ** 12
            assert abs(op(t) - expect) <= 1e-9 * mag


def test_ring_ops_random_points():
    rng = random.Random(1)
    for _ in range(50):
        p, q = random_poly(rng, rng.randint(0, 4)), random_poly(rng, rng.randint(0, 4))
        for _ in range(100):
            t = rng.uniform(-3, 3)
            mag = 1 + max(abs(p(t)), abs(q(t)), abs(p(t) * q(t)))
            assert abs((p + q)(t) - (p(t) + q(t))) <= 1e-9 * mag
            assert abs((p - q)(t) - (p(t) - q(t))) <= 1e-9 * mag
            assert abs((p * q)(t) - p(t) * q(t)) <= 1e-9 * mag


def test_roots_examples():
    assert roots_in(Polynomial([1, -2, 1]), (0, 2)) == pytest.approx([1.0], abs=1e-9)
    assert roots_in(Polynomial([5]), (0, 10)) == []
    cubic = Polynomial([-6, 11, -6, 1])
    rs = roots_in(cubic, Interval(0, 4))
    # oracle: eval at each root ~ 0, and dense sampling sees exactly three sign changes
    assert len(rs) == 3
    for r in rs:
        assert abs(cubic(r)) <= 1e-9
    brackets = dense_sign_changes(cubic, 0, 4)
    assert len(brackets) == 3
    for r, (a, b) in zip(rs, brackets):
        assert a - 1e-9 <= r <= b + 1e-9


def test_roots_zero_polynomial_is_an_error():
    with pytest.raises(EverywhereZeroError):
        roots_in(Polynomial(), (0, 1))


def test_roots_tangential_and_high_multiplicity():
    assert roots_in(Polynomial([1, -2, 1]), (0, 2)) == [1.0]
    quartic = Polynomial([-1, 1]) * Polynomial([-1, 1]) * Polynomial([-1, 1]) * Polynomial([-1, 1])
    rs = roots_in(quartic, (0, 3))
    assert len(rs) == 1 and abs(rs[0] - 1) < 1e-3 and abs(quartic(rs[0])) < 1e-12
    # double root plus simple root
    p = Polynomial([-2, 1]) * Polynomial([-2, 1]) * Polynomial([-0.5, 1])
    assert roots_in(p, (0, 3)) == pytest.approx([0.5, 2.0], abs=1e-8)


def test_roots_at_endpoints_and_merging():
    p = Polynomial([0, 1]) * Polynomial([-1, 1])  # t(t-1)
    assert roots_in(p, (0, 1)) == pytest.approx([0.0, 1.0], abs=1e-12)
    close = Polynomial([-0.5, 1]) * Polynomial([-(0.5 + 1e-12), 1])
    assert len(roots_in(close, (0, 1), tol=1e-9)) == 1
    assert roots_in(Polynomial([-2, 1]), (0, 1)) == []
    assert roots_in(Polynomial([-1, 1]), (1, 1)) == [1.0]


@pytest.mark.parametrize("seed", range(5))
def test_roots_against_numpy_and_sign_sampling(seed):
    rng = random.Random(seed)
    for _ in range(40):
        deg = rng.randint(1, 6)
        hi = rng.uniform(0.5, 5)
        p = random_poly(rng, deg, 0, hi)
        tol = 1e-9
        rs = roots_in(p, (0, hi), tol)
        assert rs == sorted(rs)
        assert all(b - a > tol for a, b in zip(rs, rs[1:]))
        sc = scale(p, (0, hi))
        for r in rs:
            assert 0 <= r <= hi
            assert abs(p(r)) <= tol * sc
        # exhaustive: every sampled sign change lies near a returned root
        for a, b in dense_sign_changes(p, 0, hi, 1000):
            assert any(a - tol <= r <= b + tol for r in rs)
        # between consecutive roots the sampled sign is constant
        cuts = [0.0] + rs + [hi]
        for a, b in zip(cuts, cuts[1:]):
            ts = np.linspace(a, b, 1002)[1:-1]
            vals = np.array([p(float(t)) for t in ts])
            big = np.abs(vals) > 1e-9 * sc
            assert len(set(np.sign(vals[big]))) <= 1
        # independent oracle: simple real roots from the companion matrix
        ref = [z.real for z in np.roots(list(reversed(p.coeffs)))
               if abs(z.imag) < 1e-12 and 1e-6 < z.real < hi - 1e-6]
        for z in ref:
            if abs(np.polyval(list(reversed(derivative(p).coeffs)), z)) > 1e-3:
                assert min(abs(z - r) for r in rs) < 1e-6


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=4),
       st.floats(0.1, 5))
def test_roots_of_product_of_linear_factors(zs, hi):
    p = Polynomial([1.0])
    for z in zs:
        p = p * Polynomial([-z, 1.0])
    rs = roots_in(p, (0, hi))
    sc = scale(p, (0, hi))
    for r in rs:
        assert abs(p(r)) <= 1e-9 * sc
    # clustered roots are ill-conditioned; check location only for isolated ones
    isolated = [z for z in zs if 1e-6 < z < hi - 1e-6
                and all(abs(z - w) >= 0.05 for w in zs if w != z)
                and zs.count(z) == 1]
    for z in isolated:
        assert min(abs(z - r) for r in rs) < 1e-6
