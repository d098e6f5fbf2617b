import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from funtervals import interval as iv
from funtervals.errors import DomainError
from funtervals.interval import EMPTY, Interval

SLACK = 8 * 2.220446049250313e-16


def test_examples():
    assert iv.add(Interval(1, 2), Interval(3, 4)) == Interval(4, 6)
    assert iv.mul(Interval(-1, 2), Interval(-1, 2)) == Interval(-2, 4)
    assert iv.neg(Interval(1, 2)) == Interval(-2, -1)
    assert iv.wid(Interval(-2, 2)) == 4
    assert iv.mag(Interval(-3, 1)) == 3
    assert iv.mid(Interval(1, 2)) == 1.5
    assert iv.rad(Interval(1, 2)) == 0.5
    assert iv.intersect(Interval(-1, 0.5), Interval(0, 1)) == Interval(0, 0.5)
    assert iv.intersect(Interval(-1, 0), Interval(0.5, 1)) is EMPTY
    assert iv.hull(Interval(-1, 0), Interval(2, 3)) == Interval(-1, 3)


def test_mul_matches_brute_force():
    rng = random.Random(1)
    pairs = [(rng.uniform(-1, 2), rng.uniform(-1, 2)) for _ in range(10**5)]
    prods = [p * q for p, q in pairs]
    r = iv.mul(Interval(-1, 2), Interval(-1, 2))
    assert r.lo <= min(prods) and max(prods) <= r.hi


def test_operators_and_scalars():
    x = Interval(1, 2)
    assert x + 1 == Interval(2, 3)
    assert 1 - x == Interval(-1, 0)
    assert 2 * x == Interval(2, 4)
    assert x / 2 == Interval(0.5, 1)
    assert 1 / x == Interval(0.5, 1)
    assert -x == Interval(-2, -1)
    assert 1.5 in x and 3 not in x
    assert Interval(1.2, 1.3) in x


def test_empty_propagates():
    x = Interval(0, 1)
    for op in (iv.add, iv.sub, iv.mul, iv.div, iv.intersect):
        assert op(EMPTY, x) is EMPTY
        assert op(x, EMPTY) is EMPTY
    assert iv.neg(EMPTY) is EMPTY
    assert iv.hull(EMPTY, x) == x
    assert iv.sin(EMPTY) is EMPTY and iv.exp(EMPTY) is EMPTY
    assert EMPTY + x is EMPTY and not EMPTY
    assert str(EMPTY) == "∅"


@pytest.mark.parametrize("f", [iv.mid, iv.rad, iv.wid, iv.mag])
def test_accessors_reject_empty(f):
    with pytest.raises(DomainError):
        f(EMPTY)


def test_invalid_construction():
    with pytest.raises(DomainError):
        Interval(2, 1)
    with pytest.raises(DomainError):
        Interval(math.nan, 1)


def test_div_by_zero_containing():
    with pytest.raises(DomainError):
        iv.div(Interval(1, 2), Interval(-1, 1))
    with pytest.raises(DomainError):
        iv.div(Interval(1, 2), Interval(0, 1))


def test_rendering():
    assert str(Interval(0.1, 2)) == "[0.10000000000000001, 2]"


def test_pow_int():
    assert iv.pow_int(Interval(-2, 1), 2) == Interval(0, 4)
    assert iv.pow_int(Interval(-2, -1), 2) == Interval(1, 4)
    assert iv.pow_int(Interval(-2, 1), 3) == Interval(-8, 1)
    assert iv.pow_int(Interval(-2, 1), 0) == Interval(1, 1)
    assert iv.ipow(3.0, 5) == 243.0


def test_sin_cos_exp():
    s = iv.sin(Interval(0, math.pi))
    assert s.lo == 0.0 and s.hi == 1.0
    assert iv.sin(Interval(-10, 10)) == Interval(-1, 1)
    c = iv.cos(Interval(0.5, 3.5))
    assert c.lo == -1.0 and c.hi == pytest.approx(math.cos(0.5))
    assert iv.cos(Interval(-0.1, 0.1)).hi == 1.0
    assert iv.exp(Interval(0, 1)) == Interval(1, math.e)
    assert iv.exp(Interval(0, 1000)).hi == math.inf


finite = st.floats(-1e3, 1e3, allow_nan=False)


@st.composite
def intervals(draw):
    a, b = draw(finite), draw(finite)
    return Interval(min(a, b), max(a, b))


@st.composite
def nested(draw):
    outer = draw(intervals())
    a = draw(st.floats(0, 1))
    b = draw(st.floats(0, 1))
    lo, hi = sorted(min(outer.hi, max(outer.lo, outer.lo + f * outer.wid)) for f in (a, b))
    return Interval(lo, hi), outer


def _ops(nonzero):
    ops = [iv.add, iv.sub, iv.mul]
    if nonzero:
        ops.append(iv.div)
    return ops


@settings(max_examples=300, deadline=None)
@given(nested(), nested())
def test_inclusion_monotonicity(xx, yy):
    (x, X), (y, Y) = xx, yy
    for op in _ops(Y.lo > 1e-3 or Y.hi < -1e-3):
        small, big = op(x, y), op(X, Y)
        tol = SLACK * (1 + big.mag)
        assert big.lo - tol <= small.lo and small.hi <= big.hi + tol


def test_range_exactness_on_random_pairs():
    rng = random.Random(7)
    for _ in range(40):
        x = Interval(*sorted((rng.uniform(-5, 5), rng.uniform(-5, 5))))
        y = Interval(*sorted((rng.uniform(-5, 5), rng.uniform(-5, 5))))
        ops = {"add": lambda p, q: p + q, "sub": lambda p, q: p - q, "mul": lambda p, q: p * q}
        if not (y.lo <= 0 <= y.hi):
            ops["div"] = lambda p, q: p / q
        for name, f in ops.items():
            r = getattr(iv, name)(x, y)
            ps = [x.lo, x.hi] + [rng.uniform(x.lo, x.hi) for _ in range(10**4)]
            qs = [y.lo, y.hi] + [rng.uniform(y.lo, y.hi) for _ in range(10**4)]
            vals = [f(p, q) for p in (x.lo, x.hi) for q in (y.lo, y.hi)]
            vals += [f(p, q) for p, q in zip(ps, qs)]
            tol = 1e-12 * (1 + r.mag)
            assert abs(min(vals) - r.lo) <= tol and abs(max(vals) - r.hi) <= tol
            assert all(r.lo - tol <= v <= r.hi + tol for v in vals)


@settings(max_examples=200, deadline=None)
@given(intervals())
def test_trig_encloses_samples(x):
    if x.wid > 50:
        return
    for k in range(101):
        p = x.lo + x.wid * k / 100
        assert iv.sin(x).lo - 1e-15 <= math.sin(p) <= iv.sin(x).hi + 1e-15
        assert iv.cos(x).lo - 1e-15 <= math.cos(p) <= iv.cos(x).hi + 1e-15
