import math

import numpy as np
import pytest

from funtervals import corpus
from funtervals.errors import DegenerateError, DomainError
from funtervals.expr import CenteredForm, eval_real, parse
from funtervals.interval import EMPTY, Interval
from funtervals.solvend import (
    Box,
    ExclusionSlab,
    NDConfig,
    bisect_box,
    carve_box,
    exclude_interval_1d,
    exclusion_from_record,
    minimize_nd,
    monotonicity_contract,
    split_inequality,
)


def test_exclude_interval_examples():
    assert exclude_interval_1d(Interval(-1, 2), -1) == Interval(-0.5, 1)
    assert exclude_interval_1d(Interval(0, 1), -1) == Interval(-1, math.inf)
    assert exclude_interval_1d(Interval(-1, 1), -2) == Interval(-2, 2)
    with pytest.raises(DomainError):
        exclude_interval_1d(Interval(-1, 1), 0.0)
    with pytest.raises(DomainError):
        exclude_interval_1d(Interval(1, 2), -1)


def _random_grad(rng, contain_zero):
    if contain_zero:
        return Interval(-rng.exponential(1.0), rng.exponential(1.0))
    lo, hi = sorted(rng.uniform(-3, 3, 2))
    return Interval(lo, hi)


@pytest.mark.parametrize("contain_zero", [True, False])
def test_exclusion_safety_randomized(contain_zero):
    rng = np.random.default_rng(17 + contain_zero)
    for _ in range(100):
        n = int(rng.integers(1, 4))
        grads = [_random_grad(rng, contain_zero) for _ in range(n)]
        mids = rng.uniform(-1, 1, n)
        box = Box(tuple(Interval(m - 2, m + 2) for m in mids))
        b = -rng.exponential(1.0)
        slab = split_inequality(grads, mids, b, box=box)
        if slab.is_empty:
            continue
        pts = np.column_stack([rng.uniform(c.lo, c.hi, 200) for c in slab.coords])
        G = np.column_stack([rng.uniform(g.lo, g.hi, 1000) for g in grads])
        G = np.vstack([G, [[g.lo for g in grads]], [[g.hi for g in grads]]])
        vals = G @ (pts - mids).T
        assert np.all(vals > b - 1e-12)


def test_split_examples():
    one = split_inequality([Interval(-1, 2)], [0.0], -1)
    assert one.coords == (exclude_interval_1d(Interval(-1, 2), -1),)
    two = split_inequality([Interval(-1, 2)] * 2, [3.0, -1.0], -1)
    assert two.coords == (Interval(2.75, 3.5), Interval(-1.25, -0.5))
    g = split_inequality([Interval(-1, 1)] * 2, [0.0, 0.0], -1)
    assert g.coords[0] == Interval(-0.5, 0.5)


def test_split_clamps_and_skips_flat_coordinates():
    box = Box((Interval(0, 1), Interval(2, 2)))
    s = split_inequality([Interval(-1, 1), Interval(0, 0)], box.mid, -10, box=box)
    assert s.coords[0] == Interval(0, 1)
    assert s.coords[1] == Interval(2, 2)


def test_exclusion_from_record_examples():
    f = parse("x1^2 + x2^2", 2)
    assert exclusion_from_record(f, Box.cube(-1, 1, 2), (0.5, 0.5)) is None
    assert exclusion_from_record(parse("x^2"), Box.cube(-2, 2, 1), (0.0,)) is None
    box = Box.cube(1, 3, 2)
    slab = exclusion_from_record(f, box, (1.0, 1.0))
    assert slab is not None and not slab.is_empty
    g = np.linspace(0, 1, 100)
    xs = slab.coords[0].lo + g * slab.coords[0].wid
    ys = slab.coords[1].lo + g * slab.coords[1].wid
    X, Y = np.meshgrid(xs, ys)
    assert np.all(X**2 + Y**2 >= 2.0)


def test_exclusion_from_record_on_corpus():
    rng = np.random.default_rng(5)
    for name in ("table1_f2", "rastrigin_n2", "rosenbrock_n2"):
        p = corpus.load(name)
        e = p.expr
        for _ in range(20):
            c = rng.uniform(-3, 3, 2)
            box = Box(tuple(Interval(v - 0.5, v + 0.5) for v in c))
            rec = tuple(rng.uniform([b.lo for b in box], [b.hi for b in box]))
            slab = exclusion_from_record(e, box, rec)
            if slab is None or slab.is_empty:
                continue
            f_rec = eval_real(e, rec)
            pts = np.column_stack([rng.uniform(s.lo, s.hi, 500) for s in slab.coords])
            assert all(eval_real(e, q) >= f_rec - 1e-12 * (1 + abs(f_rec)) for q in pts)


def test_carve_examples():
    box = Box.cube(-2, 2, 1)
    pieces = carve_box(box, ExclusionSlab((Interval(-0.5, 1),)))
    assert [p.coords for p in pieces] == [(Interval(-2, -0.5),), (Interval(1, 2),)]
    assert carve_box(box, ExclusionSlab((EMPTY,))) == [box]
    sq = Box.cube(0, 4, 2)
    pieces = carve_box(sq, ExclusionSlab((Interval(1, 2), Interval(1, 2))))
    assert len(pieces) == 4
    assert sum(p.volume for p in pieces) == pytest.approx(15.0)
    assert carve_box(sq, ExclusionSlab((Interval(0, 4), Interval(0, 4)))) == []


def test_carve_completeness_and_volume():
    rng = np.random.default_rng(6)
    for _ in range(200):
        n = int(rng.integers(1, 4))
        box = Box(tuple(Interval(*sorted(rng.uniform(-3, 3, 2))) for _ in range(n)))
        slab = ExclusionSlab(tuple(
            Interval(*sorted(rng.uniform(c.lo, c.hi, 2))) if rng.random() < 0.9 else c for c in box
        ))
        pieces = carve_box(box, slab)
        assert len(pieces) <= 2 * n
        assert sum(p.volume for p in pieces) + slab.volume == pytest.approx(box.volume, rel=1e-9)
        pts = rng.uniform([c.lo for c in box], [c.hi for c in box], (500, n))
        for q in pts:
            in_slab = all(s.lo < v < s.hi for s, v in zip(slab.coords, q))
            assert in_slab or any(q in p for p in pieces)


def test_monotonicity_examples():
    box = Box((Interval(0, 1), Interval(-1, 1)))
    pinned = monotonicity_contract(parse("x1 + x2^2", 2), box)
    assert pinned.coords == (Interval(0, 0), Interval(-1, 1))
    b1 = Box.cube(-1, 1, 1)
    assert monotonicity_contract(parse("x^2"), b1) == b1
    assert monotonicity_contract(parse("-x"), Box.cube(0, 1, 1)).coords == (Interval(1, 1),)


def test_monotonicity_preserves_minimum():
    e = parse("x1^2 - 3*x2 + x1*x2", 2)
    box = Box((Interval(1, 2), Interval(0, 1)))
    pinned = monotonicity_contract(e, box)
    g = np.linspace(0, 1, 201)
    full = min(eval_real(e, (1 + a, b)) for a in g for b in g)
    sub = min(
        eval_real(e, (pinned[0].lo + a * pinned[0].wid, pinned[1].lo + b * pinned[1].wid)) for a in g for b in g
    )
    assert sub == pytest.approx(full, abs=1e-12)


def test_bisect_box_examples():
    a, b = bisect_box(Box((Interval(0, 4), Interval(0, 2))))
    assert a.coords[0] == Interval(0, 2) and b.coords[0] == Interval(2, 4)
    a, _ = bisect_box(Box.cube(0, 2, 2))
    assert a.coords == (Interval(0, 1), Interval(0, 2))
    a, _ = bisect_box(Box((Interval(1, 1), Interval(0, 2))))
    assert a.coords == (Interval(1, 1), Interval(0, 1))
    with pytest.raises(DegenerateError):
        bisect_box(Box((Interval(1, 1), Interval(2, 2))))


def test_box_helpers():
    box = Box.from_bounds([(0, 2), (-1, 1)])
    assert box.n == 2 and box.mid == (1.0, 0.0) and box.widths == (2.0, 2.0)
    assert box.volume == 4.0 and (0.5, 0.5) in box and (3, 0) not in box
    with pytest.raises(DomainError):
        Box(())


@pytest.mark.parametrize("modified", [False, True])
def test_rastrigin_2d(modified):
    p = corpus.load("rastrigin_n2")
    r = minimize_nd(p.expr, p.domain, NDConfig(epsilon=p.epsilon), modified)
    assert r.stop_reason == "converged"
    assert r.min_enclosure.lo <= 0.0 <= r.min_enclosure.hi + 1e-12
    assert r.min_enclosure.hi <= 1e-6


@pytest.mark.parametrize("modified", [False, True])
def test_rosenbrock_2d(modified):
    p = corpus.load("rosenbrock_n2")
    r = minimize_nd(p.expr, p.domain, NDConfig(epsilon=p.epsilon), modified)
    assert r.stop_reason == "converged"
    assert r.min_enclosure.lo <= 0.0 <= r.min_enclosure.hi
    assert all(abs(v - 1) < 1e-2 for v in r.record_point)


def test_table1_f2_modes_agree():
    p = corpus.load("table1_f2")
    a = minimize_nd(p.expr, p.domain, NDConfig(epsilon=p.epsilon), False)
    b = minimize_nd(p.expr, p.domain, NDConfig(epsilon=p.epsilon), True)
    gap = max(a.min_enclosure.lo, b.min_enclosure.lo) - min(a.min_enclosure.hi, b.min_enclosure.hi)
    assert gap <= 2 * p.epsilon
    assert b.iterations <= a.iterations


def test_modified_mode_is_deterministic():
    p = corpus.load("rastrigin_n2")
    runs = [minimize_nd(p.expr, p.domain, NDConfig(epsilon=1e-4, seed=7, timing=False), True) for _ in range(2)]
    assert runs[0].trace == runs[1].trace
    assert runs[0].record_point == runs[1].record_point
    assert runs[0].boxes == runs[1].boxes


def test_nd_on_univariate_matches_1d():
    e = parse("x^6 + x^5 - 10*x^4 - 8*x^3 + 15*x^2 + 11")
    want = corpus.load("sextic").meta["expected"]["minimum"]
    for modified in (False, True):
        r = minimize_nd(e, [Interval(-7.67, 7.67)], NDConfig(epsilon=1e-8), modified)
        assert r.min_enclosure.lo <= want <= r.min_enclosure.hi + 1e-9


def test_degenerate_box_start():
    r = minimize_nd(parse("x1 + x2", 2), Box((Interval(1, 1), Interval(2, 2))))
    assert r.min_enclosure == Interval(3, 3)


def test_config_validation():
    with pytest.raises(DomainError):
        NDConfig(epsilon=-1)
    with pytest.raises(DomainError):
        NDConfig(samples=-1)
    with pytest.raises(DomainError):
        minimize_nd(parse("x"), [Interval(-math.inf, 0)])


def test_centered_gradients_enclose_samples():
    e = corpus.load("table1_f1").expr
    cf = CenteredForm(e, 2)
    rng = np.random.default_rng(0)
    box = Box((Interval(-2, 1), Interval(0.5, 3)))
    G = cf.gradient_enclosure(box.coords)
    h = 1e-6
    for q in rng.uniform([-2, 0.5], [1, 3], (200, 2)):
        for k in range(2):
            dq = np.zeros(2)
            dq[k] = h
            fd = (eval_real(e, q + dq) - eval_real(e, q - dq)) / (2 * h)
            assert G[k].lo - 1e-4 <= fd <= G[k].hi + 1e-4
