import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from funtervals import corpus
from funtervals.errors import DomainError, EnclosureError, ParseError
from funtervals.expr import (
    Add,
    CenteredForm,
    Const,
    Cos,
    Mul,
    Neg,
    Polynomial,
    Pow,
    Sin,
    Sub,
    Var,
    arity_of,
    differentiate,
    eval_centered,
    eval_interval,
    eval_real,
    infer_arity,
    parse,
    rouche_bound,
)
from funtervals.interval import Interval

CUBIC = "x^3 - x^2 - x"
SEXTIC = "x^6 + x^5 - 10*x^4 - 8*x^3 + 15*x^2 + 11"


def test_parse_cubic_tree():
    e = parse(CUBIC)
    x = Var(0)
    assert e == Sub(Sub(Pow(x, 3), Pow(x, 2)), x)
    assert Polynomial.from_expr(e).degree == 3


def test_parse_table1_row2():
    e = parse("sin(x1 + x2) + (x1 - x2)^2 - 1.5*x1 + 2.5*x2 + 1", 2)
    assert arity_of(e) == 2
    x1, x2 = 0.3, -1.2
    want = math.sin(x1 + x2) + (x1 - x2) ** 2 - 1.5 * x1 + 2.5 * x2 + 1
    assert eval_real(e, (x1, x2)) == pytest.approx(want, rel=1e-15)


@pytest.mark.parametrize(
    "text,pos",
    [("x +", 3), ("sin(x", 5), ("x^-1", 2), ("x^1.5", 2), ("y + 1", 0), ("x^2^3", 3), ("2 $ x", 2), ("x2", 0)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text, 1)
    assert info.value.position == pos
    assert "^" in info.value.diagnostic()


def test_precedence():
    assert parse("-x^2") == Neg(Pow(Var(0), 2))
    assert parse("1 + 2*x") == Add(Const(1.0), Mul(Const(2.0), Var(0)))
    assert eval_real(parse("2^3*2 - 8/4/2"), (0,)) == 15.0
    assert eval_real(parse("-2^2"), 0) == -4.0
    assert eval_real(parse("(-2)^2"), 0) == 4.0
    assert eval_real(parse("x^(2)"), 3) == 9.0


def test_numbers_functions_and_pi():
    assert eval_real(parse("1e-3 + .5 + 2."), 0) == pytest.approx(2.501)
    assert eval_real(parse("cos(pi) + exp(0) + sin(0)"), 0) == pytest.approx(0.0)
    assert parse("x1 + x", 1) == Add(Var(0), Var(0))
    with pytest.raises(ParseError):
        parse("x3", 2)


def test_infer_arity():
    assert infer_arity("x^2") == 1
    assert infer_arity("x1 + x3*x2") == 3


@pytest.mark.parametrize("name", ["cubic", "sextic", "table1_f1", "table1_f2", "table1_f3", "rastrigin_n3", "rosenbrock_n3"])
def test_string_round_trip(name):
    p = corpus.load(name)
    e = p.expr
    assert parse(str(e), p.arity) == e


def test_differentiate_examples():
    d = differentiate(parse(CUBIC))
    for t in (-2.0, 0.3, 1.7):
        assert eval_real(d, t) == pytest.approx(3 * t * t - 2 * t - 1)
    d6 = Polynomial.from_expr(differentiate(parse(SEXTIC)))
    assert d6.coeffs == (0.0, 30.0, -24.0, -40.0, 5.0, 6.0)
    assert differentiate(parse("sin(x)")) == Cos(Var(0))
    assert differentiate(parse("x1*x2", 2), 1) == Var(0)
    assert differentiate(parse("5")) == Const(0.0)


EXPRS = [
    CUBIC,
    SEXTIC,
    "sin(x)*exp(-x^2) + cos(3*x)",
    "x/(x^2 + 1)",
    "exp(sin(x)) - cos(x)^3",
    "1/(2 + cos(x))",
]


@pytest.mark.parametrize("text", EXPRS)
def test_derivative_matches_finite_differences(text):
    e = parse(text)
    d = differentiate(e)
    rng = np.random.default_rng(3)
    for t in rng.uniform(-2, 2, 50):
        h = 1e-5 * max(1.0, abs(t))
        fd = (eval_real(e, t + h) - eval_real(e, t - h)) / (2 * h)
        exact = eval_real(d, t)
        assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))


def test_multivariate_derivative_fd():
    e = parse("x1^2*cos(x2) + x2^2*sin(x1)", 2)
    rng = np.random.default_rng(4)
    for p in rng.uniform(-3, 3, (30, 2)):
        for k in range(2):
            h = 1e-5
            q1, q2 = p.copy(), p.copy()
            q1[k] += h
            q2[k] -= h
            fd = (eval_real(e, q1) - eval_real(e, q2)) / (2 * h)
            exact = eval_real(differentiate(e, k), p)
            assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))


def test_eval_real_examples():
    e = parse(CUBIC)
    assert eval_real(e, 2.0) == 2.0
    assert eval_real(e, 0.0) == 0.0
    assert eval_real(corpus.load("rosenbrock_n2").expr, (1.0, 1.0)) == 0.0
    with pytest.raises(DomainError):
        eval_real(parse("1/x"), 0.0)


def test_eval_interval_examples():
    assert eval_interval(parse(CUBIC), Interval(-2, 2)) == Interval(-14, 10)
    s = eval_interval(parse("sin(x)"), Interval(0, math.pi))
    assert s.lo == 0.0 and s.hi == 1.0
    assert eval_interval(parse("x - x"), Interval(0, 1)) == Interval(-1, 1)
    with pytest.raises(EnclosureError):
        eval_interval(parse("1/x"), Interval(-1, 1))


def test_eval_centered_examples():
    assert eval_centered(parse("5"), Interval(-3, 7)) == Interval(5, 5)
    assert eval_centered(parse("x"), Interval(0, 1)) == Interval(0, 1)
    e = parse(CUBIC)
    box = Interval(0.99, 1.01)
    xs = np.linspace(0.99, 1.01, 10001)
    ys = xs**3 - xs**2 - xs
    c = eval_centered(e, box)
    assert c.lo <= ys.min() and ys.max() <= c.hi
    assert c.wid < eval_interval(e, box).wid


def _corpus_exprs():
    for name in corpus.names():
        p = corpus.load(name)
        yield name, p


@pytest.mark.parametrize("name,problem", list(_corpus_exprs()))
def test_enclosure_on_corpus(name, problem):
    e, n = problem.expr, problem.arity
    rng = np.random.default_rng(hash(name) % 2**32)
    for _ in range(5):
        c = rng.uniform(-4, 4, n)
        r = rng.uniform(0.01, 2, n)
        box = tuple(Interval(ci - ri, ci + ri) for ci, ri in zip(c, r))
        F = eval_interval(e, box)
        C = eval_centered(e, box)
        pts = rng.uniform(c - r, c + r, (1000, n))
        for p in pts:
            v = eval_real(e, p)
            tol = 1e-9 * max(1.0, abs(v))
            assert F.lo - tol <= v <= F.hi + tol
            assert C.lo - tol <= v <= C.hi + tol


@pytest.mark.parametrize("text,x0", [(CUBIC, 0.3), (SEXTIC, 2.2), ("x^4 - 3*x", -0.7)])
def test_centered_quadratic_decay(text, x0):
    e = parse(text)
    d = eval_real(differentiate(e), x0)
    ratios = []
    for w in (1e-1, 1e-2, 1e-3, 1e-4):
        box = Interval(x0 - w / 2, x0 + w / 2)
        excess = eval_centered(e, box).wid - abs(d) * w
        ratios.append(excess / w**2)
    assert max(ratios) < 10 * max(abs(ratios[0]), 1.0)
    assert all(r >= -1e-3 for r in ratios)


def test_centered_form_caches_gradient():
    cf = CenteredForm(parse("x1*x2 + x2^2", 2))
    assert len(cf.grad) == 2
    F, G = cf.enclose((Interval(0, 1), Interval(1, 2)))
    assert G[0] == Interval(1, 2) and G[1] == Interval(2, 5)
    assert F.lo <= 1 and F.hi >= 6


def test_rouche_examples():
    assert rouche_bound(parse(CUBIC)) == Interval(-2, 2)
    b = rouche_bound(Polynomial((0.0, 30.0, -24.0, -40.0, 5.0, 6.0)))
    assert b.hi == pytest.approx(46 / 6) and b.lo == -b.hi
    assert b.subset(Interval(-7.67, 7.67))
    assert rouche_bound(parse("x^2")) == Interval(-1, 1)
    with pytest.raises(DomainError):
        rouche_bound(Polynomial((0.0, 0.0)))
    with pytest.raises(DomainError):
        rouche_bound(Polynomial((3.0,)))


def test_polynomial_extraction():
    p = Polynomial.from_expr(parse("(x + 1)^2/2 - 3*x"))
    assert p.coeffs == (0.5, -2.0, 0.5)
    with pytest.raises(DomainError, match="domain"):
        Polynomial.from_expr(parse("sin(x)"))
    with pytest.raises(DomainError):
        Polynomial.from_expr(parse("1/x"))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_rouche_contains_real_roots(coeffs):
    p = Polynomial(tuple(float(c) for c in coeffs))
    bound = rouche_bound(p)
    for r in np.roots(coeffs[::-1]):
        if abs(r.imag) < 1e-9:
            assert bound.lo - 1e-9 <= r.real <= bound.hi + 1e-9


def test_expression_operators():
    x = Var(0)
    e = 2 * x**2 - x / 4 + 1
    assert eval_real(e, 2.0) == 8.5
    assert isinstance(Sin(x) + 1, Add)
    with pytest.raises(DomainError):
        Pow(x, -1)
