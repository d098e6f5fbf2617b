"""Linear functional intervals.

A :class:`LinFunInterval` is a pair of lines ``[lower(t), upper(t)]`` over
the canonical parameter ``t in [-1, 1]``.  A :class:`DomainMap` ties ``t``
to a concrete interval via ``x = mid + rad * t``.

Arithmetic is pointwise in ``t``: for every ``t`` the result interval
contains ``u op v`` for all ``u in x(t)`` and ``v in y(t)``.  Products and
quotients of boundary lines are curves; they are replaced by tangent and
chord lines and the four corner candidates are merged with the lower and
upper envelope operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import interval as iv
from .errors import ContractError, DegenerateError, DomainError, EnclosureError
from .interval import EMPTY, Interval, IntervalLike


@dataclass(frozen=True, slots=True)
class Line:
    """The linear function ``slope * t + intercept`` on ``[-1, 1]``."""

    slope: float
    intercept: float

    def __call__(self, t: float) -> float:
        return self.slope * t + self.intercept

    @property
    def at_minus(self) -> float:
        return self.intercept - self.slope

    @property
    def at_plus(self) -> float:
        return self.intercept + self.slope

    def __str__(self):
        sign = "-" if math.copysign(1.0, self.intercept) < 0 else "+"
        return f"{self.slope:.17g}·t {sign} {abs(self.intercept):.17g}"


LinePair = Line


@dataclass(frozen=True, slots=True)
class DomainMap:
    """Affine change of variables ``x = center + radius * t``."""

    domain: Interval

    def __post_init__(self):
        if not isinstance(self.domain, Interval):
            raise DomainError("a domain map needs a nonempty interval")
        if not self.domain.wid > 0.0:
            raise DegenerateError(f"domain {self.domain} has zero width")

    @property
    def center(self) -> float:
        return self.domain.mid

    @property
    def radius(self) -> float:
        return self.domain.rad

    def to_x(self, t: float) -> float:
        return self.center + self.radius * t

    def to_t(self, x: float) -> float:
        return (x - self.center) / self.radius


@dataclass(frozen=True, slots=True)
class LinFunInterval:
    """``[lower(t), upper(t)]`` for ``t in [-1, 1]``, optionally tied to a domain."""

    lower: Line
    upper: Line
    dom: DomainMap | None = None

    @classmethod
    def from_coeffs(cls, lo_slope, lo_icept, hi_slope, hi_icept, dom=None, *, check=True):
        x = cls(Line(float(lo_slope), float(lo_icept)), Line(float(hi_slope), float(hi_icept)), dom)
        if check:
            x.validate()
        return x

    @classmethod
    def constant(cls, value: Interval | float, dom=None) -> LinFunInterval:
        if isinstance(value, (int, float)):
            value = Interval(value, value)
        return cls(Line(0.0, value.lo), Line(0.0, value.hi), dom)

    @classmethod
    def variable(cls, dom: DomainMap) -> LinFunInterval:
        line = Line(dom.radius, dom.center)
        return cls(line, line, dom)

    def validate(self, slack: float = 0.0) -> None:
        for s in (-1.0, 1.0):
            lo, hi = self.lower(s), self.upper(s)
            if not (lo <= hi + slack):
                raise DomainError(f"lower boundary exceeds upper at t={s:+g}: {lo} > {hi}")

    @property
    def lo_slope(self) -> float:
        return self.lower.slope

    @property
    def lo_icept(self) -> float:
        return self.lower.intercept

    @property
    def hi_slope(self) -> float:
        return self.upper.slope

    @property
    def hi_icept(self) -> float:
        return self.upper.intercept

    def at(self, t: float) -> tuple[float, float]:
        return self.lower(t), self.upper(t)

    def ran(self) -> Interval:
        return ran(self)

    def __str__(self):
        s = f"[{self.lower}, {self.upper}]"
        if self.dom is not None:
            s += f" over {self.dom.domain}"
        return s

    def __add__(self, other):
        return add(self, _coerce(other, self.dom))

    def __radd__(self, other):
        return add(_coerce(other, self.dom), self)

    def __sub__(self, other):
        return sub(self, _coerce(other, self.dom))

    def __rsub__(self, other):
        return sub(_coerce(other, self.dom), self)

    def __mul__(self, other):
        return mul(self, _coerce(other, self.dom))

    def __rmul__(self, other):
        return mul(_coerce(other, self.dom), self)

    def __truediv__(self, other):
        return div(self, _coerce(other, self.dom))

    def __rtruediv__(self, other):
        return div(_coerce(other, self.dom), self)

    def __neg__(self):
        return neg(self)


def _coerce(x, dom) -> LinFunInterval:
    if isinstance(x, LinFunInterval):
        return x
    if isinstance(x, (int, float, Interval)):
        return LinFunInterval.constant(x, dom)
    raise TypeError(f"cannot use {type(x).__name__} as a functional interval")


def _common_dom(x: LinFunInterval, y: LinFunInterval):
    if x.dom is None:
        return y.dom
    if y.dom is not None and y.dom != x.dom:
        raise DomainError(f"operands live on different domains: {x.dom.domain} vs {y.dom.domain}")
    return x.dom


# -- envelopes ------------------------------------------------------------

def _from_endpoints(m_minus: float, m_plus: float) -> Line:
    return Line(0.5 * (m_plus - m_minus), 0.5 * (m_plus + m_minus))


def envelope_upper(f1: Line, f2: Line) -> Line:
    """Least line that dominates ``f1`` and ``f2`` and matches their max at ``t = +-1``."""
    a_m, a_p = f1.at_minus, f1.at_plus
    b_m, b_p = f2.at_minus, f2.at_plus
    if a_m >= b_m and a_p >= b_p:
        return f1
    if b_m >= a_m and b_p >= a_p:
        return f2
    return _from_endpoints(max(a_m, b_m), max(a_p, b_p))


def envelope_lower(f1: Line, f2: Line) -> Line:
    """Greatest line below ``f1`` and ``f2`` matching their min at ``t = +-1``."""
    a_m, a_p = f1.at_minus, f1.at_plus
    b_m, b_p = f2.at_minus, f2.at_plus
    if a_m <= b_m and a_p <= b_p:
        return f1
    if b_m <= a_m and b_p <= a_p:
        return f2
    return _from_endpoints(min(a_m, b_m), min(a_p, b_p))


def _fold4(env, lines):
    p1, p2, p3, p4 = lines
    return env(env(p1, p2), env(p3, p4))


# -- products -------------------------------------------------------------

def quad_support_point(a: float, b: float) -> float:
    """Tangency point for ``a t^2 + b t + c``: the vertex clamped to ``[-1, 1]``."""
    if a == 0.0:
        raise DegenerateError("support point of a linear function is undefined")
    return min(1.0, max(-1.0, -b / (2.0 * a)))


def quad_tangent_line(A: float, B: float, C: float, D: float) -> Line:
    """Tangent to ``(At + B)(Ct + D)`` at the support point.

    Lower bound when ``AC > 0``, upper bound when ``AC < 0``.
    """
    a2, a1, a0 = A * C, A * D + B * C, B * D
    if a2 == 0.0:
        return Line(a1, a0)
    ts = quad_support_point(a2, a1)
    return Line(2.0 * a2 * ts + a1, a0 - a2 * ts * ts)


def quad_chord_line(A: float, B: float, C: float, D: float) -> Line:
    """Chord of ``(At + B)(Ct + D)`` through ``t = -1`` and ``t = 1``."""
    return Line(A * D + B * C, A * C + B * D)


def _product_bounds(f: Line, g: Line) -> tuple[Line, Line]:
    A, B, C, D = f.slope, f.intercept, g.slope, g.intercept
    ac = A * C
    if ac == 0.0:
        line = Line(A * D + B * C, B * D)
        return line, line
    tangent, chord = quad_tangent_line(A, B, C, D), quad_chord_line(A, B, C, D)
    return (tangent, chord) if ac > 0.0 else (chord, tangent)


# -- quotients ------------------------------------------------------------

def rational_support_point(C: float, D: float) -> float:
    """Tangency point ``sign(D / C)`` for ``(At + B) / (Ct + D)``."""
    if C == 0.0 or D == 0.0:
        raise DegenerateError("support point needs nonzero C and D")
    return 1.0 if (C > 0.0) == (D > 0.0) else -1.0


def _quotient_bounds(f: Line, g: Line) -> tuple[Line, Line]:
    A, B, C, D = f.slope, f.intercept, g.slope, g.intercept
    if C == 0.0:
        line = Line(A / D, B / D)
        return line, line
    det = B * C - A * D
    if det == 0.0:
        line = Line(0.0, B / D)
        return line, line
    ts = rational_support_point(C, D)
    den = C * ts + D
    slope = (A * D - B * C) / (den * den)
    tangent = Line(slope, (A * ts + B) / den - ts * slope)
    f_plus = (A + B) / (C + D)
    f_minus = (B - A) / (D - C)
    chord = _from_endpoints(f_minus, f_plus)
    convex = (C * det > 0.0) == (D > 0.0)
    return (tangent, chord) if convex else (chord, tangent)


# -- arithmetic -----------------------------------------------------------

def add(x: LinFunInterval, y: LinFunInterval) -> LinFunInterval:
    dom = _common_dom(x, y)
    lo = Line(x.lower.slope + y.lower.slope, x.lower.intercept + y.lower.intercept)
    hi = Line(x.upper.slope + y.upper.slope, x.upper.intercept + y.upper.intercept)
    return LinFunInterval(lo, hi, dom)


def neg(x: LinFunInterval) -> LinFunInterval:
    return LinFunInterval(
        Line(-x.upper.slope, -x.upper.intercept),
        Line(-x.lower.slope, -x.lower.intercept),
        x.dom,
    )


def sub(x: LinFunInterval, y: LinFunInterval) -> LinFunInterval:
    return add(x, neg(y))


def mul(x: LinFunInterval, y: LinFunInterval) -> LinFunInterval:
    dom = _common_dom(x, y)
    pairs = ((x.lower, y.lower), (x.lower, y.upper), (x.upper, y.lower), (x.upper, y.upper))
    bounds = [_product_bounds(f, g) for f, g in pairs]
    lo = _fold4(envelope_lower, [b[0] for b in bounds])
    hi = _fold4(envelope_upper, [b[1] for b in bounds])
    return LinFunInterval(lo, hi, dom)


def div(x: LinFunInterval, y: LinFunInterval) -> LinFunInterval:
    """Pointwise quotient; raises EnclosureError unless ``0 not in ran(y)``."""
    dom = _common_dom(x, y)
    r = ran(y)
    if r.lo <= 0.0 <= r.hi:
        raise EnclosureError(f"denominator range {r} contains zero")
    pairs = ((x.lower, y.lower), (x.lower, y.upper), (x.upper, y.lower), (x.upper, y.upper))
    bounds = [_quotient_bounds(f, g) for f, g in pairs]
    lo = _fold4(envelope_lower, [b[0] for b in bounds])
    hi = _fold4(envelope_upper, [b[1] for b in bounds])
    return LinFunInterval(lo, hi, dom)


def pow_int(x: LinFunInterval, n: int) -> LinFunInterval:
    """``x`` multiplied by itself ``n`` times, left to right."""
    if n < 0:
        raise DomainError("negative exponent")
    if n == 0:
        return LinFunInterval.constant(1.0, x.dom)
    acc = x
    for _ in range(n - 1):
        acc = mul(acc, x)
    return acc


def ran(x: LinFunInterval) -> Interval:
    """Exact range ``[min lower, max upper]`` over ``t in [-1, 1]``."""
    return Interval(x.lower.intercept - abs(x.lower.slope), x.upper.intercept + abs(x.upper.slope))


# -- evaluation -----------------------------------------------------------

class _LfrOps:
    __slots__ = ("dom", "_var")

    def __init__(self, dom: DomainMap):
        self.dom = dom
        self._var = LinFunInterval.variable(dom)

    def const(self, c):
        return LinFunInterval.constant(c, self.dom)

    def var(self, i):
        if i != 0:
            raise DomainError("functional interval evaluation is univariate")
        return self._var

    add = staticmethod(add)
    sub = staticmethod(sub)
    mul = staticmethod(mul)
    neg = staticmethod(neg)
    div = staticmethod(div)
    pow = staticmethod(pow_int)

    def _lift(self, f, x):
        return LinFunInterval.constant(f(ran(x)), self.dom)

    def sin(self, x):
        return self._lift(iv.sin, x)

    def cos(self, x):
        return self._lift(iv.cos, x)

    def exp(self, x):
        return self._lift(iv.exp, x)


def eval_lfr(e, dom: DomainMap | Interval) -> LinFunInterval:
    """Evaluate a univariate expression in functional interval arithmetic."""
    if isinstance(dom, Interval):
        dom = DomainMap(dom)
    return e._eval(_LfrOps(dom))


# -- contractions ---------------------------------------------------------

def _below_zero(line: Line) -> IntervalLike:
    """``{t in [-1, 1] : line(t) <= 0}``."""
    a, b = line.slope, line.intercept
    if a == 0.0:
        return Interval(-1.0, 1.0) if b <= 0.0 else EMPTY
    r = -b / a
    if a > 0.0:
        return EMPTY if r < -1.0 else Interval(-1.0, min(r, 1.0))
    return EMPTY if r > 1.0 else Interval(max(r, -1.0), 1.0)


def _above_zero(line: Line) -> IntervalLike:
    """``{t in [-1, 1] : line(t) >= 0}``."""
    a, b = line.slope, line.intercept
    if a == 0.0:
        return Interval(-1.0, 1.0) if b >= 0.0 else EMPTY
    r = -b / a
    if a > 0.0:
        return EMPTY if r > 1.0 else Interval(max(r, -1.0), 1.0)
    return EMPTY if r < -1.0 else Interval(-1.0, min(r, 1.0))


def contract_zero_part(x: LinFunInterval) -> IntervalLike:
    """The ``t``-set where ``lower(t) <= 0 <= upper(t)``, or EMPTY."""
    return iv.intersect(_below_zero(x.lower), _above_zero(x.upper))


def contract_to_min(x: LinFunInterval, M: float) -> IntervalLike:
    """Zero part of ``x - M``: the ``t``-set where a value ``<= M`` is possible.

    Requires ``M <= min(upper(-1), upper(1))``; the caller must tighten the
    record first.
    """
    cap = min(x.upper.at_minus, x.upper.at_plus)
    if M > cap:
        raise ContractError(f"record {M!r} exceeds the upper boundary minimum {cap!r}")
    shifted = LinFunInterval(
        Line(x.lower.slope, x.lower.intercept - M),
        Line(x.upper.slope, x.upper.intercept - M),
        x.dom,
    )
    return contract_zero_part(shifted)


def bolzano_certificate(x: LinFunInterval) -> bool:
    """True when the endpoint value intervals lie on opposite sides of zero."""
    lo_m, hi_m = x.lower.at_minus, x.upper.at_minus
    lo_p, hi_p = x.lower.at_plus, x.upper.at_plus
    return (hi_m <= 0.0 <= lo_p) or (lo_m >= 0.0 >= hi_p)


def to_domain(m: IntervalLike, dom: DomainMap) -> IntervalLike:
    """Map a ``t``-interval to domain coordinates."""
    if m is EMPTY:
        return EMPTY
    if m.lo < -1.0 or m.hi > 1.0:
        raise DomainError(f"{m} is not inside [-1, 1]")
    c, r = dom.center, dom.radius
    lo = dom.domain.lo if m.lo == -1.0 else c + r * m.lo
    hi = dom.domain.hi if m.hi == 1.0 else c + r * m.hi
    return Interval(lo, max(lo, hi))


def from_domain(x: IntervalLike, dom: DomainMap) -> IntervalLike:
    """Map a domain sub-interval to ``t`` coordinates."""
    if x is EMPTY:
        return EMPTY
    lo = max(-1.0, (x.lo - dom.center) / dom.radius)
    hi = min(1.0, (x.hi - dom.center) / dom.radius)
    return Interval(lo, max(lo, hi))
