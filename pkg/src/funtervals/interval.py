"""Classical closed intervals and their arithmetic.

An :class:`Interval` is a closed set ``[lo, hi]`` of reals.  Arithmetic
returns the exact range of the operation over all representatives, computed
with round-to-nearest floating point (no outward rounding).

The empty set is the separate singleton :data:`EMPTY`.  Every binary or
unary operation propagates it: empty in, empty out.  Accessors that need a
point of the set (``mid``, ``rad``, ``wid``, ``mag``) raise
:class:`~funtervals.errors.DomainError` on it.

Endpoints may be infinite only for the transient rays produced while
computing exclusion regions in the multivariate solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError

Number = Union[int, float]

_TWO_PI = 2.0 * math.pi
_HALF_PI = 0.5 * math.pi


class _Empty:
    """The empty interval.  Use the module constant :data:`EMPTY`."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    is_empty = True

    def __repr__(self):
        return "EMPTY"

    def __str__(self):
        return "∅"

    def __reduce__(self):
        return (_Empty, ())

    def __contains__(self, x):
        return False

    def _absorb(self, *args):
        return self

    __add__ = __radd__ = __sub__ = __rsub__ = _absorb
    __mul__ = __rmul__ = __truediv__ = __rtruediv__ = _absorb

    def __neg__(self):
        return self

    def __bool__(self):
        return False

    def subset(self, other) -> bool:
        return True


EMPTY = _Empty()


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval ``[lo, hi]`` with ``lo <= hi``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise DomainError(f"interval endpoint is NaN: [{self.lo}, {self.hi}]")
        if lo > hi:
            raise DomainError(f"reversed endpoints [{lo}, {hi}]; use EMPTY for the empty set")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    is_empty = False

    @classmethod
    def point(cls, x: Number) -> Interval:
        return cls(x, x)

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    # -- accessors ---------------------------------------------------------
    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def rad(self) -> float:
        return 0.5 * (self.hi - self.lo)

    @property
    def wid(self) -> float:
        return self.hi - self.lo

    @property
    def mag(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    def __contains__(self, x) -> bool:
        if isinstance(x, (Interval, _Empty)):
            return x.subset(self)
        return self.lo <= x <= self.hi

    def subset(self, other: Interval | _Empty) -> bool:
        if other is EMPTY:
            return False
        return other.lo <= self.lo and self.hi <= other.hi

    def __str__(self):
        return f"[{self.lo:.17g}, {self.hi:.17g}]"

    def __iter__(self):
        yield self.lo
        yield self.hi

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)


IntervalLike = Union[Interval, _Empty]


def _coerce(x) -> IntervalLike:
    if isinstance(x, (Interval, _Empty)):
        return x
    if isinstance(x, (int, float)):
        return Interval(x, x)
    raise TypeError(f"cannot use {type(x).__name__} as an interval")


def _require_point_set(x: IntervalLike) -> Interval:
    if x is EMPTY:
        raise DomainError("operation needs a nonempty interval")
    return x


def mid(x: IntervalLike) -> float:
    return _require_point_set(x).mid


def rad(x: IntervalLike) -> float:
    return _require_point_set(x).rad


def wid(x: IntervalLike) -> float:
    return _require_point_set(x).wid


def mag(x: IntervalLike) -> float:
    return _require_point_set(x).mag


def add(x, y) -> IntervalLike:
    x, y = _coerce(x), _coerce(y)
    if x is EMPTY or y is EMPTY:
        return EMPTY
    return Interval(x.lo + y.lo, x.hi + y.hi)


def neg(x) -> IntervalLike:
    x = _coerce(x)
    return -x


def sub(x, y) -> IntervalLike:
    x, y = _coerce(x), _coerce(y)
    if x is EMPTY or y is EMPTY:
        return EMPTY
    return Interval(x.lo - y.hi, x.hi - y.lo)


def _mul_end(a: float, b: float) -> float:
    # 0 * inf counts as 0: a zero factor annihilates an unbounded ray.
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b


def mul(x, y) -> IntervalLike:
    x, y = _coerce(x), _coerce(y)
    if x is EMPTY or y is EMPTY:
        return EMPTY
    p = (_mul_end(x.lo, y.lo), _mul_end(x.lo, y.hi), _mul_end(x.hi, y.lo), _mul_end(x.hi, y.hi))
    return Interval(min(p), max(p))


def div(x, y) -> IntervalLike:
    """Divide ``x`` by ``y``; raises :class:`DomainError` if ``0 in y``."""
    x, y = _coerce(x), _coerce(y)
    if x is EMPTY or y is EMPTY:
        return EMPTY
    if y.lo <= 0.0 <= y.hi:
        raise DomainError(f"division by an interval containing zero: {y}")
    return mul(x, Interval(1.0 / y.hi, 1.0 / y.lo))


def intersect(x, y) -> IntervalLike:
    x, y = _coerce(x), _coerce(y)
    if x is EMPTY or y is EMPTY:
        return EMPTY
    lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
    if lo > hi:
        return EMPTY
    return Interval(lo, hi)


def hull(x, y) -> IntervalLike:
    """Smallest interval containing both arguments (EMPTY is the identity)."""
    x, y = _coerce(x), _coerce(y)
    if x is EMPTY:
        return y
    if y is EMPTY:
        return x
    return Interval(min(x.lo, y.lo), max(x.hi, y.hi))


def format_interval(x: IntervalLike) -> str:
    return str(x)


# -- elementary functions ---------------------------------------------------

def ipow(x: float, n: int) -> float:
    """``x**n`` for a nonnegative integer ``n`` by repeated squaring."""
    if n < 0:
        raise DomainError("negative exponent")
    result = 1.0
    base = x
    while n:
        if n & 1:
            result *= base
        n >>= 1
        if n:
            base *= base
    return result


def pow_int(x, n: int) -> IntervalLike:
    """Exact range of ``t**n`` over ``x``.

    Even powers of a zero-straddling interval give ``[0, mag(x)**n]``, which
    avoids the dependency widening of repeated multiplication.
    """
    x = _coerce(x)
    if x is EMPTY:
        return EMPTY
    if n < 0:
        raise DomainError("negative exponent")
    if n == 0:
        return Interval(1.0, 1.0)
    if n % 2:
        return Interval(ipow(x.lo, n), ipow(x.hi, n))
    if x.lo >= 0.0:
        return Interval(ipow(x.lo, n), ipow(x.hi, n))
    if x.hi <= 0.0:
        return Interval(ipow(x.hi, n), ipow(x.lo, n))
    return Interval(0.0, ipow(x.mag, n))


def _hits(lo: float, hi: float, phase: float) -> bool:
    """Whether ``phase + 2*pi*k`` lies in ``[lo, hi]`` for some integer k."""
    k = math.ceil((lo - phase) / _TWO_PI)
    return phase + _TWO_PI * k <= hi


def sin(x) -> IntervalLike:
    x = _coerce(x)
    if x is EMPTY:
        return EMPTY
    if not x.is_bounded or x.wid >= _TWO_PI:
        return Interval(-1.0, 1.0)
    a, b = math.sin(x.lo), math.sin(x.hi)
    lo, hi = min(a, b), max(a, b)
    if _hits(x.lo, x.hi, _HALF_PI):
        hi = 1.0
    if _hits(x.lo, x.hi, -_HALF_PI):
        lo = -1.0
    return Interval(lo, hi)


def cos(x) -> IntervalLike:
    x = _coerce(x)
    if x is EMPTY:
        return EMPTY
    if not x.is_bounded or x.wid >= _TWO_PI:
        return Interval(-1.0, 1.0)
    a, b = math.cos(x.lo), math.cos(x.hi)
    lo, hi = min(a, b), max(a, b)
    if _hits(x.lo, x.hi, 0.0):
        hi = 1.0
    if _hits(x.lo, x.hi, math.pi):
        lo = -1.0
    return Interval(lo, hi)


def exp(x) -> IntervalLike:
    x = _coerce(x)
    if x is EMPTY:
        return EMPTY
    return Interval(_safe_exp(x.lo), _safe_exp(x.hi))


def _safe_exp(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf
