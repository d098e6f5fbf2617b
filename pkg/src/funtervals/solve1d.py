"""Work-list solvers for univariate problems.

:func:`find_roots` is a branch-and-prune root isolator and :func:`minimize`
a branch-and-bound global minimizer.  Both pop the item with the smallest
characteristic (``-mag`` or ``-wid`` of the enclosure, so the widest
enclosure first), test it, optionally contract it with functional interval
information and bisect it.

Three inclusion functions are available: the natural interval extension,
the centered form and linear functional intervals.  Contraction and the
Bolzano certificate are only used with the latter.
"""

from __future__ import annotations

import bisect as _bisect
import enum
import itertools
import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import lfr as L
from .errors import DegenerateError, DomainError, EnclosureError
from .expr import CenteredForm, Expr, eval_interval
from .interval import EMPTY, Interval
from .trace import Stopwatch, TraceRecord

_EPS = sys.float_info.epsilon
INDETERMINATE = -sys.float_info.max


def _slack(M: float) -> float:
    # Discard tolerance against nearest-rounding noise in the enclosures.
    return 16.0 * _EPS * abs(M)


class Arithmetic(str, enum.Enum):
    CLASSICAL = "classical"
    CENTERED = "centered"
    LFR = "lfr"


class Characteristic(str, enum.Enum):
    NEG_MAG = "mag"
    NEG_WID = "wid"

    @classmethod
    def _missing_(cls, value):
        aliases = {"neg_mag": cls.NEG_MAG, "neg_wid": cls.NEG_WID, "-mag": cls.NEG_MAG, "-wid": cls.NEG_WID}
        return aliases.get(str(value).lower())


@dataclass
class SolverConfig:
    arithmetic: Arithmetic = Arithmetic.LFR
    characteristic: Characteristic = Characteristic.NEG_MAG
    epsilon: float = 1e-2
    max_iter: int = 10000
    trace: Callable[[TraceRecord], None] | None = None
    timing: bool = True

    def __post_init__(self):
        self.arithmetic = Arithmetic(self.arithmetic)
        self.characteristic = Characteristic(self.characteristic)
        if not (self.epsilon > 0.0):
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be at least 1, got {self.max_iter}")


@dataclass
class WorkItem:
    omega: float
    domain: Interval
    certified: bool = False
    enclosure: Interval | None = None
    lfr: L.LinFunInterval | None = field(default=None, repr=False)


class WorkList:
    """Items sorted ascending by ``omega``; equal keys keep insertion order.

    An optional ``tie`` value passed to :meth:`push` is compared before the
    insertion order.
    """

    def __init__(self):
        self._keys: list[tuple[float, float, int]] = []
        self._items: list[WorkItem] = []
        self._seq = itertools.count()

    def push(self, item, tie: float = 0.0) -> None:
        key = (item.omega, tie, next(self._seq))
        i = _bisect.bisect_right(self._keys, key)
        self._keys.insert(i, key)
        self._items.insert(i, item)

    def pop(self) -> WorkItem:
        self._keys.pop(0)
        return self._items.pop(0)

    @property
    def first(self) -> WorkItem:
        return self._items[0]

    def omegas(self) -> list[float]:
        return [k[0] for k in self._keys]

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)

    def __iter__(self) -> Iterator[WorkItem]:
        return iter(self._items)


@dataclass
class SolverReport:
    items: list[WorkItem]
    iterations: int
    stop_reason: str
    trace: list[TraceRecord]
    record: float | None = None
    min_enclosure: Interval | None = None

    @property
    def intervals(self) -> list[Interval]:
        return [it.domain for it in self.items]

    @property
    def certified(self) -> list[Interval]:
        return [it.domain for it in self.items if it.certified]

    @property
    def uncertified(self) -> list[Interval]:
        return [it.domain for it in self.items if not it.certified]

    def clusters(self) -> list[tuple[Interval, bool]]:
        """Hulls of touching result intervals, each with an 'any certified' flag."""
        out: list[tuple[Interval, bool]] = []
        for it in sorted(self.items, key=lambda it: it.domain.lo):
            if out and it.domain.lo <= out[-1][0].hi:
                hull, cert = out[-1]
                out[-1] = (Interval(hull.lo, max(hull.hi, it.domain.hi)), cert or it.certified)
            else:
                out.append((it.domain, it.certified))
        return out


def bisect(I: Interval) -> tuple[Interval, Interval]:
    """Split at the midpoint."""
    m = I.mid
    if not (I.lo < m < I.hi):
        raise DegenerateError(f"cannot bisect {I}")
    return Interval(I.lo, m), Interval(m, I.hi)


class _Extension:
    """Inclusion function of ``e`` in the chosen arithmetic."""

    def __init__(self, e: Expr, arithmetic: Arithmetic):
        self.e = e
        self.arithmetic = arithmetic
        self.centered = CenteredForm(e, 1) if arithmetic is Arithmetic.CENTERED else None

    def __call__(self, I: Interval) -> tuple[Interval, L.LinFunInterval | None]:
        if self.arithmetic is Arithmetic.CLASSICAL or I.wid == 0.0:
            return eval_interval(self.e, (I,)), None
        if self.arithmetic is Arithmetic.CENTERED:
            return self.centered((I,)), None
        F = L.eval_lfr(self.e, L.DomainMap(I))
        return L.ran(F), F


def _measure(F: Interval, ch: Characteristic) -> float:
    return -(F.mag if ch is Characteristic.NEG_MAG else F.wid)


def characteristic(e: Expr, I: Interval, cfg: SolverConfig) -> float:
    """``-mag`` or ``-wid`` of the configured enclosure of ``e`` over ``I``."""
    F, _ = _Extension(e, cfg.arithmetic)(I)
    return _measure(F, cfg.characteristic)


class _Run:
    def __init__(self, e: Expr, domain: Interval, cfg: SolverConfig, roots: bool):
        if not isinstance(domain, Interval):
            raise DomainError("search domain must be a nonempty interval")
        if not domain.is_bounded:
            raise DomainError(f"search domain {domain} is unbounded")
        self.cfg = cfg
        self.roots = roots
        self.ext = _Extension(e, cfg.arithmetic)
        self.scale = max(domain.mag, sys.float_info.min)
        self.worklist = WorkList()
        self.emitted: list[WorkItem] = []
        self.trace: list[TraceRecord] = []
        self.clock = Stopwatch(cfg.timing)
        self.M = math.inf
        self.iterations = 0
        self.worklist.push(self.make_item(domain))
        self.record()

    def make_item(self, I: Interval) -> WorkItem:
        try:
            F, Flfr = self.ext(I)
        except EnclosureError:
            return WorkItem(INDETERMINATE, I)
        omega = _measure(F, self.cfg.characteristic)
        if not math.isfinite(omega):
            omega = INDETERMINATE
        certified = self.roots and Flfr is not None and L.bolzano_certificate(Flfr)
        return WorkItem(omega, I, certified, F, Flfr)

    def degenerate(self, I: Interval) -> bool:
        m = I.mid
        return I.wid <= 4.0 * _EPS * self.scale or not (I.lo < m < I.hi)

    def record(self):
        wl = self.worklist
        rec = TraceRecord(
            iteration=self.iterations,
            max_characteristic=-wl.first.omega if wl else 0.0,
            worklist_size=len(wl),
            record_value=None if self.roots or math.isinf(self.M) else self.M,
            cumulative_ms=self.clock.ms(),
        )
        self.trace.append(rec)
        if self.cfg.trace is not None:
            self.cfg.trace(rec)

    def pull_back(self, m, item: WorkItem):
        """Map a contracted ``t``-set to a slightly widened sub-interval of the item."""
        if m is EMPTY:
            return EMPTY
        x = L.to_domain(m, item.lfr.dom)
        delta = 2.0 * _EPS * self.scale
        lo = max(item.domain.lo, x.lo - delta) if x.lo > item.domain.lo else item.domain.lo
        hi = min(item.domain.hi, x.hi + delta) if x.hi < item.domain.hi else item.domain.hi
        return Interval(lo, hi)

    def step(self, item: WorkItem) -> None:
        I, F = item.domain, item.enclosure
        if F is not None:
            if self.roots:
                if not (F.lo <= 0.0 <= F.hi):
                    return
            else:
                self.M = min(self.M, F.hi)
                if F.lo > self.M + _slack(self.M):
                    return
        if item.lfr is not None:
            if self.roots:
                m = L.contract_zero_part(item.lfr)
            else:
                up = item.lfr.upper
                self.M = min(self.M, up.at_minus, up.at_plus)
                m = L.contract_to_min(item.lfr, self.M)
            I = self.pull_back(m, item)
            if I is EMPTY:
                return
        if self.degenerate(I):
            self.emitted.append(WorkItem(item.omega, I, item.certified, F, None))
            return
        for child in bisect(I):
            self.worklist.push(self.make_item(child))

    def run(self) -> SolverReport:
        cfg, wl = self.cfg, self.worklist
        while True:
            if not wl:
                reason = "empty"
                break
            # The initial item is always processed so a minimization has a record.
            if self.iterations and -wl.first.omega <= cfg.epsilon:
                reason = "converged"
                break
            if self.iterations >= cfg.max_iter:
                reason = "max_iter"
                break
            item = wl.pop()
            self.iterations += 1
            self.step(item)
            self.record()
        items = sorted(list(wl) + self.emitted, key=lambda it: (it.domain.lo, it.domain.hi))
        report = SolverReport(items, self.iterations, reason, self.trace)
        if not self.roots:
            report.record = None if math.isinf(self.M) else self.M
            report.min_enclosure = self.min_enclosure(items)
        return report

    def min_enclosure(self, items) -> Interval | None:
        if math.isinf(self.M):
            return None
        lows = [it.enclosure.lo if it.enclosure is not None else -math.inf for it in items]
        lows = [v for v in lows if v <= self.M + _slack(self.M)]
        return Interval(min(min(lows, default=self.M), self.M), self.M)


def find_roots(e: Expr, domain: Interval, cfg: SolverConfig | None = None) -> SolverReport:
    """Enclose all zeros of ``e`` in ``domain``.

    Every zero lies in one of ``report.intervals``.  With functional
    intervals an item is ``certified`` when the Bolzano test proves it holds
    a zero.
    """
    return _Run(e, domain, cfg or SolverConfig(), roots=True).run()


def minimize(e: Expr, domain: Interval, cfg: SolverConfig | None = None) -> SolverReport:
    """Enclose the global minimum of ``e`` over ``domain``.

    ``report.min_enclosure`` contains the minimum value and
    ``report.record`` is a guaranteed upper bound on it.
    """
    cfg = cfg or SolverConfig(characteristic=Characteristic.NEG_WID)
    return _Run(e, domain, cfg, roots=False).run()
