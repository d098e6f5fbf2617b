"""Branch-and-bound global minimization over boxes.

The classical algorithm bisects boxes and prunes them with centered-form
enclosures.  The modified algorithm additionally

* pins coordinates along which the function is monotone,
* samples random points to improve the record value, and
* removes a sub-box that provably cannot beat the record, carving the rest
  of the box into at most ``2n`` pieces.

The removed sub-box comes from the centered form.  If ``f(p) < f(m)`` for a
sampled ``p`` and the midpoint ``m``, no point ``x`` with
``f(x) <= f(p)`` can satisfy ``sum_k G_k (x_k - m_k) > f(p) - f(m)``.
Splitting the right-hand side evenly over the coordinates turns that into
one interval per coordinate.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import interval as iv
from .errors import DegenerateError, DomainError, EnclosureError
from .expr import CenteredForm, Expr, eval_interval, eval_real
from .interval import EMPTY, Interval, IntervalLike
from .solve1d import WorkList
from .trace import Stopwatch, TraceRecord

_EPS = sys.float_info.epsilon


def _slack(M: float) -> float:
    # Pruning tolerance: enclosures use nearest rounding, so keep boxes whose
    # lower bound exceeds the record by only a few ulps.
    return 16.0 * _EPS * abs(M)


@dataclass(frozen=True)
class Box:
    """Cartesian product of nonempty intervals."""

    coords: tuple[Interval, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise DomainError("a box needs at least one coordinate")
        for c in coords:
            if not isinstance(c, Interval):
                raise DomainError(f"box coordinate {c!r} is not a nonempty interval")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_bounds(cls, bounds: Iterable[Sequence[float]]) -> Box:
        return cls(tuple(Interval(lo, hi) for lo, hi in bounds))

    @classmethod
    def cube(cls, lo: float, hi: float, n: int) -> Box:
        return cls((Interval(lo, hi),) * n)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    @property
    def mid(self) -> tuple[float, ...]:
        return tuple(c.mid for c in self.coords)

    @property
    def widths(self) -> tuple[float, ...]:
        return tuple(c.wid for c in self.coords)

    @property
    def max_width(self) -> float:
        return max(self.widths)

    @property
    def volume(self) -> float:
        return math.prod(self.widths)

    def replace(self, i: int, value: Interval) -> Box:
        coords = list(self.coords)
        coords[i] = value
        return Box(tuple(coords))

    def __contains__(self, point) -> bool:
        return all(c.lo <= p <= c.hi for c, p in zip(self.coords, point))

    def __str__(self):
        return " x ".join(str(c) for c in self.coords)


@dataclass(frozen=True)
class ExclusionSlab:
    """Per-coordinate excluded intervals; their product holds no improving point."""

    coords: tuple[IntervalLike, ...]

    @property
    def is_empty(self) -> bool:
        return any(c is EMPTY for c in self.coords)

    @property
    def volume(self) -> float:
        if self.is_empty:
            return 0.0
        return math.prod(c.wid for c in self.coords)


def _excluded(a: Interval, b: float) -> Interval:
    """Values of ``x`` for which ``g * x <= b`` fails for every ``g`` in ``a`` (``b < 0``)."""
    lo = b / a.hi if a.hi > 0.0 else -math.inf
    hi = b / a.lo if a.lo < 0.0 else math.inf
    return Interval(lo, hi)


def exclude_interval_1d(a: Interval, b: float) -> Interval:
    """Where ``a * x <= b`` is impossible, for ``0 in a`` and ``b < 0``.

    ``a = [-1, 2], b = -1`` gives ``[-0.5, 1]``.  A zero bound of ``a``
    makes the corresponding end an infinite ray.
    """
    if not (b < 0.0):
        raise DomainError(f"no exclusion is derivable for b = {b} >= 0")
    if not (a.lo <= 0.0 <= a.hi):
        raise DomainError(f"coefficient interval {a} must contain zero")
    return _excluded(a, b)


def split_inequality(
    grads: Sequence[Interval],
    offsets: Sequence[float],
    b: float,
    n: int | None = None,
    box: Box | None = None,
) -> ExclusionSlab:
    """Slab where ``sum_i g_i (x_i - offsets_i) <= b`` is impossible.

    The bound ``b`` is split as ``b / n`` across coordinates.  With ``box``
    given, coordinates of zero width do not share the budget (their term is
    identically zero) and each excluded interval is clamped to the box.
    """
    if not (b < 0.0):
        raise DomainError(f"no exclusion is derivable for b = {b} >= 0")
    if n is None:
        n = len(grads) if box is None else max(1, sum(1 for c in box if c.wid > 0.0))
    share = b / n
    coords = []
    for i, (g, m) in enumerate(zip(grads, offsets)):
        d = _excluded(g, share)
        x = Interval(m + d.lo, m + d.hi)
        if box is not None:
            x = iv.intersect(x, box[i])
        coords.append(x)
    return ExclusionSlab(tuple(coords))


def exclusion_from_record(
    e: Expr,
    box: Box,
    record_point: Sequence[float],
    grads: Sequence[Interval] | None = None,
    centered: CenteredForm | None = None,
) -> ExclusionSlab | None:
    """Slab of ``box`` that cannot contain a value below ``f(record_point)``.

    Returns None unless the record point beats the midpoint value.
    """
    mid = box.mid
    f_mid = eval_real(e, mid)
    f_rec = eval_real(e, record_point)
    b = f_rec - f_mid
    b += 4.0 * _EPS * (abs(f_rec) + abs(f_mid))
    if not (b < 0.0):
        return None
    if grads is None:
        grads = (centered or CenteredForm(e, box.n)).gradient_enclosure(box.coords)
    return split_inequality(grads, mid, b, box=box)


def carve_box(box: Box, slab: ExclusionSlab) -> list[Box]:
    """Cover ``box`` minus the slab product with at most ``2n`` boxes.

    Coordinates are processed in ascending order; once a coordinate has
    been carved it stays restricted to the slab for later pieces.
    """
    if slab.is_empty:
        return [box]
    current = list(box.coords)
    pieces = []
    for i, s in enumerate(slab.coords):
        s = iv.intersect(s, box[i])
        if s is EMPTY:
            return [box] if not pieces else pieces + [Box(tuple(current))]
        c = current[i]
        if s.lo > c.lo:
            current[i] = Interval(c.lo, s.lo)
            pieces.append(Box(tuple(current)))
        if s.hi < c.hi:
            current[i] = Interval(s.hi, c.hi)
            pieces.append(Box(tuple(current)))
        current[i] = s
    return pieces


def monotonicity_contract(e: Expr, box: Box, grads: Sequence[Interval] | None = None) -> Box:
    """Pin every coordinate along which ``e`` is strictly monotone to its minimizing end."""
    if grads is None:
        grads = CenteredForm(e, box.n).gradient_enclosure(box.coords)
    coords = list(box.coords)
    for i, g in enumerate(grads):
        c = coords[i]
        if g.lo > 0.0:
            coords[i] = Interval(c.lo, c.lo)
        elif g.hi < 0.0:
            coords[i] = Interval(c.hi, c.hi)
    return Box(tuple(coords))


def bisect_box(box: Box) -> tuple[Box, Box]:
    """Halve the widest coordinate (lowest index on ties)."""
    widths = box.widths
    k = max(range(box.n), key=lambda i: (widths[i], -i))
    c = box[k]
    m = c.mid
    if not (c.lo < m < c.hi):
        raise DegenerateError(f"cannot bisect box {box}")
    return box.replace(k, Interval(c.lo, m)), box.replace(k, Interval(m, c.hi))


@dataclass
class NDConfig:
    epsilon: float = 1e-6
    max_iter: int = 1_000_000
    seed: int = 0
    samples: int = 8
    volume_threshold: float = 0.01
    timing: bool = True
    trace: Callable[[TraceRecord], None] | None = None

    def __post_init__(self):
        if not (self.epsilon > 0.0):
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.samples < 0:
            raise DomainError("samples must be nonnegative")


@dataclass
class BoxItem:
    omega: float
    box: Box
    enclosure: Interval | None
    grads: tuple[Interval, ...] | None = field(default=None, repr=False)


@dataclass
class NDReport:
    items: list[BoxItem]
    iterations: int
    stop_reason: str
    trace: list[TraceRecord]
    record: float | None
    record_point: tuple[float, ...] | None
    min_enclosure: Interval | None
    exclusions: int = 0

    @property
    def boxes(self) -> list[Box]:
        return [it.box for it in self.items]


class _NDRun:
    def __init__(self, e: Expr, box: Box, cfg: NDConfig, modified: bool):
        for c in box:
            if not c.is_bounded:
                raise DomainError(f"search box {box} is unbounded")
        self.e = e
        self.cfg = cfg
        self.modified = modified
        self.cf = CenteredForm(e, box.n)
        self.rng = np.random.default_rng(cfg.seed)
        self.worklist = WorkList()
        self.emitted: list[BoxItem] = []
        self.trace: list[TraceRecord] = []
        self.clock = Stopwatch(cfg.timing)
        self.M = math.inf
        self.M_point = None
        self.iterations = 0
        self.exclusions = 0
        self.worklist.push((item := self.make_item(box)), item.box.max_width)
        self.record()

    def make_item(self, box: Box) -> BoxItem:
        F = None
        grads = None
        try:
            F = eval_interval(self.e, box.coords)
        except EnclosureError:
            pass
        try:
            Fc, grads = self.cf.enclose(box.coords)
            F = Fc if F is None else iv.intersect(F, Fc) or Fc
        except EnclosureError:
            pass
        omega = F.lo if F is not None else -math.inf
        return BoxItem(omega, box, F, grads)

    def probe(self, point) -> float | None:
        try:
            v = eval_real(self.e, point)
        except DomainError:
            return None
        if v < self.M:
            self.M, self.M_point = v, tuple(point)
        return v

    def record(self):
        wl = self.worklist
        self.trace.append(rec := TraceRecord(
            iteration=self.iterations,
            max_characteristic=wl.first.box.max_width if wl else 0.0,
            worklist_size=len(wl),
            record_value=None if math.isinf(self.M) else self.M,
            cumulative_ms=self.clock.ms(),
        ))
        if self.cfg.trace is not None:
            self.cfg.trace(rec)

    def push(self, box: Box):
        item = self.make_item(box)
        if item.enclosure is not None and item.enclosure.lo > self.M + _slack(self.M):
            return
        self.worklist.push(item, box.max_width)

    def sample(self, box: Box):
        lo = np.array([c.lo for c in box])
        hi = np.array([c.hi for c in box])
        best, best_v = None, math.inf
        for p in self.rng.uniform(lo, hi, size=(self.cfg.samples, box.n)):
            p = tuple(float(v) for v in np.clip(p, lo, hi))
            v = self.probe(p)
            if v is not None and v < best_v:
                best, best_v = p, v
        return best

    def try_exclusion(self, item: BoxItem) -> list[Box] | None:
        box = item.box
        if item.grads is None or box.max_width == 0.0:
            return None
        p = self.sample(box)
        if p is None:
            return None
        try:
            slab = exclusion_from_record(self.e, box, p, grads=item.grads)
        except DomainError:
            return None
        if slab is None or slab.is_empty:
            return None
        active = [i for i, c in enumerate(box) if c.wid > 0.0]
        ratio = math.prod(slab.coords[i].wid / box[i].wid for i in active)
        if ratio < self.cfg.volume_threshold:
            return None
        self.exclusions += 1
        return carve_box(box, slab)

    def step(self, item: BoxItem) -> bool:
        """Process one popped item; True means the stop rule fired."""
        box = item.box
        self.probe(box.mid)
        F = item.enclosure
        if F is not None:
            self.M = min(self.M, F.hi)
        if box.max_width < self.cfg.epsilon:
            self.worklist.push(item, box.max_width)
            return True
        if F is not None:
            if F.lo > self.M + _slack(self.M):
                return False
        if self.modified and item.grads is not None:
            pinned = monotonicity_contract(self.e, box, item.grads)
            if pinned != box:
                self.push(pinned)
                return False
            pieces = self.try_exclusion(item)
            if pieces is not None:
                for piece in pieces:
                    self.push(piece)
                return False
        try:
            children = bisect_box(box)
        except DegenerateError:
            self.emitted.append(item)
            return False
        for child in children:
            self.push(child)
        return False

    def run(self) -> NDReport:
        cfg, wl = self.cfg, self.worklist
        reason = "max_iter"
        while self.iterations < cfg.max_iter:
            if not wl:
                reason = "empty"
                break
            item = wl.pop()
            self.iterations += 1
            stop = self.step(item)
            self.record()
            if stop:
                reason = "converged"
                break
        items = list(wl) + self.emitted
        return NDReport(
            items, self.iterations, reason, self.trace,
            None if math.isinf(self.M) else self.M,
            self.M_point, self.min_enclosure(items), self.exclusions,
        )

    def min_enclosure(self, items) -> Interval | None:
        if math.isinf(self.M):
            return None
        lows = [it.enclosure.lo if it.enclosure is not None else -math.inf for it in items]
        lows = [v for v in lows if v <= self.M + _slack(self.M)]
        return Interval(min(min(lows, default=self.M), self.M), self.M)


def minimize_nd(e: Expr, box: Box | Sequence[Interval], cfg: NDConfig | None = None, modified: bool = False) -> NDReport:
    """Enclose the global minimum of ``e`` over ``box``.

    Stops when the popped box has every side narrower than ``epsilon``.
    The work list is ordered by the lower bound of the enclosure, so that
    box carries the smallest lower bound of all live boxes.
    """
    if not isinstance(box, Box):
        box = Box(tuple(box))
    return _NDRun(e, box, cfg or NDConfig(), modified).run()
