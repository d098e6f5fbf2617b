"""Built-in problems: ``corpus/<name>.expr`` plus ``corpus/<name>.meta`` (JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import DomainError
from .expr import Expr, parse
from .interval import Interval

CORPUS_VERSION = 1


@dataclass(frozen=True)
class Problem:
    name: str
    text: str
    meta: dict

    @property
    def arity(self) -> int:
        return int(self.meta.get("arity", 1))

    @property
    def expr(self) -> Expr:
        return parse(self.text, self.arity)

    @property
    def task(self) -> str:
        return self.meta["task"]

    @property
    def epsilon(self) -> float:
        return float(self.meta["epsilon"])

    @property
    def domain(self):
        """``"auto"``, an Interval, or a tuple of Intervals for box problems."""
        d = self.meta["domain"]
        if d == "auto":
            return d
        if isinstance(d[0], (int, float)):
            return Interval(*d)
        return tuple(Interval(lo, hi) for lo, hi in d)


def _root():
    return resources.files(__package__).joinpath("corpus")


@lru_cache(maxsize=None)
def names() -> tuple[str, ...]:
    return tuple(sorted(p.name[:-5] for p in _root().iterdir() if p.name.endswith(".expr")))


@lru_cache(maxsize=None)
def load(name: str) -> Problem:
    root = _root()
    expr_file, meta_file = root.joinpath(f"{name}.expr"), root.joinpath(f"{name}.meta")
    if not expr_file.is_file():
        raise DomainError(f"unknown corpus problem {name!r}; available: {', '.join(names())}")
    meta = json.loads(meta_file.read_text(encoding="utf-8"))
    if meta.get("version") != CORPUS_VERSION:
        raise DomainError(f"{name}.meta has unsupported version {meta.get('version')!r}")
    return Problem(name, expr_file.read_text(encoding="utf-8").strip(), meta)


def suite(name: str) -> list[Problem]:
    """Problems tagged with ``suite == name``, ordered by row."""
    found = [load(n) for n in names() if load(n).meta.get("suite") == name]
    if not found:
        raise DomainError(f"unknown suite {name!r}")
    return sorted(found, key=lambda p: p.meta.get("row", 0))
