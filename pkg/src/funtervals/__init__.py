"""Linear functional interval arithmetic and verified interval solvers."""

__version__ = "0.1.0"

from .errors import ContractError, DegenerateError, DomainError, EnclosureError, FuntervalError, ParseError
from .interval import EMPTY, Interval
from .expr import (
    CenteredForm,
    Polynomial,
    differentiate,
    eval_centered,
    eval_interval,
    eval_real,
    parse,
    rouche_bound,
)
from .lfr import DomainMap, Line, LinFunInterval, eval_lfr
from .solve1d import Arithmetic, Characteristic, SolverConfig, SolverReport, find_roots, minimize
from .solvend import Box, NDConfig, NDReport, minimize_nd
from .trace import TraceRecord

__all__ = [
    "Arithmetic", "Box", "CenteredForm", "Characteristic", "ContractError", "DegenerateError",
    "DomainError", "DomainMap", "EMPTY", "EnclosureError", "FuntervalError", "Interval", "Line",
    "LinFunInterval", "NDConfig", "NDReport", "ParseError", "Polynomial", "SolverConfig",
    "SolverReport", "TraceRecord", "differentiate", "eval_centered", "eval_interval", "eval_lfr",
    "eval_real", "find_roots", "minimize", "minimize_nd", "parse", "rouche_bound",
]
