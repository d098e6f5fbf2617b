"""Command-line interface.

Exit status: 0 on success, 2 on a configuration error (bad flags, malformed
expression or domain), 3 when the solver itself fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import re
import statistics
import sys
import time
from pathlib import Path

from . import __version__, corpus
from .errors import FuntervalError, ParseError
from .expr import Expr, Polynomial, infer_arity, parse, rouche_bound
from .interval import Interval
from .solve1d import Arithmetic, Characteristic, SolverConfig, find_roots, minimize
from .solvend import Box, NDConfig, minimize_nd
from .trace import write_trace

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 2, 3

COMPARE_HEADER = "# funtervals-compare v1"
BENCH_HEADER = "# funtervals-bench v1"
MODES = ("classical", "centered", "lfr")


class ConfigError(Exception):
    pass


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?|[-+]?inf"
_PAIR = re.compile(rf"\s*\[\s*({_NUM})\s*,\s*({_NUM})\s*\]\s*")


def parse_interval(text: str) -> Interval:
    m = _PAIR.fullmatch(text)
    if not m:
        raise ConfigError(f"cannot read interval {text!r}; expected \"[lo, hi]\"")
    try:
        return Interval(float(m.group(1)), float(m.group(2)))
    except FuntervalError as exc:
        raise ConfigError(str(exc)) from None


def parse_box(text: str, arity: int) -> Box:
    """``"[l,r]"`` (repeated for every coordinate) or ``"[l1,r1]x[l2,r2]..."``."""
    parts = re.split(r"(?<=\])\s*[x×]\s*(?=\[)", text.strip())
    coords = [parse_interval(p) for p in parts]
    if len(coords) == 1:
        coords = coords * arity
    if len(coords) != arity:
        raise ConfigError(f"box has {len(coords)} coordinates but the expression needs {arity}")
    return Box(tuple(coords))


def parse_n_range(text: str) -> range:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise ConfigError(f"cannot read --n-range {text!r}; expected a..b")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    if hi < lo:
        raise ConfigError(f"empty --n-range {text!r}")
    return range(lo, hi + 1)


def auto_domain(e: Expr, task: str) -> Interval:
    try:
        p = Polynomial.from_expr(e)
    except FuntervalError as exc:
        raise ConfigError(f"--domain auto: {exc}") from None
    if task == "roots":
        try:
            return rouche_bound(p)
        except FuntervalError as exc:
            raise ConfigError(f"--domain auto: {exc}") from None
    if p.degree < 2 or p.degree % 2 or p.coeffs[-1] < 0.0:
        raise ConfigError("--domain auto needs an even-degree polynomial with positive leading coefficient")
    return rouche_bound(p.derivative())


# -- argument handling ------------------------------------------------------

def _problem_args(p: argparse.ArgumentParser):
    p.add_argument("--expr", help="expression in the documented grammar")
    p.add_argument("--preset", help="load expression and settings from a corpus problem")
    p.add_argument("--domain", help='"auto" (polynomials) or "[lo, hi]"')
    p.add_argument("--arithmetic", choices=MODES)
    p.add_argument("--char", choices=("mag", "wid"), help="characteristic: -mag or -wid of the enclosure")
    p.add_argument("--eps", type=float)
    p.add_argument("--max-iter", type=int)
    p.add_argument("--trace", help="trace output path (.csv or .json)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timing", action="store_true", help="write 0.0 instead of wall-clock times")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="funtervals", description="Functional interval solvers.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="enclose all zeros of a univariate function")
    _problem_args(p)

    p = sub.add_parser("minimize", help="enclose the global minimum")
    _problem_args(p)
    p.add_argument("--nd", action="store_true", help="multivariate box solver")
    p.add_argument("--modified", action="store_true", help="enable sampling, pinning and exclusion (with --nd)")
    p.add_argument("--arity", type=int, help="number of variables for --nd (default: inferred)")

    p = sub.add_parser("compare", help="run all three arithmetics and merge their traces")
    _problem_args(p)
    p.add_argument("--task", choices=("roots", "minimize"))

    p = sub.add_parser("bench-nd", help="classical versus modified box solver on a built-in suite")
    p.add_argument("suite", choices=("table1", "rastrigin", "rosenbrock"))
    p.add_argument("--n-range", default=None, help="dimensions a..b (rastrigin, rosenbrock)")
    p.add_argument("--repeats", type=int, default=20)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int)
    p.add_argument("--domain-scale", type=float, help="shrink every domain by this factor")
    p.add_argument("--no-timing", action="store_true")
    return parser


class _Problem:
    def __init__(self, args, task: str):
        stored = None
        if args.preset:
            try:
                stored = corpus.load(args.preset)
            except FuntervalError as exc:
                raise ConfigError(str(exc)) from None
        preset = stored.meta if stored else {}
        text = args.expr if args.expr is not None else (stored.text if stored else None)
        if text is None:
            raise ConfigError("--expr (or --preset) is required")
        self.text = text
        self.nd = bool(getattr(args, "nd", False)) or preset.get("task") == "minimize_nd"
        arity = getattr(args, "arity", None) or preset.get("arity") or infer_arity(text)
        self.arity = arity if self.nd else 1
        try:
            self.expr = parse(text, self.arity)
        except ParseError as exc:
            raise ConfigError(exc.diagnostic()) from None
        self.task = task
        self.eps = args.eps if args.eps is not None else preset.get("epsilon", 1e-6 if self.nd else 1e-2)
        self.max_iter = args.max_iter if args.max_iter is not None else preset.get("max_iter", 1_000_000 if self.nd else 10000)
        default_char = "mag" if task == "roots" else "wid"
        self.char = args.char or preset.get("characteristic", default_char)
        self.arithmetic = args.arithmetic
        self.seed = args.seed
        self.timing = not args.no_timing
        self.trace = args.trace
        if self.eps is None or not self.eps > 0:
            raise ConfigError("--eps must be positive")
        if self.max_iter < 1:
            raise ConfigError("--max-iter must be at least 1")
        dom = args.domain
        if dom is None:
            dom = preset.get("domain", None if self.nd else "auto")
        if dom is None:
            raise ConfigError("--domain is required with --nd")
        if isinstance(dom, list):
            dom = "x".join(f"[{lo!r},{hi!r}]" for lo, hi in dom) if isinstance(dom[0], list) else f"[{dom[0]!r},{dom[1]!r}]"
        if self.nd:
            self.domain = parse_box(dom, self.arity)
        elif dom.strip() == "auto":
            self.domain = auto_domain(self.expr, task)
        else:
            self.domain = parse_interval(dom)

    def config(self, arithmetic: str) -> SolverConfig:
        return SolverConfig(
            arithmetic=Arithmetic(arithmetic),
            characteristic=Characteristic(self.char),
            epsilon=self.eps,
            max_iter=self.max_iter,
            timing=self.timing,
        )


def _out(line: str = ""):
    sys.stdout.write(line + "\n")


def _header(prob: _Problem, arithmetic: str):
    _out(f"problem: {prob.text}")
    _out(f"domain: {prob.domain}")
    _out(f"arithmetic: {arithmetic}  characteristic: -{prob.char}  epsilon: {prob.eps!r}")


def cmd_roots(args) -> int:
    prob = _Problem(args, "roots")
    arithmetic = prob.arithmetic or "lfr"
    rep = find_roots(prob.expr, prob.domain, prob.config(arithmetic))
    if prob.trace:
        write_trace(prob.trace, rep.trace)
    _header(prob, arithmetic)
    _out(f"iterations: {rep.iterations}  stop: {rep.stop_reason}")
    _out(f"certified ({len(rep.certified)}):")
    for I in rep.certified:
        _out(f"  {I}")
    _out(f"uncertified ({len(rep.uncertified)}):")
    for I in rep.uncertified:
        _out(f"  {I}")
    clusters = rep.clusters()
    _out(f"root clusters ({len(clusters)}):")
    for I, cert in clusters:
        _out(f"  {I}{'  certified' if cert else ''}")
    return EXIT_OK


def cmd_minimize(args) -> int:
    prob = _Problem(args, "minimize")
    if prob.nd:
        if prob.arithmetic not in (None, "centered"):
            raise ConfigError("--nd always uses centered forms; drop --arithmetic")
        cfg = NDConfig(epsilon=prob.eps, max_iter=prob.max_iter, seed=prob.seed, timing=prob.timing)
        rep = minimize_nd(prob.expr, prob.domain, cfg, modified=args.modified)
        if prob.trace:
            write_trace(prob.trace, rep.trace)
        _out(f"problem: {prob.text}")
        _out(f"domain: {prob.domain}")
        _out(f"mode: {'modified' if args.modified else 'classical'}  epsilon: {prob.eps!r}  seed: {prob.seed}")
        _out(f"iterations: {rep.iterations}  stop: {rep.stop_reason}  exclusions: {rep.exclusions}")
        _out(f"min enclosure: {rep.min_enclosure}")
        if rep.record_point is not None:
            _out("record point: (" + ", ".join(f"{v:.17g}" for v in rep.record_point) + ")")
        return EXIT_OK
    arithmetic = prob.arithmetic or "lfr"
    rep = minimize(prob.expr, prob.domain, prob.config(arithmetic))
    if prob.trace:
        write_trace(prob.trace, rep.trace)
    _header(prob, arithmetic)
    _out(f"iterations: {rep.iterations}  stop: {rep.stop_reason}")
    _out(f"min enclosure: {rep.min_enclosure}")
    _out(f"record: {rep.record!r}")
    _out(f"live intervals ({len(rep.items)}):")
    for it in rep.items:
        _out(f"  {it.domain}")
    return EXIT_OK


def verdict(iterations: dict[str, int]) -> str:
    order = sorted(iterations, key=lambda m: (iterations[m], MODES.index(m)))
    out = order[0]
    for prev, cur in zip(order, order[1:]):
        out += (" = " if iterations[prev] == iterations[cur] else " < ") + cur
    return out


def merged_csv(traces: dict) -> str:
    buf = io.StringIO()
    buf.write(COMPARE_HEADER + "\n")
    w = csv.writer(buf, lineterminator="\n")
    cols = ["iteration"]
    for field in ("max_char", "worklist_size", "cumulative_ms"):
        cols += [f"{field}_{m}" for m in MODES]
    w.writerow(cols)
    length = max(len(t) for t in traces.values())
    for i in range(length):
        row = [i]
        for field in ("max_characteristic", "worklist_size", "cumulative_ms"):
            for m in MODES:
                t = traces[m]
                row.append(repr(getattr(t[i], field)) if i < len(t) else "")
        w.writerow(row)
    return buf.getvalue()


def cmd_compare(args) -> int:
    task = args.task
    prob = _Problem(args, task or "roots")
    if task is None and args.preset:
        task = "minimize" if corpus.load(args.preset).task.startswith("minimize") else "roots"
        prob = _Problem(args, task)
    task = task or "roots"
    if prob.nd:
        raise ConfigError("compare runs the univariate solvers only")
    solve = find_roots if task == "roots" else minimize
    reports = {m: solve(prob.expr, prob.domain, prob.config(m)) for m in MODES}
    if prob.trace:
        Path(prob.trace).write_text(merged_csv({m: r.trace for m, r in reports.items()}), encoding="utf-8")
    _out(f"problem: {prob.text}")
    _out(f"task: {task}  domain: {prob.domain}  characteristic: -{prob.char}  epsilon: {prob.eps!r}")
    for m in MODES:
        r = reports[m]
        extra = f"  min enclosure: {r.min_enclosure}" if task == "minimize" else f"  intervals: {len(r.items)}"
        _out(f"{m:>9}: iterations {r.iterations}  stop: {r.stop_reason}{extra}")
    _out(f"verdict: {verdict({m: r.iterations for m, r in reports.items()})}")
    return EXIT_OK


def _scaled_box(problem: corpus.Problem, scale: float) -> Box:
    return Box(tuple(Interval(c.lo / scale, c.hi / scale) for c in problem.domain))


def cmd_bench_nd(args) -> int:
    if args.repeats < 1:
        raise ConfigError("--repeats must be at least 1")
    problems = corpus.suite(args.suite)
    if args.n_range is not None:
        if args.suite == "table1":
            raise ConfigError("--n-range does not apply to table1")
        ns = parse_n_range(args.n_range)
        problems = [p for p in problems if p.arity in ns]
        if not problems:
            raise ConfigError(f"no {args.suite} problems for n in {args.n_range}")
    rows = []
    for prob in problems:
        scale = args.domain_scale or prob.meta.get("domain_scale", 1.0)
        box = _scaled_box(prob, scale)
        e = prob.expr
        result = {}
        for modified in (False, True):
            cfg = NDConfig(
                epsilon=prob.epsilon,
                max_iter=args.max_iter or prob.meta.get("max_iter", 1_000_000),
                seed=args.seed,
                timing=not args.no_timing,
            )
            times, rep = [], None
            for _ in range(args.repeats):
                t0 = time.perf_counter()
                rep = minimize_nd(e, box, cfg, modified=modified)
                times.append(time.perf_counter() - t0 if not args.no_timing else 0.0)
            result[modified] = (statistics.fmean(times), rep)
        (tc, rc), (tm, rm) = result[False], result[True]
        a, b = rc.min_enclosure, rm.min_enclosure
        agree = a is not None and b is not None and max(a.lo, b.lo) <= min(a.hi, b.hi) + 2 * prob.epsilon
        rows.append([prob.name, prob.meta.get("row"), prob.arity, repr(tc), repr(tm),
                     repr(tm / tc) if tc > 0 else "", repr(a.lo), repr(a.hi), repr(b.lo), repr(b.hi),
                     rc.iterations, rm.iterations, int(agree)])
    cols = ["name", "row", "n", "classical_mean_s", "modified_mean_s", "ratio",
            "classical_min_lo", "classical_min_hi", "modified_min_lo", "modified_min_hi",
            "classical_iterations", "modified_iterations", "agree"]
    buf = io.StringIO()
    buf.write(BENCH_HEADER + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    w.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue(), encoding="utf-8")
    _out(f"suite: {args.suite}  repeats: {args.repeats}")
    _out(f"{'problem':<16}{'n':>3}{'classical s':>14}{'modified s':>14}  {'classical min':<44}{'modified min':<44}agree")
    for r in rows:
        _out(f"{r[0]:<16}{r[2]:>3}{float(r[3]):>14.4f}{float(r[4]):>14.4f}  "
             f"{'[' + r[6] + ', ' + r[7] + ']':<44}{'[' + r[8] + ', ' + r[9] + ']':<44}{'yes' if r[12] else 'NO'}")
    if not all(r[12] for r in rows):
        sys.stderr.write("warning: classical and modified minima disagree on some rows\n")
    return EXIT_OK


COMMANDS = {"roots": cmd_roots, "minimize": cmd_minimize, "compare": cmd_compare, "bench-nd": cmd_bench_nd}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except FuntervalError as exc:
        if isinstance(exc, ParseError):
            sys.stderr.write(f"error: {exc.diagnostic()}\n")
            return EXIT_CONFIG
        sys.stderr.write(f"solver error: {exc}\n")
        return EXIT_SOLVER
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
