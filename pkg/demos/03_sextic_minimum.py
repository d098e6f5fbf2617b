# Global minimum of a degree six polynomial, and the per-iteration traces.
from pathlib import Path

from funtervals import Interval
from funtervals.expr import parse
from funtervals.solve1d import SolverConfig, minimize
from funtervals.trace import write_trace

e = parse("x^6 + x^5 - 10*x^4 - 8*x^3 + 15*x^2 + 11")
domain = Interval(-7.67, 7.67)
out = Path("demo_traces")
out.mkdir(exist_ok=True)

for arithmetic in ("classical", "centered", "lfr"):
    cfg = SolverConfig(arithmetic=arithmetic, characteristic="wid", epsilon=1e-2)
    report = minimize(e, domain, cfg)
    path = out / f"sextic_{arithmetic}.csv"
    write_trace(path, report.trace)
    print(f"{arithmetic:>9}: {report.iterations:5d} iterations  min in {report.min_enclosure}  -> {path}")

# a tighter run, the enclosure shrinks to a few units in the last place
fine = minimize(e, domain, SolverConfig(arithmetic="lfr", characteristic="wid", epsilon=1e-10))
print("\neps 1e-10:", fine.iterations, "iterations, min in", fine.min_enclosure)
