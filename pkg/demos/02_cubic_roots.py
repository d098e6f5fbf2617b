# Root isolation for x^3 - x^2 - x with all three arithmetics.
import math

from funtervals.expr import parse, rouche_bound
from funtervals.solve1d import SolverConfig, find_roots

e = parse("x^3 - x^2 - x")

# a polynomial's real roots lie inside its Rouche bound, which gives the search domain
domain = rouche_bound(e)
print("domain:", domain)

for arithmetic in ("classical", "centered", "lfr"):
    report = find_roots(e, domain, SolverConfig(arithmetic=arithmetic, characteristic="mag", epsilon=1e-2))
    print(f"\n{arithmetic}: {report.iterations} iterations, {len(report.items)} intervals")
    for hull, certified in report.clusters():
        print(f"   {hull}  {'certified' if certified else ''}")

# the closed form roots, for comparison
print("\nexact:", [(1 - math.sqrt(5)) / 2, 0.0, (1 + math.sqrt(5)) / 2])
