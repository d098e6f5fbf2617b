# Linear functional intervals: bounds that are lines instead of numbers.
from funtervals import Interval
from funtervals.expr import eval_interval, parse
from funtervals.lfr import DomainMap, LinFunInterval, eval_lfr

dom = DomainMap(Interval(-1, 1))
t = LinFunInterval.variable(dom)

# x - x is exactly zero here, while classical intervals only know "somewhere in [-2, 2]"
print("t - t       ", t - t)
print("classical   ", eval_interval(parse("x - x"), Interval(-1, 1)))

# squaring keeps the dependency on t: lower bound touches t^2 at 0, upper at both ends
sq = t * t
print("t * t       ", sq, " ran", sq.ran())

# division needs a denominator that stays away from zero
print("t / (t + 3) ", t / (t + 3))

# the cubic from the root finding demo, over a narrow box around its positive root
e = parse("x^3 - x^2 - x")
box = Interval(1.6, 1.64)
F = eval_lfr(e, box)
print("cubic over", box)
print("  functional ", F)
print("  ran        ", F.ran())
print("  classical  ", eval_interval(e, box))
