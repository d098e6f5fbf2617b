# The multivariate solver: exclusion slabs, carving and the two solver modes.
from funtervals import Interval
from funtervals.expr import parse
from funtervals.solvend import Box, NDConfig, carve_box, exclude_interval_1d, exclusion_from_record, minimize_nd

# where can [-1, 2] * x <= -1 hold?  nowhere inside the excluded interval
print("excluded:", exclude_interval_1d(Interval(-1, 2), -1))

# a better point than the midpoint lets us cut a slab out of the box
f = parse("x1^2 + x2^2", 2)
box = Box.cube(1, 3, 2)
slab = exclusion_from_record(f, box, (1.0, 1.0))
print("slab:", slab.coords)
pieces = carve_box(box, slab)
print(f"{len(pieces)} pieces, volume {sum(p.volume for p in pieces):.4f} of {box.volume}")

# both modes on Rosenbrock
rosen = parse("100*(x2 - x1^2)^2 + (1 - x1)^2", 2)
for modified in (False, True):
    r = minimize_nd(rosen, Box.cube(-100, 100, 2), NDConfig(epsilon=1e-4), modified)
    mode = "modified" if modified else "classical"
    print(f"{mode:>9}: {r.iterations} iterations, {r.exclusions} exclusions, min in {r.min_enclosure}, at {r.record_point}")
