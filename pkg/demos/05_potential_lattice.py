"""Maximizers with the confining potential h = 1 + rho on the integer line.

The sufficient condition h(O) < m * ((2/p) mu(O)^(2-p/2) / deg(O))^(2/(p-2))
reads 1 < m/9 for p = 3, so m = 10 satisfies it and m = 1 does not.  The
maximizer is computed on balls of growing radius; its values near the origin
stop changing long before double precision can tell, so the solutions are
refined to 120 digits with Newton's method to measure the differences.
"""

import numpy as np

from nlsgraph import (IntegerLattice, PotentialProblem, PowerPotential, ball_subgraph, check_c3,
                      jphi, maximize_constrained, truncation_study)
from nlsgraph.energy import lambda1_upper_bound

lat = IntegerLattice(1, PowerPotential(1.0, 1.0, 1.0))
g = ball_subgraph(lat, lat.origin, 32)

for m in (1.0, 10.0):
    c3 = check_c3(g, g.potential, "0", 3, m)
    print(f"m={m:g}: condition {'holds' if c3.holds else 'fails'} "
          f"(h(O)={c3.lhs:g}, bound {c3.rhs:.4f}); Jcal(sqrt(m) phi) = {jphi(g, g.potential, '0', 3, m):+.4f}")

sol = maximize_constrained(g, PotentialProblem(3, 10.0, "0"))
print(f"\nm=10 maximizer: Jcal={sol.energy:.6f}, lambda={sol.lam:.6f}, u near 0: {np.round(sol.u[:5], 5)}")
unit = maximize_constrained(g, PotentialProblem(3, 1.0, "0"))
print(f"m=1 maximizer: Jcal={unit.energy:.6f} <= bound {lambda1_upper_bound(g, g.potential, 3):.6f}")

rep = truncation_study(PotentialProblem(3, 10.0, "0", generator=lat), [8, 16, 32, 64], digits=120)
print("\nradius   change on the inner half ball")
for r, d in zip(rep.radii[1:], rep.center_deltas):
    print(f"{r:6d}   {d:.3e}")
