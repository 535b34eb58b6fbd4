"""The limit m -> 0 of rescaled minimizers v_m = u_m / sqrt(m).

With unit measure the rescaled minimizer is the constant 1/sqrt(6) all the
way down and the multiplier tends to 0.  With the non-uniform measure the
minimizers again tend to the constant: a positive solution cannot approach a
sign-changing eigenfunction.  The eigenfunction alternative is illustrated by
continuing the second eigenpair with Newton's method, which produces a
signed branch whose multiplier tends to minus the eigenvalue.
"""

import numpy as np

from nlsgraph import ProblemSpec, classify_small_mass_limit, generalized_eigenpair, load_fixture, mass_sweep
from nlsgraph.asymptotics import SweepRecord
from nlsgraph.refine import newton_refine
from nlsgraph.solution import Solution

masses = np.geomspace(10, 1e-6, 25)
for name in ("g6-uniform", "g6-table1"):
    g, _ = load_fixture(name)
    recs = mass_sweep(g, ProblemSpec(3, 10.0), masses)
    lim = classify_small_mass_limit(g, recs)
    print(f"{name}: limit {lim.kind}, v = {np.round(lim.limit_fn, 4)}, lambda_0 = {lim.limit_multiplier:.3g}")
    for r in recs[::6]:
        print(f"   m={r.m:9.3g}  lambda_m={r.lambda_m:+.3e}  v={np.round(r.rescaled, 4)}")

g, _ = load_fixture("g6-table1")
pairs = generalized_eigenpair(g)
print("\neigenvalues of -Delta for measure (3,2,10,1,40,1):", np.round([lam for lam, _ in pairs], 4))
lam2, x = pairs[1]
lam = -lam2
recs = []
for m in np.geomspace(1e-2, 1e-20, 10):
    k = m ** 0.5
    x, lam, _ = newton_refine(g, None, 3, k, 1.0, x, lam)
    sol = Solution(u=np.sqrt(m) * x, lam=lam, energy=0.0, residual=0.0, mass=m, iterations=0,
                   converged=True, m=m, p=3)
    recs.append(SweepRecord(m, sol, x.copy(), lam, lam / k))
lim = classify_small_mass_limit(g, recs)
print(f"signed branch: limit {lim.kind}, lambda_0 = {lim.limit_multiplier:.6f}, "
      f"matched eigenvalue {lim.matched_eigenvalue:.6f}, eigen-residual {lim.residual:.1e}")
