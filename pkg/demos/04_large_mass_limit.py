"""The limit m -> infinity of rescaled minimizers.

The sweep multiplies the mass by 10 until two consecutive rescaled solutions
agree to 1e-8.  The limit solves |w|^(p-2) w = ||w||_p^p w, so it equals
mu(S)^(-1/2) on its support S and vanishes elsewhere; the minimizers pick a
single vertex.
"""

import numpy as np

from nlsgraph import ProblemSpec, classify_large_mass_limit, load_fixture, sweep_until_settled

for name in ("g6-uniform", "path3", "g6-table1"):
    g, _ = load_fixture(name)
    recs = sweep_until_settled(g, ProblemSpec(3, 10.0), 10.0, factor=10.0)
    lim = classify_large_mass_limit(g, recs)
    print(f"{name}: settled at m = {recs[-1].m:.0e}, support {lim.support}, "
          f"w = {np.round(lim.limit_fn, 6)}")
    print(f"   limit residual {lim.residual:.1e}, distance to mu(S)^(-1/2) {lim.structure_error:.1e}")
