"""Cross-checking the solver against an exhaustive search.

On two- and three-vertex graphs the constraint sphere is a curve or a surface
that can be scanned directly; the descent solver and the scan must agree.
"""

import numpy as np

from nlsgraph import ProblemSpec, brute_force_extremum, build_graph, fd_gradient_check, minimize

graphs = {
    "edge, mu=(1,1)": build_graph({"a": 1.0, "b": 1.0}, [("a", "b", 1.0)]),
    "edge, mu=(1,4)": build_graph({"a": 1.0, "b": 4.0}, [("a", "b", 1.0)]),
    "path, mu=(0.5,2,7)": build_graph({"a": 0.5, "b": 2.0, "c": 7.0}, [("a", "b", 1.5), ("b", "c", 0.3)]),
}
for name, g in graphs.items():
    for p, m in ((3.0, 1.0), (4.0, 20.0)):
        ref = brute_force_extremum(g, ProblemSpec(p, m))
        sol = minimize(g, p, m)
        print(f"{name:20s} p={p:g} m={m:4g}  J scan={ref.energy:+.10f}  J solver={sol.energy:+.10f}  "
              f"|du|={np.max(np.abs(ref.u - sol.u)):.1e}")

g = graphs["path, mu=(0.5,2,7)"]
u = np.array([0.3, -1.2, 2.0])
print(f"\nfinite-difference gradient deviation: {fd_gradient_check(g, u, 3.0):.1e}")
