"""Brute-force references for tiny graphs and finite-difference gradient checks.

The oracle evaluates the functionals straight from the double-sum definitions
over an angular grid of the non-negative part of the constraint sphere and
zooms in on the best cell; it shares no code with the descent solvers.
"""

from dataclasses import dataclass
import itertools

import numpy as np

from . import energy
from .errors import TooManyVertices
from .graph import as_function
from .solution import Solution


@dataclass(frozen=True)
class GridSpec:
    resolution: int = 2000
    refine: int = 14
    zoom_points: int = 41

    def __post_init__(self):
        if self.resolution < 10 or self.zoom_points < 5:
            raise ValueError("grid too coarse")


def _batch_parts(g, X, p):
    # 1/2 int|grad u|^2 = 1/4 sum_x sum_{y~x} w_xy (u(y)-u(x))^2
    kin = np.zeros(len(X))
    for x in range(g.n):
        for y, w in g.neighbors[x]:
            kin += 0.25 * w * (X[:, y] - X[:, x]) ** 2
    nonlin = (np.abs(X) ** p) @ g.mu / p
    return kin, nonlin


def _points(angles, radii):
    """Map angles in [0, pi/2]^(n-1) to the weighted sphere, non-negative part."""
    if angles.shape[1] == 1:
        t = angles[:, 0]
        s = np.stack([np.cos(t), np.sin(t)], axis=1)
    else:
        t, f = angles[:, 0], angles[:, 1]
        s = np.stack([np.sin(f) * np.cos(t), np.sin(f) * np.sin(t), np.cos(f)], axis=1)
    return s * radii


def brute_force_extremum(g, spec, sense="min", grid=None):
    """Minimize J (``sense="min"``) or maximize Jcal (``"max"``) over
    ``{u >= 0 : int h u^2 dmu = m}`` for graphs with 2 or 3 vertices."""
    grid = grid or GridSpec()
    if g.n not in (2, 3):
        raise TooManyVertices(f"brute force handles 2 or 3 vertices, got {g.n}")
    if sense not in ("min", "max"):
        raise ValueError("sense must be 'min' or 'max'")
    p = energy.check_exponent(spec.p)
    h = np.ones(g.n) if spec.h is None else as_function(g, spec.h)
    radii = np.sqrt(spec.m / (g.mu * h))
    dim = g.n - 1
    if dim == 1 and grid.resolution < 1000:
        raise ValueError("1-D searches need resolution >= 1000")

    def objective(ang):
        kin, nl = _batch_parts(g, _points(ang, radii), p)
        # maximizing Jcal = nl - kin is minimizing J = kin - nl
        return kin - nl

    res = grid.resolution if dim == 1 else max(grid.resolution // 5, 50)
    axes = [np.linspace(0.0, np.pi / 2, res)] * dim
    step = np.pi / 2 / (res - 1)
    evals = 0
    best = None
    for _ in range(grid.refine + 1):
        ang = np.array(list(itertools.product(*axes)))
        vals = objective(ang)
        evals += len(vals)
        k = int(np.argmin(vals))
        best = ang[k]
        half = 2 * step
        axes = [np.linspace(max(0.0, c - half), min(np.pi / 2, c + half), grid.zoom_points) for c in best]
        step = 2 * half / (grid.zoom_points - 1)

    u = _points(best[None, :], radii)[0]
    e = energy.energy_components(g, u, p)
    lam = energy.lagrange_multiplier(g, u, p, spec.m, spec.h)
    return Solution(
        u=u, lam=lam, energy=e.J if sense == "min" else e.Jcal,
        residual=energy.el_residual(g, u, lam, p, spec.h),
        mass=energy.constraint_mass(g, u, spec.h), iterations=evals, converged=True,
        m=float(spec.m), p=p,
    )


def fd_gradient_check(g, u, p, step=1e-6):
    """Largest deviation, over the vertex-indicator directions, between the
    analytic directional derivative of J and a central difference, relative to
    max(1, largest derivative)."""
    if not step > 0:
        raise ValueError("step must be positive")
    p = energy.check_exponent(p)
    u = as_function(g, u)
    analytic = np.empty(g.n)
    numeric = np.empty(g.n)
    for k in range(g.n):
        e = np.zeros(g.n)
        e[k] = 1.0
        analytic[k] = energy.directional_derivative(g, u, e, p)
        numeric[k] = (energy.J(g, u + step * e, p) - energy.J(g, u - step * e, p)) / (2 * step)
    return float(np.max(np.abs(analytic - numeric)) / max(1.0, float(np.max(np.abs(analytic)))))
