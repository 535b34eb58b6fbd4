"""Solver options, the Solution record and the restart driver shared by the
finite-graph and potential solvers."""

from dataclasses import dataclass, field

import numpy as np

from . import energy
from ._descent import sphere_descent
from .errors import DisconnectedGraph, NonPositiveMass, NotConverged
from .graph import as_function

TIE_ATOL = 1e-12


@dataclass
class SolverOptions:
    """Knobs for the projected-gradient solvers.

    ``initial`` is ``"perturbed"`` (restart k starts from the constant
    candidate with a seeded relative perturbation of size 0.1*k),
    ``"constant"`` (a single run from the constant), or an array used for the
    first run, the remaining restarts being perturbed constants.

    ``variable="rescaled"`` iterates on v = u/sqrt(m) with the forcing
    coefficient m^(p/2-1) factored out, which is what keeps huge masses
    finite; ``"direct"`` iterates on u itself.
    """

    tol: float = 1e-10
    max_iter: int = 1_000_000
    initial: object = "perturbed"
    sigma: float = 1e-4
    shrink: float = 0.5
    seed: int = 0
    restarts: int = 8
    variable: str = "rescaled"
    trace: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1 or self.restarts < 1:
            raise ValueError("max_iter and restarts must be >= 1")
        if self.variable not in ("rescaled", "direct"):
            raise ValueError(f"unknown variable mode {self.variable!r}")


@dataclass
class Solution:
    """A normalized solution and its diagnostics.

    ``energy`` is J(u) for the finite problem and Jcal(u) for the potential
    problem.  ``residual`` is the sup norm of the Euler-Lagrange residual of
    the iterated variable, relative to the largest of its terms (floored at 1);
    use :func:`nlsgraph.energy.el_residual` for the absolute residual in u.
    """

    u: np.ndarray
    lam: float
    energy: float
    residual: float
    mass: float
    iterations: int
    converged: bool
    m: float
    p: float
    restart: int = 0
    trace: list = field(default_factory=list, repr=False)

    @property
    def rescaled(self):
        return self.u / np.sqrt(self.m)


def validate(g, p, m):
    p = energy.check_exponent(p)
    if not m > 0:
        raise NonPositiveMass(f"mass must be positive, got {m!r}")
    if not g.connected:
        raise DisconnectedGraph("solvers need a connected graph")
    return p, float(m)


def starting_points(g, h, opts):
    const = np.full(g.n, 1.0 / np.sqrt(float(np.dot(g.mu, h))))
    if isinstance(opts.initial, str):
        if opts.initial == "constant":
            return [const]
        if opts.initial != "perturbed":
            raise ValueError(f"unknown initial mode {opts.initial!r}")
        first = const
    else:
        first = np.abs(as_function(g, opts.initial))
        if not np.any(first > 0):
            raise ValueError("initial guess must not vanish identically")
    starts = [first]
    for k in range(1, opts.restarts):
        xi = np.random.default_rng([opts.seed, k]).uniform(-1.0, 1.0, g.n)
        starts.append(const * (1.0 + 0.1 * k * xi))
    return starts


def solve_on_sphere(g, p, m, h, opts, maximize):
    """Run every restart and keep the best converged one.

    Minimizes J (``maximize=False``) or maximizes Jcal (``maximize=True``) on
    ``{int h u^2 = m}``; both reduce to minimizing the same descent objective.
    """
    p, m = validate(g, p, m)
    h = np.ones(g.n) if h is None else energy._potential(g, h)
    kappa = m ** (p / 2 - 1)
    if opts.variable == "rescaled":
        a, b, c, to_u, to_energy = 1.0, kappa, 1.0, np.sqrt(m), m
    else:
        a, b, c, to_u, to_energy = 1.0, 1.0, m, 1.0, 1.0

    best = best_any = None
    for k, x0 in enumerate(starting_points(g, h, opts)):
        run = sphere_descent(g, h, p, a, b, c, x0, opts.tol, opts.max_iter,
                             opts.sigma, opts.shrink, opts.trace)
        u = to_u * run.x
        obj = to_energy * run.f
        sol = Solution(
            u=u, lam=run.lam,
            energy=-obj if maximize else obj, residual=run.residual,
            mass=energy.constraint_mass(g, u, h), iterations=run.iterations,
            converged=run.converged and bool(np.all(u > 0)), m=m, p=p, restart=k,
            trace=[(-to_energy if maximize else to_energy) * t for t in run.trace],
        )
        if best_any is None or obj < best_any[0] - TIE_ATOL:
            best_any = (obj, sol)
        if sol.converged and (best is None or obj < best[0] - TIE_ATOL):
            best = (obj, sol)
    if best is None:
        raise NotConverged(
            f"no run converged to tol={opts.tol:g} within {opts.max_iter} iterations "
            f"(best relative residual {best_any[1].residual:.3g})", best=best_any[1])
    return best[1]
