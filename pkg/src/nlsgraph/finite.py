"""Normalized solutions on connected finite graphs: global minimizers of J on
the mass sphere ``{int u^2 dmu = m}``."""

import numpy as np

from . import energy
from .errors import InvalidExponent, NonPositiveMass
from .solution import SolverOptions, Solution, solve_on_sphere


def constant_candidate(g, p, m):
    """The constant function of mass m, u = sqrt(m/|V|), with lam = u^(p-2).

    Always a critical point; used as the default initializer and as the
    benchmark every minimizer must beat.
    """
    if not m > 0:
        raise NonPositiveMass(f"mass must be positive, got {m!r}")
    p = energy.check_exponent(p)
    c = np.sqrt(m / g.volume)
    u = np.full(g.n, c)
    lam = c ** (p - 2)
    return Solution(
        u=u, lam=lam, energy=energy.J(g, u, p), residual=energy.el_residual(g, u, lam, p),
        mass=energy.constraint_mass(g, u), iterations=0, converged=True, m=float(m), p=p,
    )


def minimize_normalized(g, spec, opts=None):
    """Global minimizer of J over the mass sphere, over all restarts.

    Parameters
    ----------
    g : WeightedGraph
        Must be connected.
    spec : ProblemSpec
        ``spec.h`` must be unset; the potential problem lives in
        :mod:`nlsgraph.potential`.
    opts : SolverOptions, optional

    Returns
    -------
    Solution
        Strictly positive, exact mass, ``lam`` the Lagrange multiplier.

    Raises
    ------
    NotConverged
        If no restart reaches the tolerance; ``exc.best`` holds the best run.
    """
    if spec.h is not None:
        raise ValueError("minimize_normalized solves the problem without potential")
    opts = opts or SolverOptions()
    return solve_on_sphere(g, spec.p, spec.m, None, opts, maximize=False)


def minimize(g, p, m, **options):
    """Shorthand for ``minimize_normalized(g, ProblemSpec(p, m), SolverOptions(**options))``."""
    if not p > 2:
        raise InvalidExponent(f"exponent p must be > 2, got {p!r}")
    return minimize_normalized(g, energy.ProblemSpec(p, m), SolverOptions(**options))
