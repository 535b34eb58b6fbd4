"""Mass sweeps and the limits m -> 0+ and m -> infinity.

Along a sweep every solution is stored with its rescaled form v_m = u_m/sqrt(m),
which has unit (h-)mass and solves

    -Delta v + lam_m h v = m^(p/2-1) |v|^(p-2) v .

Small masses switch the forcing term off, leaving an eigenvalue problem; large
masses make it dominate, leaving an algebraic equation for the limit.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from . import energy
from .errors import DisconnectedGraph, InconsistentMultiplier, NotConverged, SweepNotSettled
from .graph import as_function, dirichlet, laplacian
from .solution import SolverOptions, solve_on_sphere

SETTLE_TOL = 1e-8
SUPPORT_RTOL = 1e-6


@dataclass
class SweepRecord:
    m: float
    solution: object
    rescaled: np.ndarray
    lambda_m: float
    rescaled_multiplier: float
    failed: bool = False

    @property
    def kappa(self):
        return self.m ** (self.solution.p / 2 - 1)


@dataclass
class LimitClassification:
    """Detected limit of a settled sweep.

    ``kind`` is one of ``"constant"``, ``"eigenfunction"``, ``"zero"`` or
    ``"support-indicator"``.  ``limit_multiplier`` is lam_0 for small-mass
    limits and lam_inf for large-mass limits; ``residual`` is the sup-norm
    residual of the corresponding limit equation.
    """

    kind: str
    limit_fn: np.ndarray
    limit_multiplier: float
    residual: float
    support: tuple = ()
    structure_error: float = 0.0
    multiplier_gap: float = 0.0
    matched_eigenvalue: float = None
    notes: list = field(default_factory=list)


def _check_masses(masses):
    masses = [float(m) for m in masses]
    if any(not m > 0 for m in masses):
        raise ValueError("masses must be positive")
    steps = np.sign(np.diff(masses))
    if len(masses) > 1 and not (np.all(steps > 0) or np.all(steps < 0)):
        raise ValueError("masses must be strictly monotone")
    return masses


def mass_sweep(g, spec, masses, opts=None):
    """Solve at each mass, warm-starting from the previous rescaled solution.

    With ``spec.h`` unset this minimizes J; with a potential it maximizes
    Jcal.  The warm start is run first and wins ties against the seeded
    restarts (``opts.restarts``), so a sweep follows its branch unless a
    restart finds a strictly better one.  Runs that fail to converge are kept
    with ``failed=True`` and the sweep carries on.
    """
    masses = _check_masses(masses)
    opts = opts or SolverOptions()
    maximize = spec.h is not None
    records = []
    prev = None
    for m in masses:
        o = opts if prev is None else replace(opts, initial=prev)
        try:
            sol = solve_on_sphere(g, spec.p, m, spec.h, o, maximize)
            failed = False
        except NotConverged as exc:
            sol, failed = exc.best, True
        kappa = m ** (spec.p / 2 - 1)
        v = sol.rescaled
        records.append(SweepRecord(m, sol, v, sol.lam, sol.lam / kappa, failed))
        prev = v
    return records


def _forcing_free(g, rec, h):
    """lam_m with its forcing contribution removed: -int|grad v|^2 / int h v^2."""
    v = rec.rescaled
    hv = np.dot(g.mu * h, v * v)
    return rec.lambda_m - rec.kappa * float(np.dot(g.mu, np.abs(v) ** rec.solution.p)) / hv


def tail_deltas(g, records, h=None, large=False):
    """Sup-norm change of the rescaled functions and of the (rescaled)
    multipliers over the last two records."""
    if len(records) < 2:
        raise SweepNotSettled("need at least two records")
    a, b = records[-2], records[-1]
    if a.failed or b.failed:
        raise SweepNotSettled("last two records must have converged")
    h = np.ones(g.n) if h is None else as_function(g, h)
    dv = float(np.max(np.abs(a.rescaled - b.rescaled)))
    if large:
        dq = abs(a.rescaled_multiplier - b.rescaled_multiplier)
    else:
        dq = abs(_forcing_free(g, a, h) - _forcing_free(g, b, h))
    return dv, dq


def is_settled(g, records, h=None, large=False, tol=SETTLE_TOL):
    try:
        dv, dq = tail_deltas(g, records, h, large)
    except SweepNotSettled:
        return False
    return dv < tol and dq < tol


def sweep_until_settled(g, spec, start, factor=10.0, max_points=60, opts=None, tol=SETTLE_TOL):
    """Geometric sweep m = start * factor**k, stopped once the tail settles.

    ``factor > 1`` sweeps towards infinity, ``factor < 1`` towards zero.
    """
    if not factor > 0 or factor == 1:
        raise ValueError("factor must be positive and different from 1")
    large = factor > 1
    records = []
    m = float(start)
    for _ in range(max_points):
        prev = None if not records else records[-1].rescaled
        o = opts or SolverOptions()
        if prev is not None:
            o = replace(o, initial=prev)
        records.extend(mass_sweep(g, spec, [m], o))
        if len(records) >= 2 and is_settled(g, records, spec.h, large, tol):
            return records
        m *= factor
    raise SweepNotSettled(f"tail not settled after {max_points} masses (last m={m / factor:.3g})")


def generalized_eigenpair(g, h=None):
    """All eigenpairs of -Delta v = lam h v, ascending, with int h v^2 dmu = 1.

    Dense symmetric solve after the similarity transform by (mu h)^(1/2); each
    eigenvector is signed so that its first non-negligible entry is positive.
    """
    if not g.connected:
        raise DisconnectedGraph("eigenproblem needs a connected graph")
    h = np.ones(g.n) if h is None else as_function(g, h)
    d = np.sqrt(g.mu * h)
    sym = g.laplacian_matrix.toarray() / np.outer(d, d)
    vals, vecs = np.linalg.eigh(0.5 * (sym + sym.T))
    out = []
    for k in range(g.n):
        v = vecs[:, k] / d
        big = np.flatnonzero(np.abs(v) > 1e-8 * np.max(np.abs(v)))[0]
        if v[big] < 0:
            v = -v
        out.append((float(vals[k]), v))
    return out


def _limit_of_multiplier(records):
    """Extrapolate lam_m to m -> 0 assuming lam_m = a + b m^(p/2-1)."""
    a, b = records[-2], records[-1]
    ka, kb = a.kappa, b.kappa
    if ka == kb:
        return b.lambda_m
    return (ka * b.lambda_m - kb * a.lambda_m) / (ka - kb)


def classify_small_mass_limit(g, records, h=None, tol=1e-6, multiplier_tol=1e-6,
                              settle_tol=SETTLE_TOL):
    """Identify the m -> 0+ limit of a decreasing, settled sweep.

    Without potential the limit is the constant |V|^(-1/2) (harmonic branch,
    lam_0 = 0) or a unit-mass eigenfunction of -Delta with lam_0 > 0.  With a
    confining potential a limit that is constant on the truncation is the
    image of v = 0 (constants have infinite h-mass on the full graph), anything
    else an eigenfunction of -Delta v = lam_0 h v.
    """
    if len(records) >= 2 and not records[-1].m < records[-2].m:
        raise ValueError("small-mass classification needs decreasing masses")
    dv, dq = tail_deltas(g, records, h, large=False)
    if not (dv < settle_tol and dq < settle_tol):
        raise SweepNotSettled(f"tail not settled: dv={dv:.3g}, dlam={dq:.3g}")
    hv = np.ones(g.n) if h is None else as_function(g, h)
    v = records[-1].rescaled
    lim_lam = _limit_of_multiplier(records)
    notes = []

    if h is None:
        c = 1.0 / np.sqrt(g.volume)
        if np.max(np.abs(v - c)) <= tol:
            lam0 = dirichlet(g, v)
            return LimitClassification(
                "constant", np.full(g.n, c), lam0, float(np.max(np.abs(laplacian(g, v)))),
                support=tuple(g.vertices), multiplier_gap=abs(lam0 + lim_lam))
    else:
        spread = float(np.max(v) - np.min(v))
        if np.max(np.abs(v)) <= tol or spread <= tol:
            notes.append(f"truncated limit is the constant {float(np.mean(v)):.6g}, "
                         "which vanishes as the truncation grows")
            return LimitClassification("zero", np.zeros(g.n), 0.0, float(np.max(np.abs(laplacian(g, v)))),
                                       multiplier_gap=abs(lim_lam), notes=notes)

    lam0 = dirichlet(g, v) / float(np.dot(g.mu * hv, v * v))
    residual = float(np.max(np.abs(-laplacian(g, v) - lam0 * hv * v)))
    eigs = [lam for lam, _ in generalized_eigenpair(g, None if h is None else hv)]
    matched = min(eigs, key=lambda e: abs(e - lam0))
    gap = abs(lam0 + lim_lam)
    if gap > multiplier_tol:
        raise InconsistentMultiplier(f"lam_0={lam0:.10g} but lim lam_m={lim_lam:.10g}")
    return LimitClassification("eigenfunction", v.copy(), lam0, residual, support=tuple(g.vertices),
                               multiplier_gap=gap, matched_eigenvalue=matched, notes=notes)


def classify_large_mass_limit(g, records, h=None, support_rtol=SUPPORT_RTOL, settle_tol=SETTLE_TOL):
    """Identify the m -> infinity limit w of an increasing, settled sweep.

    Without potential w solves |w|^(p-2) w = ||w||_p^p w, whose unit-mass
    solutions are mu(S)^(-1/2) on a support S; with potential w solves
    |w|^(p-2) w = lam_inf h w with lam_inf = int|w|^p / int h w^2, so on its
    support w = (lam_inf h)^(1/(p-2)).
    """
    if len(records) >= 2 and not records[-1].m > records[-2].m:
        raise ValueError("large-mass classification needs increasing masses")
    dv, dq = tail_deltas(g, records, h, large=True)
    if not (dv < settle_tol and dq < settle_tol):
        raise SweepNotSettled(f"tail not settled: dv={dv:.3g}, dlam={dq:.3g}")
    last = records[-1]
    p = last.solution.p
    w = last.rescaled
    hv = np.ones(g.n) if h is None else as_function(g, h)
    on = np.abs(w) > support_rtol * np.max(np.abs(w))
    support = tuple(v for v, s in zip(g.vertices, on) if s)
    lam_inf = float(np.dot(g.mu, np.abs(w) ** p)) / float(np.dot(g.mu * hv, w * w))
    residual = float(np.max(np.abs(energy.power(w, p) - lam_inf * hv * w)))
    if h is None:
        ideal = np.where(on, 1.0 / np.sqrt(float(g.mu[on].sum())), 0.0)
    else:
        ideal = np.where(on, (lam_inf * hv) ** (1.0 / (p - 2)), 0.0)
    structure = float(np.max(np.abs(np.abs(w[on]) - ideal[on])))
    return LimitClassification(
        "support-indicator", w.copy(), lam_inf, residual, support=support,
        structure_error=structure, multiplier_gap=abs(lam_inf - last.rescaled_multiplier),
        notes=[f"largest off-support value {float(np.max(np.abs(w[~on]), initial=0.0)):.3g}"])
