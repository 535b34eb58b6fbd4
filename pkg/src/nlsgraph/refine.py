"""Newton refinement of constrained Euler-Lagrange solutions.

Solves the bordered system

    L x + lam * mu * h * x = coef * mu * |x|^(p-2) x,     int h x^2 dmu = mass

for ``(x, lam)`` starting from a converged descent iterate.  ``coef=1,
mass=m`` is the equation for u; ``coef=m^(p/2-1), mass=1`` the rescaled one.
The multiprecision variant evaluates residuals in mpmath and solves for the
corrections in double precision (iterative refinement), which reaches any
requested number of digits while only ever factoring a float matrix.
"""

import mpmath
import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from .graph import stiffness


def _jacobian(g, h, p, coef, x, lam):
    wgt = g.mu * h
    diag = lam * wgt - coef * (p - 1) * g.mu * np.abs(x) ** (p - 2)
    top = g.laplacian_matrix + sparse.diags(diag)
    col = sparse.csr_matrix((wgt * x)[:, None])
    return sparse.bmat([[top, col], [col.T, None]], format="csc")


def newton_refine(g, h, p, coef, mass, x, lam, tol=1e-14, max_iter=50):
    """Double-precision Newton iteration; returns ``(x, lam, residual)``.

    ``residual`` is the sup norm of the equation residual divided by mu,
    i.e. in the same units as -Delta x + lam h x - coef |x|^(p-2) x.
    """
    h = np.ones(g.n) if h is None else np.asarray(h, dtype=float)
    x = np.asarray(x, dtype=float).copy()
    lam = float(lam)
    wgt = g.mu * h
    res = np.inf
    for _ in range(max_iter):
        r1 = stiffness(g, x) + lam * wgt * x - coef * g.mu * np.abs(x) ** (p - 2) * x
        r2 = 0.5 * (float(np.dot(wgt, x * x)) - mass)
        res = max(float(np.max(np.abs(r1 / g.mu))), abs(r2))
        scale = max(1.0, abs(lam) * float(np.max(np.abs(h * x))),
                    coef * float(np.max(np.abs(x))) ** (p - 1))
        if res <= tol * scale:
            break
        step = splu(_jacobian(g, h, p, coef, x, lam)).solve(-np.append(r1, r2))
        x += step[:-1]
        lam += step[-1]
    return x, lam, res


def newton_refine_mp(g, h, p, mass, x, lam, digits, coef=1.0, max_iter=60):
    """Refine to ``digits`` significant digits; returns ``(list of mpf, mpf)``."""
    h = np.ones(g.n) if h is None else np.asarray(h, dtype=float)
    with mpmath.workdps(digits + 10):
        mpf = mpmath.mpf
        mu = [mpf(float(a)) for a in g.mu]
        hh = [mpf(float(a)) for a in h]
        P, C, M = mpf(float(p)), mpf(float(coef)), mpf(float(mass))
        edges = [(i, j, mpf(w)) for i, j, w in g.edges]
        xs = [mpf(float(a)) for a in x]
        L = mpf(float(lam))
        lu = splu(_jacobian(g, h, p, coef, np.asarray(x, dtype=float), float(lam)))
        target = mpf(10) ** (-digits)
        for _ in range(max_iter):
            r = [(L * hh[k] - C * abs(xs[k]) ** (P - 2)) * mu[k] * xs[k] for k in range(g.n)]
            for i, j, w in edges:
                flux = w * (xs[j] - xs[i])
                r[i] -= flux
                r[j] += flux
            r2 = (sum(mu[k] * hh[k] * xs[k] ** 2 for k in range(g.n)) - M) / 2
            size = max(max(abs(a) for a in xs), mpf(1))
            if max(max(abs(a) / mu[k] for k, a in enumerate(r)), abs(r2)) <= target * size ** max(P - 1, 2):
                break
            step = lu.solve(-np.array([float(a) for a in r] + [float(r2)]))
            for k in range(g.n):
                xs[k] += mpf(step[k])
            L += mpf(step[-1])
        return [+a for a in xs], +L
