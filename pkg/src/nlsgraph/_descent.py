"""Projected gradient descent on a weighted sphere.

Minimizes

    f(x) = a/2 * int |grad x|^2 - b/p * int |x|^p

over ``{x : int h x^2 dmu = c}`` in the metric ``<y, z> = int h y z dmu``.  In
that metric the tangent-projected gradient is exactly ``r / h`` where

    r = -a Delta x + lam h x - b |x|^(p-2) x,   lam = (b int|x|^p - a int|grad x|^2) / c

is the Euler-Lagrange residual, so the stopping test and the multiplier come
for free.  Each step is: Barzilai-Borwein trial length, Armijo backtracking on
the retracted point, absolute value, rescale back onto the sphere.
"""

from dataclasses import dataclass, field

import numpy as np

from .graph import stiffness


@dataclass
class Run:
    x: np.ndarray
    lam: float
    f: float
    residual: float
    iterations: int
    converged: bool
    trace: list = field(default_factory=list)


def sphere_descent(g, h, p, a, b, c, x0, tol, max_iter, sigma=1e-4, shrink=0.5,
                   record_trace=False):
    mu = g.mu
    wgt = mu * h
    ei, ej, ew = g.edge_i, g.edge_j, g.edge_w

    def retract(y):
        y = np.abs(y)
        return y * np.sqrt(c / np.dot(wgt, y * y))

    def parts(x):
        d = x[ei] - x[ej]
        kin = float(np.dot(ew, d * d))
        ax = np.abs(x)
        nl = float(np.dot(mu, ax ** p))
        return kin, nl, ax

    def fval(kin, nl):
        return 0.5 * a * kin - b / p * nl

    def state(x):
        kin, nl, ax = parts(x)
        lam = (b * nl - a * kin) / c
        lx = stiffness(g, x) / mu
        force = b * ax ** (p - 2) * x
        r = a * lx + lam * h * x - force
        scale = max(1.0, float(np.max(np.abs(a * lx))), abs(lam) * float(np.max(h * ax)),
                    float(np.max(np.abs(force))))
        return kin, nl, lam, r, scale

    x = retract(np.asarray(x0, dtype=float))
    kin, nl, lam, r, scale = state(x)
    f = fval(kin, nl)
    trace = [f] if record_trace else []
    res = float(np.max(np.abs(r)))
    # crude Lipschitz estimate for the very first trial step
    t = 1.0 / (a * float(np.max(2 * g.deg / wgt)) + abs(lam) + b * float(np.max(np.abs(x) ** (p - 2) / h)) + 1e-300)
    prev = None
    it = 0
    while it < max_iter:
        res = float(np.max(np.abs(r)))
        if res <= tol * scale:
            return Run(x, lam, f, res / scale, it, True, trace)
        pg = r / h
        gnorm2 = float(np.dot(wgt, pg * pg))
        if prev is not None:
            s = x - prev[0]
            y = pg - prev[1]
            sy = float(np.dot(wgt, s * y))
            if sy > 0:
                t = float(np.dot(wgt, s * s)) / sy
        slack = 1e-14 * (0.5 * abs(a) * kin + abs(b) / p * nl)
        for _ in range(80):
            xn = retract(x - t * pg)
            kin_n, nl_n, _ = parts(xn)
            fn = fval(kin_n, nl_n)
            if fn <= f - sigma * t * gnorm2 + slack:
                break
            t *= shrink
        else:
            # no decrease representable in floating point
            return Run(x, lam, f, res / scale, it, False, trace)
        prev = (x, pg)
        x = xn
        kin, nl, lam, r, scale = state(x)
        f = fval(kin, nl)
        if record_trace:
            trace.append(f)
        it += 1
    res = float(np.max(np.abs(r)))
    return Run(x, lam, f, res / scale, it, res <= tol * scale, trace)
