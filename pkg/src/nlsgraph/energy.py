"""Energy functionals, Lagrange multipliers and Euler-Lagrange residuals.

Two functionals share the same two pieces::

    kinetic   = 1/2 * integral |grad u|^2
    nonlinear = 1/p * integral |u|^p

The finite-graph problem minimizes ``J = kinetic - nonlinear`` on the mass
sphere; the potential problem maximizes ``Jcal = nonlinear - kinetic`` on the
h-weighted sphere.  Either way the constrained critical points solve

    -Delta u + lam * h * u = |u|^(p-2) u .
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidExponent, MassMismatch, NonPositiveMass, NonPositivePotential
from .graph import as_function, dirichlet, gamma, stiffness

MASS_WARN_RTOL = 1e-8


def check_exponent(p):
    if not p > 2:
        raise InvalidExponent(f"exponent p must be > 2, got {p!r}")
    return float(p)


def _potential(g, h):
    if h is None:
        return np.ones(g.n)
    h = as_function(g, h)
    if not np.all(h > 0):
        raise NonPositivePotential("potential must be strictly positive")
    return h


@dataclass(frozen=True)
class ProblemSpec:
    """One constrained problem: exponent, mass, optional potential and origin."""

    p: float
    m: float
    h: object = None
    origin: str = None

    def __post_init__(self):
        check_exponent(self.p)
        if not self.m > 0:
            raise NonPositiveMass(f"mass must be positive, got {self.m!r}")
        if self.h is not None and not np.all(np.asarray(self.h, dtype=float) > 0):
            raise NonPositivePotential("potential must be strictly positive")


@dataclass(frozen=True)
class EnergyBreakdown:
    kinetic: float
    nonlinear: float

    @property
    def J(self):
        """Finite-graph functional, minimized."""
        return self.kinetic - self.nonlinear

    @property
    def Jcal(self):
        """Potential-problem functional, maximized."""
        return self.nonlinear - self.kinetic


def energy_components(g, u, p):
    p = check_exponent(p)
    u = as_function(g, u)
    return EnergyBreakdown(0.5 * dirichlet(g, u), float(np.dot(g.mu, np.abs(u) ** p)) / p)


def J(g, u, p):
    return energy_components(g, u, p).J


def Jcal(g, u, p):
    return energy_components(g, u, p).Jcal


def scaled_Jcal(g, v, p, m):
    """Jcal_m(v) = m^(p/2)/p * int |v|^p - m/2 * int |grad v|^2, i.e. Jcal(sqrt(m) v)."""
    e = energy_components(g, v, p)
    return m ** (p / 2) * e.nonlinear - m * e.kinetic


def power(u, p):
    """Odd extension |u|^(p-2) u of u^(p-1)."""
    return np.abs(u) ** (p - 2) * u


def gradient(g, u, p):
    """L^2(mu)-gradient of J: -Delta u - |u|^(p-2) u."""
    p = check_exponent(p)
    u = as_function(g, u)
    return stiffness(g, u) / g.mu - power(u, p)


def directional_derivative(g, u, phi, p):
    """dJ(u)[phi] = int Gamma(u, phi) - int |u|^(p-2) u phi, both w.r.t. mu."""
    p = check_exponent(p)
    u, phi = as_function(g, u), as_function(g, phi)
    return float(np.dot(g.mu, gamma(g, u, phi)) - np.dot(g.mu, power(u, p) * phi))


def constraint_mass(g, u, h=None):
    u = as_function(g, u)
    return float(np.dot(g.mu * _potential(g, h), u * u))


def lagrange_multiplier(g, u, p, m, h=None, strict=False):
    """(1/m) * (int |u|^p - int |grad u|^2).

    The same formula serves both problems; ``h`` only enters through the mass
    check.  A relative mass mismatch above ``MASS_WARN_RTOL`` warns, or raises
    :class:`MassMismatch` when ``strict``.
    """
    p = check_exponent(p)
    if not m > 0:
        raise NonPositiveMass(f"mass must be positive, got {m!r}")
    u = as_function(g, u)
    achieved = constraint_mass(g, u, h)
    if abs(achieved - m) > MASS_WARN_RTOL * m:
        msg = f"constraint mass {achieved:.6g} differs from m={m:.6g}"
        if strict:
            raise MassMismatch(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    return (float(np.dot(g.mu, np.abs(u) ** p)) - dirichlet(g, u)) / m


def el_residual_vector(g, u, lam, p, h=None):
    p = check_exponent(p)
    u = as_function(g, u)
    return stiffness(g, u) / g.mu + lam * _potential(g, h) * u - power(u, p)


def el_residual(g, u, lam, p, h=None):
    """Sup norm of -Delta u + lam*h*u - |u|^(p-2) u."""
    r = el_residual_vector(g, u, lam, p, h)
    return float(np.max(np.abs(r)))


def lambda1_upper_bound(g, h, p):
    """1 / (p * h0 * (mu_min * h0)^((p-2)/2)), an upper bound for sup Jcal over
    the unit h-ball (h0 = min h)."""
    p = check_exponent(p)
    h0 = float(np.min(_potential(g, h)))
    return 1.0 / (p * h0 * (g.mu_min * h0) ** ((p - 2) / 2))
