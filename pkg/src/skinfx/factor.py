"""Canonical factor function of the Riemann-Hilbert problem X+/X- = G.

    index 0:  X(z) = exp V(z),        V(z) = (1/2*pi*i) int ln G(t)/(t - z) dt
    index 1:  X(z) = exp V(z)/z,      integrand ln G(t) - 2*pi*i

with the regular (branch-tracked) logarithm of G.  The integrand is supported
on [0, tau_max] in effect: beyond the grid ln G equals 2*pi*i*kappa to below
roundoff.

Quadrature is Gauss-Legendre on panels inherited from the adaptive branch
grid.  For index one the integrand does not vanish at t = 0, which makes the
plain sum useless near the origin; the non-vanishing part is modelled as
(g0 + c1*t)*exp(-t) and integrated in closed form through exponential
integrals, leaving an O(t**2) remainder for the quadrature.  Boundary values
on the cut use explicit Sokhotski splitting (PV integral +/- half the log),
never brute-force quadrature.

X'(0)/X(0): for index 0 this is the convergent moment integral of ln G/t**2.
For index 1 the defining integral is differentiated by parts, which cancels
the 1/z of the z**-1 prefactor exactly and leaves the convergent integral of
(ln G)'(t)/t; the cancellation is verified a posteriori by finite differences
of log X along the negative real axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import exp1, expi

from .dispersion import (
    BranchTable,
    build_branch_table,
    g_coefficient,
    g_log_derivative,
)
from .errors import NearCutError, RegularizationError
from .params import KineticParams

__all__ = ["FactorRep", "build_factor", "v_value", "x_value", "x_boundary",
           "x_at_zero", "x_logderiv_at_zero"]

TWO_PI_I = 2j * np.pi


@dataclass(frozen=True)
class FactorRep:
    """Tabulated ingredients for evaluating V(z) and X(z)."""

    kp: KineticParams
    kappa: int
    table: BranchTable
    nodes: np.ndarray     # Gauss-Legendre nodes on [0, tau_max]
    weights: np.ndarray
    ln_g: np.ndarray      # regular branch of ln G at the nodes
    dln_g: np.ndarray     # d(ln G)/dt at the nodes (closed form)

    @property
    def tau_max(self) -> float:
        return self.table.tau_max

    @property
    def g0(self) -> complex:
        """Cut-integrand value at t = 0: ln G(0) - 2*pi*i*kappa."""
        return -TWO_PI_I * self.kappa

    def integrand(self) -> np.ndarray:
        return self.ln_g - TWO_PI_I * self.kappa

    def remainder(self) -> np.ndarray:
        """Integrand minus the (g0 + c1*t)*exp(-t) model; O(t**2) at 0."""
        g0 = self.g0
        return self.integrand() - g0 * (1.0 + self.nodes) * np.exp(-self.nodes)

    def tail_value(self) -> complex:
        """Integrand at tau_max (should be ~0; kept in boundary terms)."""
        g = complex(self.table.log_abs[-1] + 1j * self.table.arg[-1])
        return g - TWO_PI_I * self.kappa


def _panels_from_table(table: BranchTable, max_arg=0.15, max_width=0.5):
    edges = [table.nodes[0]]
    acc = 0.0
    for i in range(1, table.nodes.size):
        acc += abs(table.arg[i] - table.arg[i - 1])
        if (acc > max_arg or table.nodes[i] - edges[-1] > max_width
                or i == table.nodes.size - 1):
            edges.append(table.nodes[i])
            acc = 0.0
    edges = np.asarray(edges)
    # geometric refinement toward the origin so near-origin evaluations
    # (X'(0)/X(0) cancellation probes) stay resolved down to |z| ~ 1e-5
    first = edges[1]
    sub = first * 0.5 ** np.arange(1, 18)
    return np.concatenate([[0.0], sub[::-1], edges[1:]])


def _regular_ln_g(mu, kp, table):
    """ln G at arbitrary mu with the branch snapped to the table."""
    mu = np.asarray(mu, dtype=float)
    out = np.empty(mu.shape, dtype=complex)
    inside = mu < table.tau_max
    if np.any(inside):
        g = g_coefficient(mu[inside], kp)
        principal = np.angle(g)
        approx = np.interp(mu[inside], table.nodes, table.arg)
        k = np.round((approx - principal) / (2.0 * np.pi))
        out[inside] = np.log(np.abs(g)) + 1j * (principal + 2.0 * np.pi * k)
    out[~inside] = TWO_PI_I * table.kappa_hint
    return out


def build_factor(kp: KineticParams, table: BranchTable | None = None,
                 gl_order: int = 24) -> FactorRep:
    """Assemble the quadrature representation of the factor function."""
    if table is None:
        table = build_branch_table(kp)
    edges = _panels_from_table(table)
    xg, wg = leggauss(gl_order)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    ln_g = _regular_ln_g(nodes, kp, table)
    dln_g = g_log_derivative(nodes, kp)
    return FactorRep(kp=kp, kappa=table.kappa_hint, table=table,
                     nodes=nodes, weights=weights, ln_g=ln_g, dln_g=dln_g)


def _cut_distance(z, tau_max):
    z = np.asarray(z, dtype=complex)
    x = np.clip(z.real, 0.0, tau_max)
    return np.abs(z - x)


def _exp_moments(z, T):
    """(I0, I1) with I0 = int_0^T exp(-t)/(t-z) dt, I1 = same with t*exp(-t).

    Closed forms: I0 = exp(-z)*(E1(-z) - E1(T-z)),
                  I1 = (1 - exp(-T)) + z*I0,
    valid for z off [0, +inf) (principal branches line up there).  For
    |z| > 8*T the closed form loses to overflow/cancellation (exp(-z) can
    exceed the float range while the E1 difference underflows); there the
    geometric expansion of 1/(t-z) in t/z converges fast and is used instead.
    """
    z = np.asarray(z, dtype=complex)
    big = np.abs(z) > 8.0 * T
    i0 = np.empty(z.shape, dtype=complex)
    if np.any(~big):
        zs = z[~big]
        i0[~big] = np.exp(-zs) * (exp1(-zs) - exp1(T - zs))
    if np.any(big):
        zb = z[big]
        # moments m_k = int_0^T t^k exp(-t) dt by upward recurrence
        eT = np.exp(-T)
        acc = np.zeros(zb.shape, dtype=complex)
        m = 1.0 - eT
        tk = 1.0
        zpow = np.ones(zb.shape, dtype=complex)
        for k in range(24):
            acc = acc + m * zpow
            tk *= T
            m = (k + 1.0) * m - tk * eT
            zpow = zpow / zb
        i0[big] = -acc / zb
    i1 = (1.0 - np.exp(-T)) + z * i0
    return i0, i1


def v_value(z, rep: FactorRep):
    """V(z) for z off the cut [0, tau_max]."""
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    T = rep.tau_max
    if np.any(_cut_distance(z, T) < 1e-10):
        raise NearCutError("z within 1e-10 of the cut; use x_boundary instead")
    g2 = rep.remainder()
    acc = (rep.weights[None, :] * g2[None, :] / (rep.nodes[None, :] - z[:, None])).sum(axis=1)
    if rep.kappa:
        i0, i1 = _exp_moments(z, T)
        acc = acc + rep.g0 * (i0 + i1)
    out = acc / TWO_PI_I
    return out[0] if scalar else out


def x_value(z, rep: FactorRep):
    """X(z) off the cut: exp(V) for index 0, exp(V)/z for index 1."""
    v = v_value(z, rep)
    x = np.exp(v)
    if rep.kappa:
        x = x / np.asarray(z, dtype=complex)
    return x


def _pv_exp_moments(mu, T):
    """Principal-value counterparts of _exp_moments for mu in (0, T)."""
    mu = np.asarray(mu, dtype=float)
    i0 = np.exp(-mu) * (-expi(mu) - exp1(T - mu))
    i1 = (1.0 - np.exp(-T)) + mu * i0
    return i0, i1


def v_boundary_pv(mu, rep: FactorRep):
    """PV branch of V on the cut (Sokhotski mean of the one-sided limits)."""
    scalar = np.isscalar(mu) or np.asarray(mu).ndim == 0
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    T = rep.tau_max
    if np.any((mu <= 0) | (mu >= T)):
        raise NearCutError("boundary values require mu in (0, tau_max)")
    g2 = rep.remainder()
    f_mu = _regular_ln_g(mu, rep.kp, rep.table) - TWO_PI_I * rep.kappa
    df_mu = g_log_derivative(mu, rep.kp)
    g2_mu = f_mu - rep.g0 * (1.0 + mu) * np.exp(-mu)
    dg2_mu = df_mu + rep.g0 * mu * np.exp(-mu)
    diff = rep.nodes[None, :] - mu[:, None]
    quot = np.empty_like(diff, dtype=complex)
    sing = np.abs(diff) < 1e-13
    with np.errstate(divide="ignore", invalid="ignore"):
        quot[~sing] = ((g2[None, :] - g2_mu[:, None]) / diff)[~sing]
    if np.any(sing):
        rows = np.nonzero(sing)[0]
        quot[sing] = dg2_mu[rows]
    acc = (rep.weights[None, :] * quot).sum(axis=1)
    acc = acc + g2_mu * np.log((T - mu) / mu)
    if rep.kappa:
        i0, i1 = _pv_exp_moments(mu, T)
        acc = acc + rep.g0 * (i0 + i1)
    out = acc / TWO_PI_I
    return out[0] if scalar else out


def x_boundary(mu, side, rep: FactorRep):
    """One-sided boundary values of X on (0, tau_max).

    side: 'above' or 'below'.  X_above/X_below = G by construction.
    """
    scalar = np.isscalar(mu) or np.asarray(mu).ndim == 0
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    vpv = v_boundary_pv(mu, rep)
    f_mu = _regular_ln_g(mu, rep.kp, rep.table)
    if side == "above":
        v = vpv + 0.5 * (f_mu - TWO_PI_I * rep.kappa)
    elif side == "below":
        v = vpv - 0.5 * (f_mu - TWO_PI_I * rep.kappa)
    else:
        raise ValueError(f"side must be 'above' or 'below', got {side!r}")
    x = np.exp(v)
    if rep.kappa:
        x = x / mu
    return x[0] if scalar else x


def x_at_zero(rep: FactorRep) -> complex:
    """X(0), finite and nonzero for both indices.

    Index 1 uses the integrated-by-parts form; the value is the limit of X
    along the negative real axis.
    """
    if rep.kappa == 0:
        v0 = (rep.weights * rep.ln_g / rep.nodes).sum() / TWO_PI_I
        return complex(np.exp(v0))
    T = rep.tau_max
    rest = (rep.tail_value() * np.log(T)
            - (rep.weights * rep.dln_g * np.log(rep.nodes)).sum()) / TWO_PI_I
    return complex(-np.exp(rest))


def _log_x_negative_axis(h, rep):
    """log X(-h) for h > 0, with Log(-h) = ln h + i*pi."""
    v = complex(v_value(-h, rep))
    if rep.kappa:
        v = v - (np.log(h) + 1j * np.pi)
    return v


def x_logderiv_at_zero(rep: FactorRep) -> complex:
    """X'(0)/X(0).

    Index 0: V'(0) = (1/2*pi*i) int ln G(t)/t**2 dt.
    Index 1: the subtracted (integrated-by-parts) route; the residual 1/z
    behavior is probed by finite differences at z = -1e-3, -1e-4 and a
    failure to cancel raises RegularizationError.
    """
    if rep.kappa == 0:
        return complex((rep.weights * rep.ln_g / rep.nodes**2).sum() / TWO_PI_I)
    T = rep.tau_max
    w0 = ((rep.weights * rep.dln_g / rep.nodes).sum()
          - rep.tail_value() / T) / TWO_PI_I
    w0 = complex(w0)
    # cancellation probe: [log X(-h) - log X(-2h)]/h approximates the
    # log-derivative at -1.5h; the deviation from w0 must shrink with h
    devs = []
    for h in (1e-3, 1e-4):
        d = (_log_x_negative_axis(h, rep) - _log_x_negative_axis(2.0 * h, rep)) / h
        devs.append(abs(d - w0))
    if devs[1] > devs[0] + 1e-6 * (1.0 + abs(w0)) and devs[1] > 1e-4 * (1.0 + abs(w0)):
        raise RegularizationError(
            f"1/z cancellation check failed: deviation grew from {devs[0]:.3e} "
            f"to {devs[1]:.3e} as z -> 0"
        )
    return w0
