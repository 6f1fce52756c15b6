"""Dispersion function lambda(z), its boundary values, and the coefficient G.

    lambda(z) = 1 + b*z**2 - a*p(z)

With specfun's orientation (limit from above = p_pv - i*q) the one-sided
boundary values on mu > 0 are

    lambda_above(mu) = lambda_pv(mu) + i*a*q(mu)
    lambda_below(mu) = lambda_pv(mu) - i*a*q(mu)

and the Riemann-Hilbert coefficient is G(mu) = lambda_above/lambda_below.
G(0) = 1 and G -> 1 as mu -> +infinity (Gaussian decay of q), so the curve
traced by G is closed; its winding about the origin is the problem index.
The BranchTable stores a branch-tracked log of G on an adaptive grid: the
regular branch of arg G pinned to arg G(0) = 0, refined until adjacent nodes
differ by less than pi.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCoefficientError, NonConvergenceError
from .params import KineticParams
from .specfun import (
    p_derivative_pv,
    p_pv,
    p_upper_derivative,
    p_value,
    q_derivative,
    q_value,
)

__all__ = [
    "lambda_value",
    "lambda_boundary",
    "g_coefficient",
    "g_log_derivative",
    "BranchTable",
    "build_branch_table",
    "default_tau_max",
]

_NODE_BUDGET = 200_000


def default_tau_max() -> float:
    """Grid truncation; q(8)/8**2 < 1e-26.  Overridable via SKINFX_TAU_MAX."""
    return float(os.environ.get("SKINFX_TAU_MAX", 8.0))


def lambda_value(z, kp: KineticParams, side="auto"):
    """lambda(z) = 1 + b*z**2 - a*p(z) on the requested branch of p."""
    z = np.asarray(z, dtype=complex)
    return 1.0 + kp.b * z**2 - kp.a * p_value(z, side)


def lambda_boundary(mu, kp: KineticParams):
    """One-sided boundary values (from above, from below) on the real axis."""
    mu = np.asarray(mu, dtype=float)
    lam_pv = 1.0 + kp.b * mu**2 - kp.a * p_pv(mu)
    jump = 1j * kp.a * q_value(mu)
    return lam_pv + jump, lam_pv - jump


def _check_degenerate(mu, lp, lm, kp):
    floor = 1e-13 * (1.0 + abs(kp.b) * np.asarray(mu, dtype=float) ** 2)
    bad = (np.abs(lp) < floor) | (np.abs(lm) < floor)
    if np.any(bad):
        where = np.atleast_1d(mu)[np.atleast_1d(bad)][0]
        raise DegenerateCoefficientError(
            f"dispersion boundary value vanishes near mu={where:.6g}; "
            "parameter point lies on a spectral boundary"
        )


def g_coefficient(mu, kp: KineticParams):
    """G(mu) = lambda_above(mu)/lambda_below(mu) for mu > 0."""
    lp, lm = lambda_boundary(mu, kp)
    _check_degenerate(mu, lp, lm, kp)
    return lp / lm


def g_log_derivative(mu, kp: KineticParams):
    """d/dmu of the regular branch of ln G (branch-independent).

    Equals lambda_above'/lambda_above - lambda_below'/lambda_below with the
    boundary-value derivatives in closed form.
    """
    mu = np.asarray(mu, dtype=float)
    lp, lm = lambda_boundary(mu, kp)
    _check_degenerate(mu, lp, lm, kp)
    dpv = 2.0 * kp.b * mu - kp.a * p_derivative_pv(mu)
    dj = 1j * kp.a * q_derivative(mu)
    return (dpv + dj) / lp - (dpv - dj) / lm


@dataclass(frozen=True)
class BranchTable:
    """Branch-tracked logarithm of G on [0, tau_max].

    nodes    -- increasing grid, nodes[0] = 0
    log_abs  -- ln|G| per node
    arg      -- continuous argument, arg[0] = 0
    kappa_hint -- round(arg[-1]/(2*pi))
    """

    nodes: np.ndarray
    log_abs: np.ndarray
    arg: np.ndarray
    kappa_hint: int

    @property
    def tau_max(self) -> float:
        return float(self.nodes[-1])

    def ln_g(self) -> np.ndarray:
        return self.log_abs + 1j * self.arg

    def arg_offset(self, tau) -> np.ndarray:
        """2*pi*k branch offset at arbitrary tau, from the tabulated argument."""
        tau = np.asarray(tau, dtype=float)
        approx = np.interp(tau, self.nodes, self.arg)
        return approx  # caller snaps principal angle to this


def continuous_arg(tau, g, table: BranchTable) -> np.ndarray:
    """Regular-branch argument of precomputed G values at arbitrary tau."""
    principal = np.angle(g)
    approx = table.arg_offset(tau)
    k = np.round((approx - principal) / (2.0 * np.pi))
    return principal + 2.0 * np.pi * k


def _seed_dip_clusters(nodes, kp: KineticParams, tau_max: float):
    """Insert geometric node clusters around near-zeros of lambda(+/-).

    When delta = 1/a lies close to the real axis, arg G completes a full
    2*pi loop inside a window of width ~ |a|*q around the real zero crossing
    of the principal-value dispersion function.  Outside that window G ~ 1
    on both sides, so plain bisection of principal-angle steps can never
    detect the loop; it must be seeded explicitly.
    """
    grid = np.linspace(0.0, tau_max, 4097)[1:]
    lp, lm = lambda_boundary(grid, kp)
    v = np.minimum(np.abs(lp), np.abs(lm))
    scale = 1.0 + np.abs(kp.a) * np.abs(p_pv(grid)) + np.abs(kp.b) * grid**2
    rel = v / scale
    dip = np.flatnonzero(
        (rel[1:-1] <= rel[:-2]) & (rel[1:-1] <= rel[2:]) & (rel[1:-1] < 0.05)
    ) + 1
    if dip.size == 0:
        return nodes
    extra = [nodes]
    for i in dip:
        lo, hi = grid[i - 1], grid[i + 1]
        # locate the nearby zero of the (entire) upper-branch continuation by
        # complex Newton; the loop in arg G is centered at its real part and
        # has half-width ~ its imaginary part.  A 1-d minimizer is useless
        # here: fminbound cannot localize below sqrt(eps)*|mu| ~ 1e-8, while
        # the loop can be orders of magnitude narrower.
        z = complex(0.5 * (lo + hi))
        for _ in range(60):
            fz = complex(lambda_value(z, kp, side="above"))
            dfz = 2.0 * kp.b * z - kp.a * complex(p_upper_derivative(z))
            if dfz == 0.0:
                break
            step = fz / dfz
            z = z - step
            if abs(step) < 1e-16 * max(1.0, abs(z)):
                break
        center = z.real if lo <= z.real <= hi else 0.5 * (lo + hi)
        span = hi - lo
        offs = span * 2.0 ** -np.arange(1.0, 49.0)
        pts = np.concatenate([center - offs, [center], center + offs])
        extra.append(pts[(pts > 0.0) & (pts < tau_max)])
    out = np.unique(np.concatenate(extra))
    return out


def build_branch_table(kp: KineticParams, tol: float = 0.5 * np.pi,
                       tau_max: float | None = None) -> BranchTable:
    """Adaptively build the regular branch of ln G.

    Seeded with 512 Chebyshev-spaced nodes (clustered at both ends of
    [0, tau_max], where G flattens) and bisected until the principal-angle
    step between adjacent nodes is below `tol` (< pi is required for an
    unambiguous unwrap; the default keeps a factor-2 margin).
    """
    if tau_max is None:
        tau_max = default_tau_max()
    if not 0 < tol < np.pi:
        raise ValueError("tol must lie in (0, pi)")
    k = np.arange(512, dtype=float)
    nodes = 0.5 * tau_max * (1.0 - np.cos(np.pi * k / 511.0))
    nodes[0], nodes[-1] = 0.0, tau_max
    nodes = _seed_dip_clusters(nodes, kp, tau_max)
    g = g_coefficient(nodes, kp)
    g[0] = 1.0  # exact: G(0) = 1

    while True:
        steps = np.angle(g[1:] / g[:-1])
        bad = np.flatnonzero(np.abs(steps) >= tol)
        if bad.size == 0:
            break
        if nodes.size + bad.size > _NODE_BUDGET:
            i = bad[0]
            raise NonConvergenceError(
                f"branch refinement exceeded {_NODE_BUDGET} nodes; first "
                f"violating interval [{nodes[i]:.6g}, {nodes[i+1]:.6g}]"
            )
        mids = 0.5 * (nodes[bad] + nodes[bad + 1])
        gm = g_coefficient(mids, kp)
        nodes = np.insert(nodes, bad + 1, mids)
        g = np.insert(g, bad + 1, gm)

    arg = np.concatenate(([0.0], np.cumsum(np.angle(g[1:] / g[:-1]))))
    log_abs = np.log(np.abs(g))
    kappa_hint = int(round(arg[-1] / (2.0 * np.pi)))
    return BranchTable(nodes=nodes, log_abs=log_abs, arg=arg, kappa_hint=kappa_hint)
