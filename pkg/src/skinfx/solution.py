"""Assembly of the full analytic solution and the surface impedance.

Under the normalization e(0) = 1 the discrete coefficients follow from the
factor function and the decaying zeros, the continuous coefficient from the
jump of 1/X across the cut, and the impedance from

    Z = prefactor * [X'(0)/X(0) - sum_k 1/eta_k]**-1 / z0-scaling,

with one 1/eta_k term per decaying zero (one for index 0, two for index 1).
The Gaussian-unit prefactor 4*pi*i*omega*l/c**2 is carried as 4*pi*i*Q
(the leftover 1/c is a fixed unit constant shared by every solver in this
package, so all cross-comparisons are convention-free).

Profile reconstruction evaluates the eigenfunction expansion on the factor
representation's quadrature grid; principal-value kernels in the
distribution function are integrated by jump-splitting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dispersion import build_branch_table
from .errors import DegenerateCoefficientError, ParameterDomainError
from .factor import (
    FactorRep,
    build_factor,
    x_at_zero,
    x_boundary,
    x_logderiv_at_zero,
    x_value,
)
from .params import KineticParams
from .spectrum import SpectrumReport, find_discrete_zeros, index_kappa
from .specfun import p_pv, q_value

__all__ = [
    "ImpedanceReport",
    "ProfileTable",
    "SolutionPayload",
    "build_solution",
    "discrete_coefficients",
    "continuous_coefficient",
    "impedance",
    "impedance_prefactor",
    "local_limit_impedance",
    "efield_profile",
    "distribution",
]

SQRT_PI = np.sqrt(np.pi)


@dataclass(frozen=True)
class ImpedanceReport:
    Z: complex
    e_prime_0: complex
    logderiv: complex  # X'(0)/X(0)
    kappa: int
    zeros: tuple


@dataclass(frozen=True)
class SolutionPayload:
    """Everything needed to evaluate the expansion: zeros, factor, coefficients."""

    kp: KineticParams
    kappa: int
    spec: SpectrumReport
    rep: FactorRep
    x0: complex
    C: tuple  # discrete constants, one per decaying zero
    A: tuple  # discrete expansion coefficients
    C_alt: tuple  # second route to C (consistency diagnostic)
    a_cont: np.ndarray  # continuous coefficient A(eta) at rep.nodes


@dataclass(frozen=True)
class ProfileTable:
    x: np.ndarray
    e: np.ndarray
    payload: SolutionPayload


def impedance_prefactor(kp: KineticParams) -> complex:
    """4*pi*i*Q; the fixed 1/c unit constant is left out (see module doc)."""
    if kp.Q <= 0:
        raise ParameterDomainError("impedance requires Q > 0 (prefactor vanishes)")
    return 4j * np.pi * kp.Q


def discrete_coefficients(kp: KineticParams, spec: SpectrumReport, rep: FactorRep):
    """(C, A, C_alt): discrete constants under the e(0)=1 normalization.

    Index 0: C0 from the closure identity, with the pole-elimination route
    kept as C_alt.  Index 1: C0 + C1 = 0 by construction and A_k from the
    pole-elimination relations.
    """
    if spec.kappa != rep.kappa:
        raise DegenerateCoefficientError("spectrum and factor disagree on kappa")
    az0 = kp.a * kp.z0
    x0 = x_at_zero(rep)
    if spec.kappa == 0:
        (eta0,) = spec.zeros
        x_eta0 = complex(x_value(eta0, rep))
        c0 = -eta0 / az0 * x0
        a0 = SQRT_PI * x0 / (az0 * x_eta0 * eta0**2 * np.exp(-(eta0**2)))
        c0_alt = -a0 / SQRT_PI * np.exp(-(eta0**2)) * eta0**3 * x_eta0
        return (c0,), (a0,), (c0_alt,)
    eta0, eta1 = spec.zeros
    if abs(eta0 - eta1) < 1e-8:
        raise DegenerateCoefficientError(f"degenerate spectrum: eta0 ~ eta1 ~ {eta0:.6g}")
    c0 = x0 / (az0 * (1.0 / eta1 - 1.0 / eta0))
    cs = (c0, -c0)
    a_s = tuple(
        -SQRT_PI * c / (eta**3 * np.exp(-(eta**2)) * complex(x_value(eta, rep)))
        for c, eta in zip(cs, spec.zeros)
    )
    return cs, a_s, cs


def continuous_coefficient(eta, payload: SolutionPayload):
    """A(eta) from the jump of 1/X across the cut, eta in (0, tau_max)."""
    scalar = np.isscalar(eta) or np.asarray(eta).ndim == 0
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    xp = x_boundary(eta, "above", payload.rep)
    xm = x_boundary(eta, "below", payload.rep)
    jump = 1.0 / xp - 1.0 / xm
    pole_sum = np.zeros_like(eta, dtype=complex)
    for c, etak in zip(payload.C, payload.spec.zeros):
        pole_sum += c / (eta - etak)
    out = jump * pole_sum / (2.0 * SQRT_PI * 1j * eta**3 * np.exp(-(eta**2)))
    return out[0] if scalar else out


def build_solution(kp: KineticParams) -> SolutionPayload:
    """Full pipeline: branch table -> kappa -> zeros -> factor -> coefficients."""
    table = build_branch_table(kp)
    kappa = index_kappa(kp, table)
    spec = find_discrete_zeros(kp, kappa)
    rep = build_factor(kp, table=table)
    cs, a_s, cs_alt = discrete_coefficients(kp, spec, rep)
    payload = SolutionPayload(kp=kp, kappa=kappa, spec=spec, rep=rep,
                              x0=x_at_zero(rep), C=cs, A=a_s, C_alt=cs_alt,
                              a_cont=np.empty(0))
    a_cont = continuous_coefficient(rep.nodes, payload)
    object.__setattr__(payload, "a_cont", a_cont)
    return payload


def impedance(kp: KineticParams) -> ImpedanceReport:
    """Surface impedance from the exact closed-form expression."""
    pref = impedance_prefactor(kp)
    table = build_branch_table(kp)
    kappa = index_kappa(kp, table)
    spec = find_discrete_zeros(kp, kappa)
    rep = build_factor(kp, table=table)
    logderiv = x_logderiv_at_zero(rep)
    e_prime_0 = kp.z0 * (logderiv - sum(1.0 / eta for eta in spec.zeros))
    return ImpedanceReport(Z=pref / (kp.z0 * e_prime_0), e_prime_0=e_prime_0,
                           logderiv=logderiv, kappa=kappa, zeros=spec.zeros)


def local_limit_impedance(kp: KineticParams) -> complex:
    """Closed-form normal-skin-effect impedance (local conductivity limit).

    With the distribution slaved to the field, h = e/z0, the field equation
    closes to e'' = -(Q**2 + i*alpha/z0)*e, whose decaying solution gives
    e'(0)/e(0) = -sqrt(-Q**2 - i*alpha/z0) with Re of the root positive.
    """
    pref = impedance_prefactor(kp)
    k = np.sqrt(-kp.Q**2 - 1j * kp.alpha / kp.z0 + 0j)
    if k.real < 0:
        k = -k
    return complex(-pref / (kp.z0 * k))


def _decay_factor(expo):
    """exp(-expo) with underflow clamped to exactly zero."""
    expo = np.asarray(expo, dtype=complex)
    out = np.zeros_like(expo)
    ok = expo.real < 700.0
    out[ok] = np.exp(-expo[ok])
    return out


def _e_value(x, payload: SolutionPayload):
    """e(x) from the eigenfunction expansion; e(0) = 1 up to quadrature."""
    kp = payload.kp
    rep = payload.rep
    x = np.atleast_1d(np.asarray(x, dtype=float))
    acc = np.zeros(x.shape, dtype=complex)
    for a_k, eta in zip(payload.A, payload.spec.zeros):
        acc += a_k * eta**2 * _decay_factor(eta**2 + kp.z0 * x / eta)
    cont = payload.a_cont[None, :] * rep.nodes[None, :] ** 2 * _decay_factor(
        rep.nodes[None, :] ** 2 + kp.z0 * x[:, None] / rep.nodes[None, :]
    )
    acc += (rep.weights[None, :] * cont).sum(axis=1)
    return kp.a * kp.z0 / SQRT_PI * acc


def efield_profile(kp: KineticParams, x_grid,
                   payload: SolutionPayload | None = None) -> ProfileTable:
    """Sampled e(x) on x_grid (mean-free-path units), normalized to e(0) = 1."""
    if payload is None:
        payload = build_solution(kp)
    x_grid = np.asarray(x_grid, dtype=float)
    if np.any(x_grid < 0):
        raise ParameterDomainError("x_grid must be nonnegative")
    return ProfileTable(x=x_grid, e=_e_value(x_grid, payload), payload=payload)


def distribution(kp: KineticParams, x: float, mu: float,
                 payload: SolutionPayload | None = None) -> complex:
    """h(x, mu) from the expansion; PV kernel by jump-splitting.

    The delta part of the continuous eigenfunctions contributes
    lambda_pv(mu)*A(mu)*exp(-z0*x/mu) for mu inside the cut.
    """
    if payload is None:
        payload = build_solution(kp)
    rep = payload.rep
    x = float(x)
    mu = float(mu)
    if x < 0:
        raise ParameterDomainError("x must be >= 0")
    T = rep.tau_max
    nodes, weights = rep.nodes, rep.weights
    acc = 0.0 + 0.0j
    for a_k, eta in zip(payload.A, payload.spec.zeros):
        acc += a_k * eta**3 * complex(_decay_factor(eta**2 + kp.z0 * x / eta)) / (eta - mu)
    f_nodes = nodes**3 * np.exp(-(nodes**2)) * payload.a_cont * np.ravel(
        _decay_factor(kp.z0 * x / nodes)
    )
    if 0.0 < mu < T:
        if np.min(np.abs(nodes - mu)) < 1e-12:
            mu += 1e-9  # nudge off a quadrature node
        a_mu = complex(continuous_coefficient(mu, payload))
        f_mu = mu**3 * np.exp(-(mu**2)) * a_mu * complex(_decay_factor(kp.z0 * x / mu))
        acc += ((weights * (f_nodes - f_mu) / (nodes - mu)).sum()
                + f_mu * np.log((T - mu) / mu))
        lam_pv = 1.0 + kp.b * mu**2 - kp.a * float(p_pv(mu))
        delta_term = lam_pv * a_mu * complex(_decay_factor(kp.z0 * x / mu))
    else:
        acc += (weights * f_nodes / (nodes - mu)).sum()
        delta_term = 0.0
    return kp.a / SQRT_PI * acc + delta_term


def closure_residual(payload: SolutionPayload) -> float:
    """|reconstruction closure - 1/(a*z0)| relative: the identity forcing e(0)=1."""
    kp = payload.kp
    rep = payload.rep
    n0 = (rep.weights * rep.nodes**2 * np.exp(-(rep.nodes**2))
          * payload.a_cont).sum() / SQRT_PI
    disc = sum(
        a_k * eta**2 * np.exp(-(eta**2)) / SQRT_PI
        for a_k, eta in zip(payload.A, payload.spec.zeros)
    )
    target = 1.0 / (kp.a * kp.z0)
    return abs((disc + n0 - target) / target)
