"""Plasma dispersion integral p(z), its boundary values and q(mu).

    p(z) = -(z**3/sqrt(pi)) * int exp(-mu**2)/(mu - z) dmu
    q(mu) = sqrt(pi) * mu**3 * exp(-mu**2)

p is analytic off the real axis with a jump of magnitude 2*q across it.
Both one-sided branches continue to entire functions through the Faddeeva
function w(z):

    upper branch:  p(z) = -i*sqrt(pi)*z**3*w(z)
    lower branch:  p(z) = +i*sqrt(pi)*z**3*w(-z)

Sign orientation (fixed against an adaptive-quadrature oracle, consumed by
the dispersion module): the limit from ABOVE the real axis is

    p(mu + i0) = p_pv(mu) - i*q(mu),      p_pv(mu) = 2*mu**3*D(mu),

with D the Dawson integral.  The limit from below is p_pv + i*q, and the
principal-value branch is the arithmetic mean of the two.
"""

from __future__ import annotations

import numpy as np
from scipy.special import dawsn, wofz

from .errors import ParameterDomainError

__all__ = ["q_value", "p_value", "p_pv", "p_derivative_pv", "q_derivative"]

SQRT_PI = np.sqrt(np.pi)

# Beyond this radius the Maclaurin/Faddeeva evaluation is replaced by the
# asymptotic series; the two agree to ~1e-14 well inside the switch point.
_ASYMPTOTIC_RADIUS = 5.0e3


def q_value(mu):
    """q(mu) = sqrt(pi)*mu**3*exp(-mu**2); odd in mu.  Accepts arrays."""
    mu = np.asarray(mu)
    return SQRT_PI * mu**3 * np.exp(-(mu**2))


def q_derivative(mu):
    """d q/d mu = sqrt(pi)*exp(-mu**2)*(3*mu**2 - 2*mu**4)."""
    mu = np.asarray(mu)
    return SQRT_PI * np.exp(-(mu**2)) * (3.0 * mu**2 - 2.0 * mu**4)


def p_pv(mu):
    """Principal-value branch on the real axis: 2*mu**3*D(mu).  Accepts arrays."""
    mu = np.asarray(mu, dtype=float)
    return 2.0 * mu**3 * dawsn(mu)


def p_derivative_pv(mu):
    """d p_pv/d mu, using D'(mu) = 1 - 2*mu*D(mu)."""
    mu = np.asarray(mu, dtype=float)
    d = dawsn(mu)
    return 2.0 * mu**3 + (6.0 * mu**2 - 4.0 * mu**4) * d


def _p_asymptotic(z):
    zi2 = 1.0 / (z * z)
    return z * z + 0.5 + zi2 * (0.75 + zi2 * (1.875 + zi2 * 6.5625))


def _q_complex(z):
    return SQRT_PI * z**3 * np.exp(-(z * z))


def _p_upper(z):
    """Entire continuation of the upper branch."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    big = np.abs(z) > _ASYMPTOTIC_RADIUS
    if np.any(big):
        out[big] = _p_asymptotic(z[big])
    rest = ~big
    if np.any(rest):
        zr = z[rest]
        vals = np.empty_like(zr)
        up = zr.imag >= 0
        # w(z) is bounded in the upper half-plane; in the lower half-plane the
        # continuation is written through w(-z) plus the explicit exponential
        # so the only overflow channel is the genuine growth of exp(-z**2).
        vals[up] = -1j * SQRT_PI * zr[up] ** 3 * wofz(zr[up])
        lo = ~up
        vals[lo] = 1j * SQRT_PI * zr[lo] ** 3 * wofz(-zr[lo]) - 2j * _q_complex(zr[lo])
        out[rest] = vals
    return out


def p_value(z, side="auto"):
    """Evaluate p on the requested branch.

    side: 'above'  -- branch analytic in the upper half-plane (entire
                      continuation used off it),
          'below'  -- branch analytic in the lower half-plane,
          'pv'     -- principal-value branch; z must be real,
          'auto'   -- pick 'above'/'below'/'pv' from sign(Im z).

    Scalar in, scalar out; arrays are supported elementwise.
    """
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if side == "auto":
        out = np.empty_like(z)
        up, lo = z.imag > 0, z.imag < 0
        on = ~(up | lo)
        if np.any(up):
            out[up] = _p_upper(z[up])
        if np.any(lo):
            out[lo] = np.conj(_p_upper(np.conj(z[lo])))
        if np.any(on):
            out[on] = p_pv(z[on].real)
    elif side == "above":
        out = _p_upper(z)
    elif side == "below":
        out = np.conj(_p_upper(np.conj(z)))
    elif side == "pv":
        if np.any(z.imag != 0):
            raise ParameterDomainError("principal-value branch requires real z")
        out = p_pv(z.real).astype(complex)
    else:
        raise ParameterDomainError(f"unknown side {side!r}")
    return out[0] if scalar else out


def p_upper_derivative(z):
    """d/dz of the upper-branch continuation (used by Newton polishing).

    d/dz [-i*sqrt(pi)*z**3*w(z)] with w'(z) = -2*z*w(z) + 2i/sqrt(pi).
    """
    z = np.asarray(z, dtype=complex)
    w = wofz(z)
    wp = -2.0 * z * w + 2j / SQRT_PI
    return -1j * SQRT_PI * (3.0 * z**2 * w + z**3 * wp)
