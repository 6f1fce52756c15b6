"""Problem parameters and conversions between the three parameterizations.

The canonical internal form is the transport triple (omega_tau, Q, alpha):

    z0    = 1 - i*omega_tau          (collision/frequency factor, Re z0 = 1)
    Q     = omega*l/c                (retardation parameter)
    alpha = 2*l**2/delta_cl**2       (anomaly parameter)

from which the derived complex constants are

    a     = -i*alpha/z0**3
    b     = Q**2/z0**2
    delta = 1/a

`delta` is the point whose position relative to the spectral boundary curve
decides whether the dispersion function has two or four zeros.  The plasma
parameterization (gamma=omega/omega_p, eps=nu/omega_p, v_T/c) is normalized
to the transport triple on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ParameterDomainError

__all__ = ["PhysicalParams", "KineticParams", "from_transport", "from_plasma"]


def _require_finite(name, value):
    if not math.isfinite(value):
        raise ParameterDomainError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """Plasma-frequency parameterization.

    gamma = omega/omega_p, eps = nu/omega_p, vt_over_c = v_T/c.
    The derived v_c = sqrt(pi/4)*v_T/c is the thermal-velocity scale used by
    the boundary curves in the (gamma, eps) plane.
    """

    gamma: float
    eps: float
    vt_over_c: float

    def __post_init__(self):
        for name in ("gamma", "eps", "vt_over_c"):
            _require_finite(name, getattr(self, name))
        if self.gamma <= 0:
            raise ParameterDomainError(f"gamma must be > 0, got {self.gamma}")
        if self.eps <= 0:
            raise ParameterDomainError(
                f"eps must be > 0 (collisionless limit not supported), got {self.eps}"
            )
        if not 0 < self.vt_over_c < 1:
            raise ParameterDomainError(
                f"vt_over_c must lie in (0, 1), got {self.vt_over_c}"
            )

    @property
    def v_c(self) -> float:
        return math.sqrt(math.pi / 4.0) * self.vt_over_c


@dataclass(frozen=True)
class KineticParams:
    """Dimensionless problem constants in canonical (omega_tau, Q, alpha) form."""

    omega_tau: float
    Q: float
    alpha: float
    z0: complex = field(init=False)
    a: complex = field(init=False)
    b: complex = field(init=False)
    delta: complex = field(init=False)

    def __post_init__(self):
        for name in ("omega_tau", "Q", "alpha"):
            _require_finite(name, getattr(self, name))
        if self.omega_tau < 0:
            raise ParameterDomainError(f"omega_tau must be >= 0, got {self.omega_tau}")
        if self.Q < 0:
            raise ParameterDomainError(f"Q must be >= 0, got {self.Q}")
        if self.alpha <= 0:
            raise ParameterDomainError(f"alpha must be > 0, got {self.alpha}")
        z0 = 1.0 - 1j * self.omega_tau
        object.__setattr__(self, "z0", z0)
        object.__setattr__(self, "a", -1j * self.alpha / z0**3)
        object.__setattr__(self, "b", self.Q**2 / z0**2)
        object.__setattr__(self, "delta", 1.0 / self.a)


def from_transport(omega_tau: float, Q: float, alpha: float) -> KineticParams:
    """Build KineticParams from the transport triple."""
    return KineticParams(float(omega_tau), float(Q), float(alpha))


def from_plasma(p: PhysicalParams) -> KineticParams:
    """Convert the plasma parameterization to the canonical transport triple.

    omega_tau = gamma/eps, Q = (gamma/eps)*(v_T/c), alpha = gamma*v_c**2/eps**3.
    With these, delta = 1/a reproduces the closed form
    -(gamma + i*eps)**3/(v_c**2*gamma) identically.
    """
    omega_tau = p.gamma / p.eps
    Q = omega_tau * p.vt_over_c
    alpha = p.gamma * p.v_c**2 / p.eps**3
    return from_transport(omega_tau, Q, alpha)


def delta_closed_form(p: PhysicalParams) -> complex:
    """delta expressed directly through (gamma, eps, v_c); cross-check for 1/a."""
    return -((p.gamma + 1j * p.eps) ** 3) / (p.v_c**2 * p.gamma)
