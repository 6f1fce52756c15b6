import numpy as np
import pytest
from scipy.integrate import quad

from skinfx import (
    ParameterDomainError,
    SkinfxError,
    build_solution,
    distribution,
    efield_profile,
    from_transport,
    impedance,
    local_limit_impedance,
)
from skinfx.solution import impedance_prefactor
from skinfx.params import KineticParams
from skinfx.solution import SQRT_PI, _e_value, closure_residual
from skinfx.specfun import p_pv

KP0 = from_transport(0.1, 1e-3, 0.1)   # index 0
KP1 = from_transport(0.5, 1e-3, 1.0)   # index 1

PAY0 = build_solution(KP0)
PAY1 = build_solution(KP1)


def test_discrete_coefficient_routes_agree():
    # index 0: the closure route and the pole-elimination route coincide
    assert abs(PAY0.C[0] - PAY0.C_alt[0]) <= 1e-10 * abs(PAY0.C[0])
    # index 1: the two discrete constants cancel
    assert PAY1.C[0] + PAY1.C[1] == 0


def test_closure_identity():
    assert closure_residual(PAY0) < 1e-12
    assert closure_residual(PAY1) < 1e-12


@pytest.mark.parametrize("pay", [PAY0, PAY1], ids=["kappa0", "kappa1"])
def test_field_normalized_at_wall(pay):
    e0 = complex(_e_value(0.0, pay)[0])
    assert abs(e0 - 1.0) < 1e-8


@pytest.mark.parametrize("pay", [PAY0, PAY1], ids=["kappa0", "kappa1"])
def test_diffuse_wall_boundary_condition(pay):
    # electrons leaving the wall carry no perturbation: h(0, mu) = 0, mu > 0
    kp = pay.kp
    worst = max(
        abs(distribution(kp, 0.0, float(m), pay))
        for m in np.linspace(0.1, 3.0, 12)
    )
    assert worst < 1e-6


@pytest.mark.parametrize("pay", [PAY0, PAY1], ids=["kappa0", "kappa1"])
def test_field_equation_residual(pay):
    # e''(x) = -Q**2 e - (i*alpha/sqrt(pi)) int exp(-mu**2) h dmu
    kp = pay.kp
    T = pay.rep.tau_max
    h = 0.005
    for x in (0.1, 1.0, 5.0):
        st = np.array([-2, -1, 0, 1, 2]) * h + x
        e = _e_value(st, pay)
        d2 = (-e[0] + 16 * e[1] - 30 * e[2] + 16 * e[3] - e[4]) / (12 * h * h)

        def f(m, part):
            v = np.exp(-m * m) * distribution(kp, x, float(m), pay)
            return v.real if part == 0 else v.imag

        integ = sum(
            quad(f, lo, hi, args=(0,), limit=400)[0]
            + 1j * quad(f, lo, hi, args=(1,), limit=400)[0]
            for lo, hi in ((-12.0, 0.0), (0.0, T), (T, 12.0))
        )
        rhs = -kp.Q**2 * e[2] - 1j * kp.alpha / SQRT_PI * integ
        assert abs(d2 - rhs) < 1e-6


def test_eigenfunction_normalization_identity():
    # int exp(-mu**2) Phi(eta, mu) dmu = (1 + b*eta**2) exp(-eta**2)
    # with Phi = (a/sqrt(pi)) eta**3 exp(-eta**2)/(eta - mu) (PV)
    #          + lambda_pv(eta) delta(mu - eta)
    for kp in (KP0, KP1):
        for eta in (0.5, 1.2, 2.0):
            L = 10.0 + eta
            pv = quad(lambda t: np.exp(-t * t), -L, L, weight="cauchy",
                      wvar=eta, limit=200)[0]
            cauchy_part = kp.a / SQRT_PI * eta**3 * np.exp(-(eta**2)) * (-pv)
            lam_pv = 1.0 + kp.b * eta**2 - kp.a * float(p_pv(eta))
            total = cauchy_part + lam_pv * np.exp(-(eta**2))
            target = (1.0 + kp.b * eta**2) * np.exp(-(eta**2))
            assert abs(total - target) < 1e-9 * max(1.0, abs(target))


def test_profile_decays_and_starts_at_one():
    x = np.linspace(0.0, 20.0, 41)
    for kp, pay in ((KP0, PAY0), (KP1, PAY1)):
        prof = efield_profile(kp, x, pay)
        assert abs(prof.e[0] - 1.0) < 1e-8
        assert abs(prof.e[-1]) < abs(prof.e[0])
        assert np.all(np.isfinite(prof.e))


def test_impedance_continuous_across_index_transition():
    # sweep alpha through the two-mode/four-mode transition at fixed omega_tau
    alphas = np.geomspace(0.1, 1.0, 50)
    zs, ks = [], []
    for al in alphas:
        kp = from_transport(0.5, 1e-3, float(al))
        try:
            rep = impedance(kp)
        except SkinfxError:
            continue
        zs.append(rep.Z)
        ks.append(rep.kappa)
    assert len(zs) >= 45
    assert set(ks) == {0, 1}  # the transition is inside the sweep
    rel = np.abs(np.diff(zs)) / np.abs(zs[:-1])
    assert np.max(rel) < 0.1


def test_local_limit():
    kp = from_transport(0.5, 1e-3, 1e-3)
    z_exact = impedance(kp).Z
    z_local = local_limit_impedance(kp)
    assert abs(z_exact - z_local) < 0.01 * abs(z_local)


def test_impedance_prefactor_requires_positive_q():
    with pytest.raises(ParameterDomainError):
        impedance_prefactor(KineticParams(omega_tau=0.5, Q=0.0, alpha=1.0))


def test_profile_rejects_negative_x():
    with pytest.raises(ParameterDomainError):
        efield_profile(KP0, np.array([-1.0, 0.0]), PAY0)
    with pytest.raises(ParameterDomainError):
        distribution(KP0, -1.0, 0.5, PAY0)
