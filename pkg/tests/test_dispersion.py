import numpy as np
import pytest

from skinfx import (
    DegenerateCoefficientError,
    build_branch_table,
    from_transport,
    g_coefficient,
    lambda_boundary,
    lambda_value,
    p_pv,
    q_value,
)
from skinfx.dispersion import continuous_arg, default_tau_max

KP0 = from_transport(0.1, 1e-3, 0.1)   # index 0
KP1 = from_transport(0.5, 1e-3, 1.0)   # index 1


def test_lambda_evenness():
    rng = np.random.default_rng(7)
    z = rng.normal(size=20) + 1j * rng.normal(size=20)
    for kp in (KP0, KP1):
        assert np.allclose(lambda_value(z, kp), lambda_value(-z, kp), rtol=1e-13)


def test_lambda_asymptotic_bound():
    z = 50j
    for kp in (KP0, KP1):
        lead = (kp.b - kp.a) * z**2 + (1.0 - kp.a / 2.0)
        err = abs(complex(lambda_value(z, kp)) - lead)
        assert err <= 2.0 * abs(3.0 * kp.a / (4.0 * z**2))


def test_boundary_values_match_offaxis_limits():
    eps = 1e-8
    mu = np.array([0.4, 1.1, 2.0])
    for kp in (KP0, KP1):
        above, below = lambda_boundary(mu, kp)
        assert np.allclose(lambda_value(mu + 1j * eps, kp), above, atol=1e-6)
        assert np.allclose(lambda_value(mu - 1j * eps, kp), below, atol=1e-6)
        # jump orientation: from above minus from below = +2i*a*q
        assert np.allclose(above - below, 2j * kp.a * q_value(mu), rtol=1e-12)


def test_conjugation_symmetry_of_boundary_values():
    mu = np.array([0.3, 0.9, 1.7])
    for kp in (KP0, KP1):
        above, below = lambda_boundary(mu, kp)
        above_neg, _ = lambda_boundary(-mu, kp)
        assert np.allclose(above_neg, below, rtol=1e-14)


def test_g_limits():
    kp = KP1
    small = np.array([1e-4, 1e-3, 1e-2])
    assert np.allclose(g_coefficient(small, kp), 1.0, atol=1e-5)
    big = np.array([7.0, 8.0])
    assert np.allclose(g_coefficient(big, kp), 1.0, atol=1e-12)


def test_g_degenerate_raises():
    # choose a so that lambda_below vanishes exactly at mu0 (with Q = 0):
    # a = 1/(p_pv + i*q) there, reachable by tuning omega_tau and alpha
    mu0 = 1.0
    target = 1.0 / complex(p_pv(mu0) + 1j * q_value(mu0))
    phase = np.angle(target)  # in (-pi/2, 0)
    omega_tau = np.tan((phase + np.pi / 2.0) / 3.0)
    z0 = 1.0 - 1j * omega_tau
    alpha = abs(target) * abs(z0) ** 3
    kp = from_transport(omega_tau, 0.0, alpha)
    assert abs(kp.a - target) < 1e-12 * abs(target)
    with pytest.raises(DegenerateCoefficientError):
        g_coefficient(np.array([mu0]), kp)


def test_branch_table_invariants():
    for kp, expected in ((KP0, 0), (KP1, 1)):
        table = build_branch_table(kp)
        assert table.nodes[0] == 0.0
        assert np.all(np.diff(table.nodes) > 0)
        assert table.arg[0] == 0.0
        assert table.kappa_hint == expected
        assert abs(table.arg[-1] / (2 * np.pi) - expected) < 0.05
        # principal-angle steps below the refinement tolerance
        g = np.exp(table.log_abs + 1j * table.arg)
        steps = np.angle(g[1:] / g[:-1])
        assert np.max(np.abs(steps)) < 0.5 * np.pi
        # Gaussian tail: ln G negligible at tau_max
        assert abs(table.log_abs[-1] + 1j * (table.arg[-1] - 2 * np.pi * expected)) < 1e-12


def test_continuous_arg_snaps_to_table():
    table = build_branch_table(KP1)
    tau = np.linspace(0.2, table.tau_max - 0.5, 50)
    g = g_coefficient(tau, KP1)
    arg = continuous_arg(tau, g, table)
    approx = np.interp(tau, table.nodes, table.arg)
    assert np.max(np.abs(arg - approx)) < np.pi


def test_default_tau_max_env(monkeypatch):
    assert default_tau_max() == 8.0
    monkeypatch.setenv("SKINFX_TAU_MAX", "9.5")
    assert default_tau_max() == 9.5


def test_hidden_winding_near_real_delta():
    # delta close to the real axis: arg G loops inside a window of width
    # ~|a|q around the zero crossing of the principal-value branch; the
    # table must resolve it (plain bisection alone cannot see it)
    mu0 = 4.45
    a = 1.0 / float(p_pv(mu0))  # real positive, delta = p_pv(mu0) on the axis
    omega_tau = np.tan(np.pi / 6.0)  # makes -i/z0**3 purely real positive
    alpha = a * abs(1.0 - 1j * omega_tau) ** 3
    kp = from_transport(omega_tau, 0.0, alpha)
    assert abs(kp.delta.imag) < 1e-10 * abs(kp.delta)
    table = build_branch_table(kp)
    assert table.kappa_hint == 1
