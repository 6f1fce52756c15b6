import math

import numpy as np
import pytest

from skinfx import (
    RootSelectionError,
    classify_delta,
    find_discrete_zeros,
    from_plasma,
    from_transport,
    index_kappa,
    l_curve,
    lambda_curve,
    lambda_value,
    p_pv,
    q_value,
    y_root,
)
from skinfx.params import PhysicalParams
from skinfx.spectrum import MU_MAX_CURVE, _sextic_residual

KP0 = from_transport(0.1, 1e-3, 0.1)
KP1 = from_transport(0.5, 1e-3, 1.0)


def test_index_examples():
    assert index_kappa(KP0) == 0
    assert index_kappa(KP1) == 1
    # |delta| far outside the boundary curve -> kappa = 0
    far = from_transport(0.3, 0.0, 1e-3)
    assert abs(far.delta) > 100
    assert index_kappa(far) == 0


def test_zeros_are_zeros_and_even():
    for kp in (KP0, KP1):
        spec = find_discrete_zeros(kp, index_kappa(kp))
        assert len(spec.zeros) == 1 + spec.kappa
        assert spec.n_zeros == 2 + 2 * spec.kappa
        for eta, res in zip(spec.zeros, spec.residuals):
            bound = 1e-10 * max(1.0, abs(kp.b - kp.a) * abs(eta) ** 2)
            assert res <= bound
            assert abs(complex(lambda_value(-eta, kp))) <= bound
            assert (kp.z0 / eta).real > 0


def test_random_points_count_matches_index():
    rng = np.random.default_rng(11)
    for _ in range(50):
        omega_tau = rng.uniform(0.0, 1.5)
        alpha = 10.0 ** rng.uniform(-1.5, 1.5)
        q = 10.0 ** rng.uniform(-4, -2)
        kp = from_transport(omega_tau, q, alpha)
        kappa = index_kappa(kp)
        spec = find_discrete_zeros(kp, kappa)  # raises on tally mismatch
        assert len(spec.zeros) == 1 + kappa


def test_classify_boundary_point():
    # delta placed exactly on the curve at mu = 1
    target = 1.0 / complex(p_pv(1.0) + 1j * q_value(1.0))
    phase = np.angle(target)
    omega_tau = np.tan((phase + np.pi / 2.0) / 3.0)
    alpha = abs(target) * abs(1.0 - 1j * omega_tau) ** 3
    kp = from_transport(omega_tau, 0.0, alpha)
    assert classify_delta(kp).label == "Boundary"


def test_classify_far_point_is_delta_minus():
    mu = np.linspace(0, MU_MAX_CURVE, 2000)
    curve_bound = float(np.max(np.abs(p_pv(mu)) + np.abs(q_value(mu))))
    far = from_transport(0.3, 0.0, 1e-3)
    assert abs(far.delta) > 2 * curve_bound
    assert classify_delta(far).label == "DeltaMinus"


def test_classification_agrees_with_index_on_grid():
    # (gamma, eps) grid at v_c = 0.001 with the retardation term dropped
    vc = 0.001
    vtc = vc / math.sqrt(math.pi / 4.0)
    curve = l_curve(vc, 100)
    gmax = 1.4 * float(curve.coords[:, 0].max())
    emax = 1.4 * float(curve.coords[:, 1].max())
    n = 20
    checked = 0
    for gam in np.linspace(gmax / n, gmax, n):
        for eps in np.linspace(emax / n, emax, n):
            kp_full = from_plasma(PhysicalParams(float(gam), float(eps), vtc))
            kp = from_transport(kp_full.omega_tau, 0.0, kp_full.alpha)
            dom = classify_delta(kp)
            if dom.label == "Boundary":
                continue
            kappa = index_kappa(kp)
            expected = "DeltaPlus" if kappa == 1 else "DeltaMinus"
            assert dom.label == expected, (gam, eps, dom.label, kappa)
            checked += 1
    assert checked >= 350


def test_lambda_curve_values():
    cp = lambda_curve(601)
    # both branches start at the origin
    starts = cp.coords[cp.mu == 0.0]
    assert np.allclose(starts, 0.0)
    # at mu = 1: (p(1), +/-q(1))
    idx = np.flatnonzero(np.isclose(cp.mu, 1.0) & (cp.branch > 0))[0]
    assert cp.coords[idx, 0] == pytest.approx(1.07616, abs=1e-5)
    # reference value rounded to 5 digits; true value is 0.6520493
    assert cp.coords[idx, 1] == pytest.approx(0.65202, abs=5e-5)
    # mirror symmetry of the branches
    plus = cp.coords[cp.branch > 0]
    minus = cp.coords[cp.branch < 0]
    assert np.allclose(plus[:, 0], minus[:, 0])
    assert np.allclose(plus[:, 1], -minus[:, 1])


def test_y_root_properties():
    assert y_root(0.0) == 0.0
    prev = 0.0
    for mu in np.linspace(0.05, 6.0, 120):
        y = y_root(mu)
        p, q = float(p_pv(mu)), float(q_value(mu))
        # sextic residual, relative to the cubic's natural scale
        assert abs(_sextic_residual(y * y, p, q)) <= 1e-12 * max(1.0, p) ** 3
        # unsquared upper-branch equation
        rad = 3.0 * y * y - p
        assert rad >= 0.0
        assert abs(-8.0 * y**3 + 3.0 * p * y - q * math.sqrt(rad)) \
            <= 1e-9 * max(1.0, 8.0 * y**3)
        assert y > prev  # monotone along the curve
        prev = y


def test_y_root_rejects_negative():
    with pytest.raises((ValueError, RootSelectionError)):
        y_root(-1.0)


def test_l_curve_through_origin():
    for vc in (0.0006, 0.001, 0.013):
        cp = l_curve(vc, 50)
        assert cp.coords[0, 0] == 0.0
        assert cp.coords[0, 1] == 0.0
        assert np.all(np.isfinite(cp.coords))
        assert np.all(cp.coords[1:, 1] > 0)


def test_l_curve_scales_linearly_with_vc():
    a = l_curve(0.001, 30).coords
    b = l_curve(0.002, 30).coords
    assert np.allclose(2.0 * a, b, rtol=1e-12)
