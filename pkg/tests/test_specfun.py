import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import erfc

from skinfx import ParameterDomainError, p_pv, p_value, q_value
from skinfx.specfun import SQRT_PI, p_derivative_pv, p_upper_derivative, q_derivative


def pv_oracle(mu: float) -> float:
    """Principal-value quadrature of the defining integral on the real axis."""
    L = 10.0 + abs(mu)
    val = quad(lambda t: np.exp(-t * t), -L, L, weight="cauchy", wvar=mu,
               limit=200)[0]
    return -(mu**3) / np.sqrt(np.pi) * val


def offaxis_oracle(z: complex) -> complex:
    """Adaptive quadrature of the defining integral for z off the real axis."""
    L = 12.0 + abs(z)
    re = quad(lambda t: (np.exp(-t * t) / (t - z)).real, -L, L, limit=400)[0]
    im = quad(lambda t: (np.exp(-t * t) / (t - z)).imag, -L, L, limit=400)[0]
    return -(z**3) / np.sqrt(np.pi) * (re + 1j * im)


def test_p_at_zero():
    assert p_value(0.0) == 0.0
    assert p_pv(0.0) == 0.0


def test_pv_branch_value_at_one():
    val = float(p_pv(1.0))
    assert val == pytest.approx(1.07616, abs=1e-5)
    assert val == pytest.approx(pv_oracle(1.0), rel=1e-12)


@pytest.mark.parametrize("mu", [0.3, 0.7, 1.5, 2.5, 4.0])
def test_pv_branch_against_quadrature(mu):
    assert float(p_pv(mu)) == pytest.approx(pv_oracle(mu), rel=1e-10)


def test_value_on_imaginary_axis():
    val = complex(p_value(2j))
    assert val.real == pytest.approx(-3.6215, abs=2e-4)
    assert abs(val.imag) < 1e-13
    # independent route through the scaled complementary error function
    y = 2.0
    erfc_route = -SQRT_PI * y**3 * np.exp(y * y) * erfc(y)
    assert val == pytest.approx(erfc_route, rel=1e-13)
    assert val == pytest.approx(offaxis_oracle(2j), rel=1e-10)


@pytest.mark.parametrize("z", [0.7 + 0.9j, -1.2 + 0.4j, 2.0 + 2.0j, 0.1 + 3.0j])
def test_upper_branch_against_quadrature(z):
    assert complex(p_value(z)) == pytest.approx(offaxis_oracle(z), rel=1e-10)


def test_asymptotic_series_at_10i():
    z = 10j
    approx = z**2 + 0.5 + 3.0 / (4.0 * z**2)
    assert abs(complex(p_value(z)) - approx) < 1e-3


def test_asymptotic_switch_is_seamless():
    # values straddling the internal switch radius must agree
    for r in (4.9e3, 5.1e3):
        z = r * np.exp(0.3j)
        series = z * z + 0.5 + 0.75 / z**2 + 1.875 / z**4 + 6.5625 / z**6
        assert complex(p_value(z, side="above")) == pytest.approx(series, rel=1e-13)


@given(
    x=st.floats(-30.0, 30.0),
    y=st.floats(-30.0, 30.0),
)
@settings(max_examples=300, deadline=None)
def test_evenness(x, y):
    z = complex(x, y)
    a, b = complex(p_value(z)), complex(p_value(-z))
    assert abs(a - b) <= 1e-13 * max(1.0, abs(a))


def test_jump_magnitude_is_2q():
    eps = 1e-8
    for mu in (0.5, 1.0, 2.0):
        jump = complex(p_value(mu + 1j * eps)) - complex(p_value(mu - 1j * eps))
        assert abs(abs(jump) - 2.0 * float(q_value(mu))) < 1e-6


def test_sokhotski_orientation():
    # the documented orientation: limit from above is p_pv - i*q
    eps = 1e-9
    for mu in (0.5, 1.3, 2.2):
        above = complex(p_value(mu + 1j * eps))
        expect = float(p_pv(mu)) - 1j * float(q_value(mu))
        assert abs(above - expect) < 1e-6


def test_branch_sides_and_pv_mean():
    mu = 1.2
    above = complex(p_value(mu, side="above"))
    below = complex(p_value(mu, side="below"))
    assert complex(p_value(mu, side="pv")) == pytest.approx(
        0.5 * (above + below), rel=1e-14
    )
    assert above.conjugate() == pytest.approx(below, rel=1e-14)


def test_pv_side_rejects_complex():
    with pytest.raises(ParameterDomainError):
        p_value(1.0 + 1.0j, side="pv")
    with pytest.raises(ParameterDomainError):
        p_value(1.0, side="sideways")


def test_q_oddness_and_derivative():
    mu = np.linspace(-3, 3, 41)
    assert np.allclose(q_value(-mu), -q_value(mu), atol=1e-15)
    h = 1e-6
    for m in (0.4, 1.1, 2.3):
        fd = (float(q_value(m + h)) - float(q_value(m - h))) / (2 * h)
        assert float(q_derivative(m)) == pytest.approx(fd, rel=1e-8)


def test_p_pv_derivative():
    h = 1e-6
    for m in (0.4, 1.1, 2.3):
        fd = (float(p_pv(m + h)) - float(p_pv(m - h))) / (2 * h)
        assert float(p_derivative_pv(m)) == pytest.approx(fd, rel=1e-8)


def test_p_upper_derivative():
    h = 1e-6
    for z in (0.5 + 0.5j, 1.5 + 0.2j, -0.7 + 1.1j):
        fd = (complex(p_value(z + h, side="above"))
              - complex(p_value(z - h, side="above"))) / (2 * h)
        assert complex(p_upper_derivative(z)) == pytest.approx(fd, rel=1e-8)
