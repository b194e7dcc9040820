import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfplane.errors import DomainError
from halfplane.quadrature import (
    QuadratureSpec,
    deformation_radius,
    epsilon0,
    integrate_K,
    integrate_frequency_kernel,
    integrate_timedomain_kernel,
)

ALPHA = 2 * math.pi / 3
PHI_PLUS, PHI_MINUS = math.pi + ALPHA, math.pi - ALPHA


def heaviside_F(s):
    s = np.asarray(s, dtype=float)
    return np.where(s > 0, np.exp(-1j * s), 0.0)


# mpmath quadrature of the full-line integral, 20 digits
FREQUENCY_ORACLE = [
    (1.0, 1j, math.pi, 3.45022220613018550j),
    (2.0, 1 + 0.5j, 1.0, 3.1085849264417042794 + 0.91694826212116807718j),
    (0.5, 2 + 1j, 5.5, 2.6689391983721217375 - 2.2932174698723778033j),
]

# mpmath quadrature over |beta| <= arccosh(t/rho), heaviside profile, omega0 = 1
TIME_ORACLE = [
    (1.0, 2.0, math.pi, 6.8980672567190267332 + 7.950053767769088505j),
    (2.0, 5.0, 2.0, 7.2403099383006496306 - 7.8035350770101334764j),
]


@pytest.mark.parametrize("rho,omega,phi,expected", FREQUENCY_ORACLE)
@pytest.mark.parametrize("method", ["deform", "subtract"])
def test_frequency_integral_against_high_precision(rho, omega, phi, expected, method):
    val = integrate_frequency_kernel(ALPHA, rho, phi, omega, method=method)
    assert abs(val - expected) < 1e-11


@pytest.mark.parametrize("rho,t,phi,expected", TIME_ORACLE)
def test_time_integral_against_high_precision(rho, t, phi, expected):
    val = integrate_timedomain_kernel(ALPHA, heaviside_F, rho, phi, t, carrier=1.0)
    assert abs(val - expected) < 1e-10


def test_time_integral_against_trapezoid():
    rho, t, phi = 1.0, 2.0, math.pi
    B = math.acosh(t / rho)
    beta = np.linspace(-B, B, 400001)
    from halfplane.kernel import calZ_array

    trap = np.trapezoid(calZ_array(beta, phi, ALPHA) * heaviside_F(t - rho * np.cosh(beta)), beta)
    assert abs(integrate_timedomain_kernel(ALPHA, heaviside_F, rho, phi, t) - trap) < 1e-9


@pytest.mark.parametrize("t", [-1.0, 0.5, 1.0])
def test_time_integral_vanishes_before_arrival(t):
    assert integrate_timedomain_kernel(ALPHA, heaviside_F, 1.0, 2.0, t) == 0


@given(st.floats(0.2, 5), st.floats(0.2, 3), st.floats(0.3, 2), st.floats(-2, 2))
@settings(max_examples=30, deadline=None)
def test_deform_and_subtract_agree(rho, wr, wi, eps):
    omega = complex(wr, wi)
    if abs(eps) < 1e-3:
        return
    for kind in ("K0", "K2"):
        d = integrate_K(kind, rho, omega, eps, method="deform")
        s = integrate_K(kind, rho, omega, eps, method="subtract")
        assert abs(d - s) <= 1e-9 * max(1.0, abs(d))


@given(st.floats(0.2, 5), st.floats(0.3, 2), st.floats(0.01, 3))
@settings(max_examples=30, deadline=None)
def test_K0_odd_and_K2_even_in_eps(rho, wi, eps):
    omega = complex(1.0, wi)
    k0p, k0m = integrate_K("K0", rho, omega, eps), integrate_K("K0", rho, omega, -eps)
    k2p, k2m = integrate_K("K2", rho, omega, eps), integrate_K("K2", rho, omega, -eps)
    assert abs(k0p + k0m) <= 1e-10 * max(1.0, abs(k0p))
    assert abs(k2p - k2m) <= 1e-9 * max(1.0, abs(k2p))


@pytest.mark.parametrize(
    "omega,method",
    [(1 + 1j, "deform"), (1 + 1j, "subtract"), (0.5 + 0.3j, "deform"), (0.5 + 0.3j, "subtract"), (1.0, "subtract")],
)
def test_K0_one_sided_limits_differ_by_residue(omega, method):
    rho = 1.3
    below = integrate_K("K0", rho, omega, 0.0, method=method, eps_side=-1)
    above = integrate_K("K0", rho, omega, 0.0, method=method, eps_side=1)
    assert abs(below - above - 2j * math.pi * np.exp(1j * omega * rho)) < 1e-10


def test_K0_one_sided_limit_is_continuous():
    rho, omega = 1.3, 1 + 1j
    lim = integrate_K("K0", rho, omega, 0.0, eps_side=1)
    assert abs(integrate_K("K0", rho, omega, 1e-7) - lim) < 1e-5


def test_K2_against_high_precision():
    mpmath.mp.dps = 20
    rho, omega, eps = 0.8, 1 + 0.7j, 0.4
    ref = mpmath.quad(lambda b: mpmath.exp(1j * omega * rho * mpmath.cosh(b)) / (b + 1j * eps) ** 2, [-1, 0, 1])
    assert abs(integrate_K("K2", rho, omega, eps) - complex(ref)) < 1e-11


def test_K1_against_high_precision():
    mpmath.mp.dps = 20
    rho, omega = 0.8, 1 + 0.7j
    ref = mpmath.quad(lambda b: mpmath.cosh(b) * mpmath.exp(1j * omega * rho * mpmath.cosh(b)), [-1, 1])
    assert abs(integrate_K("K1", rho, omega, 0.3) - complex(ref)) < 1e-12


@pytest.mark.parametrize("ray,sign", [(PHI_MINUS, 1), (PHI_PLUS, -1)])
def test_frequency_integral_jump_across_rays(ray, sign):
    rho, omega = 1.5, 1 + 1j
    up = integrate_frequency_kernel(ALPHA, rho, ray, omega, side=1)
    dn = integrate_frequency_kernel(ALPHA, rho, ray, omega, side=-1)
    assert abs(up - dn - sign * 8j * math.pi * np.exp(1j * omega * rho)) < 1e-10


@pytest.mark.parametrize("ray,sign", [(PHI_MINUS, 1), (PHI_PLUS, -1)])
def test_time_integral_jump_across_rays(ray, sign):
    rho, t = 1.5, 4.0
    up = integrate_timedomain_kernel(ALPHA, heaviside_F, rho, ray, t, side=1)
    dn = integrate_timedomain_kernel(ALPHA, heaviside_F, rho, ray, t, side=-1)
    assert abs(up - dn - sign * 8j * math.pi * heaviside_F(t - rho)) < 1e-10


@pytest.mark.parametrize("ray", [PHI_MINUS, PHI_PLUS])
def test_side_limits_match_nearby_values(ray):
    rho, omega, d = 1.5, 1 + 1j, 1e-6
    assert abs(integrate_frequency_kernel(ALPHA, rho, ray + d, omega)
               - integrate_frequency_kernel(ALPHA, rho, ray, omega, side=1)) < 1e-4
    assert abs(integrate_frequency_kernel(ALPHA, rho, ray - d, omega)
               - integrate_frequency_kernel(ALPHA, rho, ray, omega, side=-1)) < 1e-4


@given(st.floats(0.1, 5), st.floats(0.05, 3))
@settings(max_examples=50)
def test_deformation_radius_is_admissible(wr, wi):
    omega = complex(wr, wi)
    r = deformation_radius(omega)
    h = math.cosh(r) - 1
    assert 0 < r <= 0.99
    assert h <= 0.25 + 1e-12 and wr * h <= wi / 4 + 1e-12
    assert epsilon0(omega) == pytest.approx(r / 2)


def test_tail_cutoff_override_is_stable():
    a = integrate_frequency_kernel(ALPHA, 1.0, 2.0, 1 + 0.5j)
    b = integrate_frequency_kernel(ALPHA, 1.0, 2.0, 1 + 0.5j, spec=QuadratureSpec(tail_cutoff=8.0))
    assert abs(a - b) < 1e-11


@pytest.mark.parametrize(
    "kwargs",
    [dict(rho=0.0), dict(omega=1 - 1j), dict(phi=7.0), dict(weight="tanh"), dict(method="simpson")],
)
def test_frequency_integral_rejects_bad_input(kwargs):
    args = dict(rho=1.0, phi=1.0, omega=1 + 1j)
    args.update(kwargs)
    with pytest.raises(DomainError):
        integrate_frequency_kernel(ALPHA, **args)


def test_K_requires_side_at_zero_eps():
    with pytest.raises(DomainError):
        integrate_K("K0", 1.0, 1 + 1j, 0.0)


@pytest.mark.parametrize("bad", [dict(rel_tol=0), dict(abs_tol=-1), dict(max_subdivisions=0)])
def test_spec_validation(bad):
    with pytest.raises(DomainError):
        QuadratureSpec(**bad)


@pytest.mark.parametrize("omega", [1 + 0.5j, 0.3 + 1j])
@pytest.mark.parametrize("eps", [0.1, -0.3, 1.5])
def test_K0_decays_at_half_rate(omega, eps):
    rho = np.linspace(1, 10, 10)
    logs = [math.log(abs(integrate_K("K0", r, omega, eps))) for r in rho]
    slope = np.polyfit(rho, logs, 1)[0]
    assert slope <= -omega.imag / 2


@pytest.mark.parametrize("eps", [0.3, -0.02, 2.0])
def test_log_term_matches_quadrature(eps):
    from halfplane import gk
    from halfplane.quadrature import _log_term

    num = gk.integrate(lambda b: 1.0 / (b + 1j * eps), np.linspace(-0.8, 0.8, 9), rel_tol=1e-14).value
    assert abs(_log_term(0.8, eps, 0) - num) < 1e-12


def test_log_term_one_sided_limits():
    from halfplane.quadrature import _log_term

    assert _log_term(0.8, 0.0, 1) == pytest.approx(-1j * math.pi)
    assert abs(_log_term(0.8, 1e-12, 0) - _log_term(0.8, 0.0, 1)) < 1e-10
