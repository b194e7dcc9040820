import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfplane import kernel
from halfplane.errors import PoleProximityError

ALPHA = 2 * math.pi / 3
PHI_PLUS, PHI_MINUS = math.pi + ALPHA, math.pi - ALPHA

# 20-digit mpmath evaluations of the four-term coth expansion
CALZ_ORACLE = [
    (0.3, 1.0, 13.169764352927115306 + 0.24214868418682404663j),
    (-2.5, 4.0, 0.81497115434500253732 + 1.8111110735601287064j),
    (0.0, 0.5, -4.5395764600691428401j),
    (7.0, 3.0, 0.01479912505009007381 + 0.20868936343667699816j),
]


@pytest.mark.parametrize("beta,phi,expected", CALZ_ORACLE)
def test_calZ_against_high_precision(beta, phi, expected):
    assert abs(kernel.eval_calZ(beta, phi, ALPHA) - expected) < 1e-13 * max(1, abs(expected))


@given(st.complex_numbers(max_magnitude=30, allow_nan=False, allow_infinity=False))
@settings(max_examples=100)
def test_coth_matches_mpmath(w):
    k = round(w.imag / math.pi)
    if abs(w - 1j * math.pi * k) < 1e-6:
        return
    ref = complex(mpmath.coth(mpmath.mpc(w.real, w.imag)))
    assert abs(kernel.coth(w) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_coth_continuous_across_laurent_switch():
    w = np.array([0.999e-3, 1.001e-3]) * cmath.exp(0.7j)
    assert abs(kernel.coth(w[0]) * w[0] - kernel.coth(w[1]) * w[1]) < 1e-8


def test_coth_large_arguments_do_not_overflow():
    assert kernel.coth(800 + 3j) == pytest.approx(1.0)
    assert kernel.coth(-800 + 3j) == pytest.approx(-1.0)


@pytest.mark.parametrize("phi", [PHI_PLUS, PHI_MINUS])
def test_calZ_pole_on_jump_ray(phi):
    with pytest.raises(PoleProximityError) as info:
        kernel.eval_calZ(0.0, phi, ALPHA)
    assert abs(info.value.location) < 1e-9


def test_calZ_pole_location_off_axis():
    phi = 1.0
    eps = PHI_MINUS - phi
    with pytest.raises(PoleProximityError) as info:
        kernel.eval_calZ(-1j * eps, phi, ALPHA)
    assert info.value.location == pytest.approx(-1j * eps)


@pytest.mark.parametrize("phi", [0.4, 2.0, 3.5, 5.9])
def test_dphi_calZ_matches_central_difference(phi):
    beta = np.array([-2.0, -0.3, 0.4, 3.0])
    h = 1e-5
    fd = (kernel.calZ_array(beta, phi + h, ALPHA) - kernel.calZ_array(beta, phi - h, ALPHA)) / (2 * h)
    assert np.max(np.abs(kernel.dphi_calZ_array(beta, phi, ALPHA) - fd)) < 1e-7


def test_calZ_depends_on_beta_minus_i_phi():
    # d/dphi = -i d/dbeta
    beta, phi, h = 0.7, 2.2, 1e-5
    dbeta = (kernel.calZ_array(beta + h, phi, ALPHA) - kernel.calZ_array(beta - h, phi, ALPHA)) / (2 * h)
    assert abs(kernel.dphi_calZ_array(beta, phi, ALPHA) + 1j * dbeta) < 1e-8


@given(st.floats(-1, 1), st.floats(0, 2 * math.pi))
@settings(max_examples=200)
def test_decomposition_reconstructs_kernel(beta, phi):
    dec = kernel.decompose_calZ(phi, ALPHA)
    if min(abs(beta + 1j * dec.eps_plus), abs(beta + 1j * dec.eps_minus)) < 1e-6:
        return
    direct = kernel.calZ_array(beta, phi, ALPHA)
    assert abs(dec.reconstruct(beta) - direct) <= 1e-10 * max(1.0, abs(direct))


def test_remainder_bounded_on_window():
    for phi in np.linspace(0, 2 * math.pi, 41):
        r = kernel.remainder_array(np.linspace(-1, 1, 201) + 0j, phi, ALPHA)
        assert np.all(np.isfinite(r)) and np.max(np.abs(r)) < 10


def test_decomposition_coefficients():
    dec = kernel.decompose_calZ(1.0, ALPHA)
    assert (dec.singular_coeff_plus, dec.singular_coeff_minus) == (-4.0, 4.0)
    assert dec.eps_plus == pytest.approx(PHI_PLUS - 1.0)
    assert dec.eps_minus == pytest.approx(PHI_MINUS - 1.0)


def test_kernel_decays_like_half_exponential():
    beta = np.linspace(5, 40, 50)
    for phi in (0.5, math.pi, 5.0):
        env = np.abs(kernel.calZ_array(beta, phi, ALPHA)) * np.exp(beta / 2)
        assert env.max() / env.min() < 1.01


def test_U_and_Z_relations():
    z = 0.4 - 0.3j
    assert kernel.eval_Z(z, ALPHA) == pytest.approx(
        -kernel.eval_U(z - 0.5j * math.pi, ALPHA) + kernel.eval_U(z - 2.5j * math.pi, ALPHA)
    )
    with pytest.raises(PoleProximityError):
        kernel.eval_U(0.5j * math.pi - 1j * ALPHA, ALPHA)


@pytest.mark.parametrize("phi", [0.5, 2.0, 4.0])
def test_sommerfeld_kernel_poles(phi):
    for pole in (phi - ALPHA, phi + ALPHA):
        with pytest.raises(PoleProximityError) as info:
            kernel.eval_sommerfeld_kernel(pole + 4 * math.pi, phi, ALPHA)
        assert info.value.location == pytest.approx(pole + 4 * math.pi)


def test_sommerfeld_kernel_decays_below_axis():
    for x in np.linspace(-6, 6, 13):
        assert abs(kernel.eval_sommerfeld_kernel(x - 20j, 1.0, ALPHA)) <= 2 * math.exp(-10) * 1.01


@given(st.floats(-3, 3), st.floats(-2, 2), st.floats(0.1, 6.1))
@settings(max_examples=100)
def test_sommerfeld_kernel_is_half_of_U(gr, gi, phi):
    gamma = complex(gr, gi)
    try:
        ratio = kernel.measure_sommerfeld_ratio(gamma, phi, ALPHA)
    except PoleProximityError:
        return
    if not np.isfinite(ratio):
        return
    assert abs(ratio - 0.5) < 1e-8
