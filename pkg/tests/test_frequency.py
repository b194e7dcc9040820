import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfplane import frequency as fq
from halfplane.errors import DomainError, ExtrapolationError, GeometryError, JumpLineError
from halfplane.scenario import HeavisideProfile, SmoothRampProfile, make_scenario

SC = make_scenario(2 * math.pi / 3, 1.0)
HV = HeavisideProfile()
OMEGA = 1 + 0.5j


def g(profile=HV, omega=OMEGA):
    return profile.fhat(omega - SC.omega0)


def test_incident_plane_wave():
    rho, phi = 1.7, 2.2
    assert fq.hat_incident(SC, HV, (rho, phi), OMEGA) == pytest.approx(
        g() * np.exp(-1j * OMEGA * rho * math.cos(phi - SC.alpha)))


@pytest.mark.parametrize("omega", [1.0, 1 - 0.1j, 0j])
def test_frequency_must_lie_in_upper_half_plane(omega):
    with pytest.raises(DomainError):
        fq.hat_scattered(SC, HV, (1.0, 1.0), omega)


def test_field_rejects_unknown_component_and_derivative():
    with pytest.raises(DomainError):
        fq.FrequencyField(SC, HV, OMEGA, "total")
    with pytest.raises(DomainError):
        fq.FrequencyField(SC, HV, OMEGA, "scattered", "rhorho")


@pytest.mark.parametrize("face", [0.0, 2 * math.pi])
def test_scattered_cancels_incident_on_screen(face):
    for rho in (0.3, 1.0, 5.0):
        us = fq.hat_scattered(SC, HV, (rho, face), OMEGA)
        assert abs(us + fq.hat_incident(SC, HV, (rho, face), OMEGA)) < 1e-12


@pytest.mark.parametrize("point", [(1.0, 0.7), (2.0, 3.0), (0.6, 5.6), (1.5, SC.phi_minus + 0.1)])
@pytest.mark.parametrize("component", ["diffracted", "scattered"])
def test_polar_derivatives_match_finite_differences(point, component):
    rho, phi = point
    f = fq.FrequencyField(SC, HV, OMEGA, component)
    h = 1e-4
    d_rho = (f(rho + h, phi) - f(rho - h, phi)) / (2 * h)
    d_phi = (f(rho, phi + h) - f(rho, phi - h)) / (2 * h)
    d_pp = (f(rho, phi + h) - 2 * f(rho, phi) + f(rho, phi - h)) / h**2
    assert abs(f.with_deriv("rho")(rho, phi) - d_rho) < 1e-7
    assert abs(f.with_deriv("phi")(rho, phi) - d_phi) < 1e-7
    assert abs(f.with_deriv("phiphi")(rho, phi) - d_pp) < 1e-4


@pytest.mark.parametrize("deriv", ["", "phi", "phiphi"])
@pytest.mark.parametrize("at", ["phi_minus", "phi_plus"])
def test_scattered_field_has_no_jumps(deriv, at):
    f = fq.FrequencyField(SC, HV, 1 + 1j, "scattered", deriv)
    assert abs(fq.jump_of(f, 1.0, at).value) < 1e-7


@pytest.mark.parametrize("rho", [0.5, 1.0, 2.5])
def test_reflected_jump_closed_form(rho):
    omega = 1 + 1j
    f = fq.FrequencyField(SC, HV, omega, "reflected")
    est = fq.jump_of(f, rho, "phi_minus")
    assert abs(est.value - g(HV, omega) * np.exp(1j * omega * rho)) < 1e-8


def test_diffracted_jump_cancels_reflected_jump():
    omega = 1 + 1j
    d = fq.FrequencyField(SC, HV, omega, "diffracted")
    r = fq.FrequencyField(SC, HV, omega, "reflected")
    exact_d = d(1.0, SC.phi_minus, 1) - d(1.0, SC.phi_minus, -1)
    exact_r = r(1.0, SC.phi_minus, 1) - r(1.0, SC.phi_minus, -1)
    assert abs(exact_d + exact_r) < 1e-12


def test_components_refuse_jump_ray():
    with pytest.raises(JumpLineError):
        fq.hat_diffracted(SC, HV, (1.0, SC.phi_plus), OMEGA)
    with pytest.raises(JumpLineError):
        fq.hat_reflected(SC, HV, (1.0, SC.phi_minus), OMEGA)


@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.floats(-3, 3), st.floats(-3, 3))
@settings(max_examples=50)
def test_richardson_removes_first_and_second_order(J, c1, c2):
    deltas = 0.05 * 0.5 ** np.arange(7)
    est = fq.richardson_jump(J + c1 * deltas + c2 * deltas**2, deltas)
    assert abs(est.value - J) < 1e-12 * max(1, abs(J), abs(c1), abs(c2))


def test_richardson_refuses_divergent_sequences():
    deltas = 0.05 * 0.5 ** np.arange(7)
    with pytest.raises(ExtrapolationError):
        fq.richardson_jump(1.0 / deltas**3, deltas)
    with pytest.raises(ExtrapolationError):
        fq.richardson_jump([1.0, 2.0], deltas[:2])


@pytest.mark.parametrize("point", [(1.0, 0.6), (2.0, math.pi), (1.2, SC.phi_minus + 0.015), (2.8, SC.phi_plus - 0.015)])
def test_helmholtz_residual_is_second_order(point):
    f = fq.FrequencyField(SC, HV, OMEGA, "scattered")
    r = [fq.helmholtz_residual(f, point, h) for h in (0.04, 0.02, 0.01)]
    orders = np.log2(np.array(r[:-1]) / np.array(r[1:]))
    assert np.all((orders > 1.7) & (orders < 2.3))


def test_helmholtz_stencil_geometry_checks():
    f = fq.FrequencyField(SC, HV, OMEGA, "diffracted")
    with pytest.raises(GeometryError):
        fq.helmholtz_residual(f, (1.0, 0.01), 0.01)
    with pytest.raises(GeometryError):
        fq.helmholtz_residual(f, (1.0, SC.phi_minus + 0.01), 0.01)
    with pytest.raises(GeometryError):
        fq.helmholtz_residual(f, (0.015, 1.0), 0.01)
    with pytest.raises(DomainError):
        fq.helmholtz_residual(lambda r, p: 0j, (1.0, 1.0), 0.01)


def test_diffracted_component_solves_helmholtz_off_rays():
    f = fq.FrequencyField(SC, HV, OMEGA, "diffracted")
    assert fq.helmholtz_residual(f, (1.5, 2.5), 0.005) < 1e-4


def test_manufactured_source_matches_finite_differences():
    w = fq.ManufacturedField(OMEGA)
    rho, phi, h = 1.3, 2.0, 1e-3
    lap = ((w.value(rho + h, phi) - 2 * w.value(rho, phi) + w.value(rho - h, phi)) / h**2
           + (w.value(rho + h, phi) - w.value(rho - h, phi)) / (2 * h * rho)
           + (w.value(rho, phi + h) - 2 * w.value(rho, phi) + w.value(rho, phi - h)) / (rho * h) ** 2)
    assert abs(lap + OMEGA**2 * w.value(rho, phi) - w.source(rho, phi)) < 1e-5


def test_green_identity_mismatch_is_second_order():
    w = fq.ManufacturedField(OMEGA)
    m = [fq.green_identity_check(w, OMEGA, 5.0, n, 2 * n).measured for n in (50, 100, 200)]
    orders = np.log2(np.array(m[:-1]) / np.array(m[1:]))
    assert np.all((orders > 1.7) & (orders < 2.3))
    rep = fq.green_identity_check(w, OMEGA, 5.0, 400, 800)
    assert rep.passed and rep.provenance == "derived-oracle"


def test_ring_terms_decrease_with_radius():
    ring = fq.ScatteredRingField(SC, HV, OMEGA)
    vals = [abs(fq.ring_term(ring, R, 64)) for R in (5.0, 10.0, 20.0)]
    assert vals[0] > vals[1] > vals[2]
    assert np.abs(ring.value(3.0, np.array([0.0, 2 * math.pi]))).max() < 1e-12


@pytest.mark.parametrize("component", ["reflected", "incident1", "diffracted", "scattered"])
def test_transform_of_time_samples_matches_frequency_form(component):
    point, omega = (1.3, 4.0), 1.2 + 0.6j
    num = fq.transform_timedomain(component, SC, HV, point, omega)
    ref = fq.FrequencyField(SC, HV, omega, component)(*point)
    assert abs(num - ref) <= 1e-8 * max(abs(ref), 1e-3)


def test_transform_with_ramp_profile():
    ramp = SmoothRampProfile(1.0)
    point, omega = (0.8, 1.0), 0.7 + 0.9j
    num = fq.transform_timedomain("scattered", SC, ramp, point, omega)
    ref = fq.hat_scattered(SC, ramp, point, omega)
    assert abs(num - ref) < 1e-8 * abs(ref)
