"""Stationary amplitudes of the half-plane problem at the carrier frequency.

Two independent routes give the total amplitude ``A``:

``kernel``
    ``A = A_i0 + A_r + A_d`` with ``A_d = (i/8 pi) int calZ(beta, phi)
    exp(i omega0 rho cosh beta) dbeta`` evaluated on the real carrier.
``fresnel``
    the closed form ``A = e^{-i k rho cos(phi - alpha)} Fr(sqrt(2 k rho) cos((phi - alpha)/2))
    - e^{-i k rho cos(phi + alpha)} Fr(sqrt(2 k rho) cos((phi + alpha)/2))`` with
    ``Fr(a) = e^{-i pi/4} pi^{-1/2} int_{-inf}^{a} e^{i s^2} ds``.

Piecewise components take ``side`` on their jump ray; ``side = 0`` there
returns the mean of the one-sided values, so every sum stays continuous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import fresnel

from .errors import CrossValidationError, DomainError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_frequency_kernel
from .scenario import ScenarioConfig
from .timedomain import as_point

__all__ = [
    "fresnel_F",
    "amplitude_incident",
    "amplitude_incident0",
    "amplitude_incident1",
    "amplitude_reflected",
    "amplitude_diffracted",
    "amplitude_total",
    "amplitude_scattered",
    "StationaryAmplitude",
    "cross_validate",
]

_ROT = np.exp(-0.25j * math.pi)


def fresnel_F(a):
    """``e^{-i pi/4} pi^{-1/2} int_{-inf}^{a} exp(i s^2) ds`` for real ``a``."""
    a = np.asarray(a, dtype=float)
    S, C = fresnel(a * math.sqrt(2 / math.pi))
    out = 0.5 + _ROT * (C + 1j * S) / math.sqrt(2)
    return out if out.ndim else complex(out)


def _piecewise(phi, ray, side, below, above):
    """Value on the ``phi < ray`` / ``phi > ray`` branch; mean on the ray for ``side = 0``."""
    if phi < ray or (phi == ray and side == -1):
        return below()
    if phi > ray or (phi == ray and side == 1):
        return above()
    return 0.5 * (below() + above())


def amplitude_incident(scenario: ScenarioConfig, point) -> complex:
    p = as_point(point)
    return complex(np.exp(-1j * scenario.omega0 * p.rho * math.cos(p.phi - scenario.alpha)))


def amplitude_incident0(scenario: ScenarioConfig, point, side: int = 0) -> complex:
    p = as_point(point)
    return _piecewise(p.phi, scenario.phi_plus, side, lambda: amplitude_incident(scenario, p), lambda: 0j)


def amplitude_incident1(scenario: ScenarioConfig, point, side: int = 0) -> complex:
    """``A_i - A_i0``: the incident amplitude inside the shadow."""
    p = as_point(point)
    return _piecewise(p.phi, scenario.phi_plus, side, lambda: 0j, lambda: amplitude_incident(scenario, p))


def amplitude_reflected(scenario: ScenarioConfig, point, side: int = 0) -> complex:
    p = as_point(point)

    def lit():
        return complex(-np.exp(-1j * scenario.omega0 * p.rho * math.cos(p.phi + scenario.alpha)))

    return _piecewise(p.phi, scenario.phi_minus, side, lit, lambda: 0j)


def amplitude_diffracted(scenario: ScenarioConfig, point, spec: QuadratureSpec = DEFAULT_SPEC,
                         side: int = 0) -> complex:
    p = as_point(point)
    if not p.rho > 0:
        raise DomainError("the diffracted amplitude is evaluated for rho > 0 only")

    def one_side(s):
        val = integrate_frequency_kernel(scenario.alpha, p.rho, p.phi, scenario.omega0, spec,
                                         weight="one", method="subtract", side=s)
        return complex(1j / (8 * math.pi) * val)

    if p.phi in (scenario.phi_plus, scenario.phi_minus) and side == 0:
        return 0.5 * (one_side(1) + one_side(-1))
    return one_side(side)


def _fresnel_total(scenario: ScenarioConfig, rho: float, phi: float) -> complex:
    k, a = scenario.omega0, scenario.alpha
    s = math.sqrt(2 * k * rho)
    return complex(
        np.exp(-1j * k * rho * math.cos(phi - a)) * fresnel_F(s * math.cos((phi - a) / 2))
        - np.exp(-1j * k * rho * math.cos(phi + a)) * fresnel_F(s * math.cos((phi + a) / 2))
    )


def amplitude_total(scenario: ScenarioConfig, point, route: str = "kernel", spec: QuadratureSpec = DEFAULT_SPEC
                    ) -> complex:
    p = as_point(point)
    if route == "fresnel":
        return _fresnel_total(scenario, p.rho, p.phi)
    if route != "kernel":
        raise DomainError(f"unknown route {route!r}")
    return (amplitude_incident0(scenario, p) + amplitude_reflected(scenario, p)
            + amplitude_diffracted(scenario, p, spec))


def amplitude_scattered(scenario: ScenarioConfig, point, route: str = "kernel",
                        spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    p = as_point(point)
    if route == "fresnel":
        return _fresnel_total(scenario, p.rho, p.phi) - amplitude_incident(scenario, p)
    if route != "kernel":
        raise DomainError(f"unknown route {route!r}")
    return (amplitude_reflected(scenario, p) + amplitude_diffracted(scenario, p, spec)
            - amplitude_incident1(scenario, p))


@dataclass(frozen=True)
class StationaryAmplitude:
    """Amplitude evaluators bound to one scenario."""

    scenario: ScenarioConfig
    spec: QuadratureSpec = field(default=DEFAULT_SPEC)

    @property
    def omega0(self) -> float:
        return self.scenario.omega0

    def evaluate(self, component: str, point, route: str = "kernel") -> complex:
        sc, spec = self.scenario, self.spec
        table = {
            "A_i0": lambda: amplitude_incident0(sc, point),
            "A_i": lambda: amplitude_incident(sc, point),
            "A_i1": lambda: amplitude_incident1(sc, point),
            "A_r": lambda: amplitude_reflected(sc, point),
            "A_d": lambda: amplitude_diffracted(sc, point, spec),
            "A": lambda: amplitude_total(sc, point, route, spec),
            "A_s": lambda: amplitude_scattered(sc, point, route, spec),
        }
        if component not in table:
            raise DomainError(f"unknown amplitude component {component!r}")
        return table[component]()


def cross_validate(scenario: ScenarioConfig, points, tolerance: float = 1e-8,
                   spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Largest ``|A_kernel - A_fresnel|`` over ``points``; raises past ``tolerance``."""
    worst = 0.0
    worst_point = None
    for pt in points:
        d = abs(amplitude_total(scenario, pt, "kernel", spec) - amplitude_total(scenario, pt, "fresnel"))
        if d > worst:
            worst, worst_point = d, pt
    if worst > tolerance:
        raise CrossValidationError(
            f"kernel and Fresnel routes differ by {worst:.3g} at {worst_point!r} (tolerance {tolerance:.3g})"
        )
    return worst
