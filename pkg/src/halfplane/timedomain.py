"""Time-dependent waves around the half-plane screen.

Components
    incident     ``F(t - n.x)`` everywhere
    incident0    incident wave cut off in the shadow ``phi > phi_plus``
    incident1    ``incident - incident0`` (the shadow part)
    reflected    ``-F(t - nbar.x)`` for ``phi < phi_minus``
    diffracted   ``(i/8 pi) int calZ(beta, phi) F(t - rho cosh beta) dbeta``
    total        ``incident0 + reflected + diffracted``
    scattered    ``total - incident = reflected + diffracted - incident1``
    scattered0   ``total - incident0 = reflected + diffracted``

``F(s) = f(s) exp(-i omega0 s)`` is the modulated profile.  Components that
jump across ``phi_pm`` refuse to be evaluated exactly there unless a side is
chosen (``side=+1`` is the limit from larger ``phi``); the continuous sums
``total`` and ``scattered`` average the two one-sided values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, JumpLineError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_timedomain_kernel
from .scenario import FieldPoint, Profile, ScenarioConfig

__all__ = [
    "Component",
    "FieldSample",
    "incident",
    "incident0",
    "incident1",
    "reflected",
    "diffracted",
    "total",
    "scattered",
    "scattered0",
    "evaluate",
    "as_point",
]


class Component(str, enum.Enum):
    INCIDENT = "incident"
    INCIDENT0 = "incident0"
    INCIDENT1 = "incident1"
    REFLECTED = "reflected"
    DIFFRACTED = "diffracted"
    TOTAL = "total"
    SCATTERED = "scattered"
    SCATTERED0 = "scattered0"


@dataclass(frozen=True)
class FieldSample:
    point: FieldPoint
    time: float
    value: complex
    component: Component


def as_point(point) -> FieldPoint:
    if isinstance(point, FieldPoint):
        return point
    rho, phi = point
    return FieldPoint(float(rho), float(phi))


def _region(phi: float, ray: float, side: int, name: str) -> int:
    """``-1`` below the ray, ``+1`` above; ``side`` decides on the ray itself."""
    if phi < ray:
        return -1
    if phi > ray:
        return 1
    if side in (1, -1):
        return side
    raise JumpLineError(f"{name} jumps across phi={ray!r}; choose side=+1 or side=-1", ray)


def _F(profile: Profile, s: float, omega0: float) -> complex:
    return complex(profile.F(s, omega0))


def incident(scenario: ScenarioConfig, profile: Profile, point, t: float) -> complex:
    p = as_point(point)
    return _F(profile, t - float(scenario.n_dot_x(p.rho, p.phi)), scenario.omega0)


def incident0(scenario: ScenarioConfig, profile: Profile, point, t: float, side: int = 0) -> complex:
    p = as_point(point)
    if _region(p.phi, scenario.phi_plus, side, "incident0") > 0:
        return 0j
    return incident(scenario, profile, p, t)


def incident1(scenario: ScenarioConfig, profile: Profile, point, t: float, side: int = 0) -> complex:
    p = as_point(point)
    if _region(p.phi, scenario.phi_plus, side, "incident1") < 0:
        return 0j
    return incident(scenario, profile, p, t)


def reflected(scenario: ScenarioConfig, profile: Profile, point, t: float, side: int = 0) -> complex:
    p = as_point(point)
    if _region(p.phi, scenario.phi_minus, side, "reflected") > 0:
        return 0j
    return -_F(profile, t - float(scenario.nbar_dot_x(p.rho, p.phi)), scenario.omega0)


def diffracted(
    scenario: ScenarioConfig,
    profile: Profile,
    point,
    t: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    side: int = 0,
) -> complex:
    p = as_point(point)
    if not p.rho > 0:
        raise DomainError("the diffracted wave is evaluated for rho > 0 only")
    if side == 0:
        for ray in (scenario.phi_plus, scenario.phi_minus):
            if p.phi == ray:
                raise JumpLineError(f"diffracted jumps across phi={ray!r}; choose side=+1 or side=-1", ray)
    if t <= p.rho:
        return 0j
    integral = integrate_timedomain_kernel(
        scenario.alpha,
        lambda s: profile.F(s, scenario.omega0),
        p.rho,
        p.phi,
        t,
        spec,
        carrier=scenario.omega0,
        kinks=profile.kinks(),
        side=side,
    )
    return 1j / (8 * math.pi) * integral


def _on_ray(scenario: ScenarioConfig, phi: float) -> bool:
    return phi in (scenario.phi_plus, scenario.phi_minus)


def _averaged(fn, scenario, point, side):
    p = as_point(point)
    if side == 0 and _on_ray(scenario, p.phi):
        return 0.5 * (fn(p, 1) + fn(p, -1))
    return fn(p, side)


def scattered0(scenario, profile, point, t, spec: QuadratureSpec = DEFAULT_SPEC, side: int = 0) -> complex:
    return _averaged(
        lambda p, s: reflected(scenario, profile, p, t, s) + diffracted(scenario, profile, p, t, spec, s),
        scenario, point, side,
    )


def total(scenario, profile, point, t, spec: QuadratureSpec = DEFAULT_SPEC, side: int = 0) -> complex:
    return _averaged(
        lambda p, s: incident0(scenario, profile, p, t, s)
        + reflected(scenario, profile, p, t, s)
        + diffracted(scenario, profile, p, t, spec, s),
        scenario, point, side,
    )


def scattered(scenario, profile, point, t, spec: QuadratureSpec = DEFAULT_SPEC, side: int = 0) -> complex:
    # assembled from parts that vanish for t < 0 so causality is exact
    return _averaged(
        lambda p, s: reflected(scenario, profile, p, t, s)
        + diffracted(scenario, profile, p, t, spec, s)
        - incident1(scenario, profile, p, t, s),
        scenario, point, side,
    )


_DISPATCH = {
    Component.INCIDENT: lambda sc, pr, p, t, spec, side: incident(sc, pr, p, t),
    Component.INCIDENT0: lambda sc, pr, p, t, spec, side: incident0(sc, pr, p, t, side),
    Component.INCIDENT1: lambda sc, pr, p, t, spec, side: incident1(sc, pr, p, t, side),
    Component.REFLECTED: lambda sc, pr, p, t, spec, side: reflected(sc, pr, p, t, side),
    Component.DIFFRACTED: diffracted,
    Component.TOTAL: total,
    Component.SCATTERED: scattered,
    Component.SCATTERED0: scattered0,
}


def evaluate(component, scenario, profile, point, t, spec: QuadratureSpec = DEFAULT_SPEC, side: int = 0) -> FieldSample:
    comp = Component(component)
    p = as_point(point)
    value = _DISPATCH[comp](scenario, profile, p, t, spec, side)
    return FieldSample(p, float(t), complex(value), comp)
