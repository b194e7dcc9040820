"""Convergence of ``exp(i omega0 t) u(x, t)`` to the stationary amplitude."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import sommerfeld, timedomain
from .errors import DomainError
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .scenario import FieldPoint, Profile, ScenarioConfig
from .timedomain import as_point

__all__ = ["LapReport", "lap_study", "cushion_time"]


@dataclass(frozen=True)
class LapReport:
    point: FieldPoint
    times: tuple
    errors_total: tuple
    errors_scattered: tuple
    errors_components: dict = field(default_factory=dict)
    amplitude_total: complex = 0j
    amplitude_scattered: complex = 0j
    cushion: float = 0.0
    fitted_rate: float = float("nan")

    def tail(self, errors) -> np.ndarray:
        t = np.asarray(self.times)
        return np.asarray(errors)[t >= self.cushion]

    def tail_decreasing(self, errors=None) -> bool:
        e = self.tail(self.errors_total if errors is None else errors)
        return bool(e.size >= 1 and np.all(np.diff(e) < 0))


def cushion_time(profile: Profile, rho: float) -> float:
    """Earliest time used in monotonicity checks: ``2 rho + S1``."""
    return 2.0 * rho + profile.horizon


def _fit_rate(times, errors) -> float:
    t = np.asarray(times, dtype=float)
    e = np.asarray(errors, dtype=float)
    keep = e > 0
    if keep.sum() < 2:
        return float("nan")
    slope, _ = np.polyfit(np.log(t[keep]), np.log(e[keep]), 1)
    return float(slope)


def lap_study(
    scenario: ScenarioConfig,
    profile: Profile,
    point,
    times,
    spec: QuadratureSpec = DEFAULT_SPEC,
    reference: str = "fresnel",
) -> LapReport:
    """Errors ``|e^{i omega0 t} u - A|`` at each time, total and scattered.

    The reference amplitude comes from ``reference`` (``fresnel`` or
    ``kernel``); component errors always use the kernel-route pieces.
    """
    p = as_point(point)
    if p.phi in (scenario.phi_plus, scenario.phi_minus):
        raise DomainError("the limiting amplitude holds for phi != phi_pm; the point lies on a jump ray")
    times = tuple(float(t) for t in times)
    if any(t <= p.rho for t in times):
        raise DomainError("every time must exceed rho")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise DomainError("times must be increasing")
    A = sommerfeld.amplitude_total(scenario, p, reference, spec)
    A_s = sommerfeld.amplitude_scattered(scenario, p, reference, spec)
    refs = {
        "incident0": sommerfeld.amplitude_incident0(scenario, p),
        "reflected": sommerfeld.amplitude_reflected(scenario, p),
        "diffracted": sommerfeld.amplitude_diffracted(scenario, p, spec),
    }
    err_total, err_scat = [], []
    err_comp = {k: [] for k in refs}
    for t in times:
        phase = complex(np.exp(1j * scenario.omega0 * t))
        ui0 = timedomain.incident0(scenario, profile, p, t)
        ur = timedomain.reflected(scenario, profile, p, t)
        ud = timedomain.diffracted(scenario, profile, p, t, spec)
        ui1 = timedomain.incident1(scenario, profile, p, t)
        err_total.append(abs(phase * (ui0 + ur + ud) - A))
        err_scat.append(abs(phase * (ur + ud - ui1) - A_s))
        for name, val in (("incident0", ui0), ("reflected", ur), ("diffracted", ud)):
            err_comp[name].append(abs(phase * val - refs[name]))
    cushion = cushion_time(profile, p.rho)
    tail_t = [t for t in times if t >= cushion]
    tail_e = [e for t, e in zip(times, err_total) if t >= cushion]
    return LapReport(
        point=p,
        times=times,
        errors_total=tuple(err_total),
        errors_scattered=tuple(err_scat),
        errors_components={k: tuple(v) for k, v in err_comp.items()},
        amplitude_total=complex(A),
        amplitude_scattered=complex(A_s),
        cushion=cushion,
        fitted_rate=_fit_rate(tail_t, tail_e),
    )
