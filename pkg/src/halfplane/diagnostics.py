"""Verification suites producing :class:`DiagnosticReport` lists.

Every suite is a pure function of ``(scenario, profile, spec)``; random
probe points come from fixed seeds, so repeated runs give identical reports.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import frequency, kernel, sommerfeld, timedomain
from .errors import ConfigurationError
from .lap import lap_study
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .reports import DiagnosticReport
from .scenario import Profile, ScenarioConfig

__all__ = ["SUITES", "DEFAULT_TOLERANCES", "run_suite", "run_suites", "DiagnosticReport"]

#: per-check tolerances; overridable through ``run_suite(..., tolerances=...)``
DEFAULT_TOLERANCES = {
    "kernel-decay.ratio": 0.0,
    "kernel-decomposition.reconstruction": 1e-10,
    "kernel-decomposition.residue-plus": 1e-8,
    "kernel-decomposition.residue-minus": 1e-8,
    "kernel-decomposition.dphi-coefficient-plus": 1e-8,
    "kernel-decomposition.dphi-coefficient-minus": 1e-8,
    "kernel-decomposition.sommerfeld-ratio": 1e-12,
    "causality.diffracted": 0.0,
    "causality.scattered": 0.0,
    "boundary.total-time": 1e-6,
    "boundary.scattered-frequency": 1e-6,
    "boundary.amplitude": 1e-9,
    "jumps.components-jump": 0.0,
    "jumps.reflected-closed-form": 1e-5,
    "jumps.diffracted-cancels-reflected": 1e-6,
    "jumps.scattered": 1e-5,
    "jumps.scattered-dphi": 1e-5,
    "jumps.scattered-dphiphi": 1e-5,
    "helmholtz.order-low": 0.0,
    "helmholtz.order-high": 0.0,
    "helmholtz.fine-residual": 1e-6,
    "decay-fits.rate": 0.0,
    "transform-consistency.relative": 1e-6,
    "green-identity.order": 0.0,
    "green-identity.ring-decrease": 0.0,
    "lap.total-final": 0.0,
    "lap.total-decreasing": 0.0,
    "lap.scattered-final": 0.0,
    "lap.scattered-decreasing": 0.0,
    "sommerfeld-oracle.route-agreement": 1e-8,
    "sommerfeld-oracle.screen": 1e-9,
    "sommerfeld-oracle.radiation": 0.0,
    "sommerfeld-oracle.edge": 0.0,
}


class _Ctx:
    def __init__(self, scenario, profile, spec, tolerances):
        self.scenario: ScenarioConfig = scenario
        self.profile: Profile = profile
        self.spec: QuadratureSpec = spec
        self.tol = dict(DEFAULT_TOLERANCES)
        self.tol.update(tolerances or {})

    def report(self, group, name, measured, target, provenance, mode="target", params=None, detail=None):
        key = f"{group}.{name}"
        base = key.split("[", 1)[0]
        return DiagnosticReport(
            check_id=key,
            parameters=dict(params or {}),
            measured=measured,
            bound_or_target=target,
            tolerance=float(self.tol.get(base, 0.0)),
            provenance=provenance,
            mode=mode,
            detail=dict(detail or {}),
        )


# --------------------------------------------------------------------------
# kernel suites
# --------------------------------------------------------------------------


def _kernel_decay(c: _Ctx):
    a = c.scenario.alpha
    phis = np.linspace(0.0, 2 * math.pi, 64)
    mags = np.linspace(1.0, 40.0, 2000)
    betas = np.concatenate([-mags, mags])
    worst, worst_phi = 0.0, None
    for phi in phis:
        env = np.abs(kernel.calZ_array(betas, phi, a)) * np.exp(np.abs(betas) / 2)
        # normalise by the envelope at |beta| = 1 for the same phi
        ratio = float(env.max() / max(env[0], env[mags.size]))
        if ratio > worst:
            worst, worst_phi = ratio, float(phi)
    return [c.report("kernel-decay", "ratio", worst, 1.5, "paper-bound", "upper",
                     {"beta": [1.0, 40.0], "phi_grid": 64, "alpha": a}, {"worst_phi": worst_phi})]


def _contour_coefficient(fn, centre, radius, power, n=512):
    """``(1/2 pi i) oint fn(beta) (beta - centre)^power dbeta`` on a circle (trapezoid)."""
    theta = 2 * math.pi * np.arange(n) / n
    z = centre + radius * np.exp(1j * theta)
    dz = 1j * radius * np.exp(1j * theta)
    return complex(np.mean(fn(z) * (z - centre) ** power * dz) * 2 * math.pi / (2j * math.pi))


def _kernel_decomposition(c: _Ctx):
    a = c.scenario.alpha
    rng = np.random.default_rng(20240611)
    worst = 0.0
    for _ in range(100):
        beta = rng.uniform(-1.0, 1.0)
        phi = rng.uniform(0.0, 2 * math.pi)
        dec = kernel.decompose_calZ(phi, a)
        direct = kernel.calZ_array(beta, phi, a)
        worst = max(worst, abs(complex(dec.reconstruct(beta)) - complex(direct)) / max(1.0, abs(direct)))
    out = [c.report("kernel-decomposition", "reconstruction", worst, 0.0, "trivial", "upper",
                    {"samples": 100, "beta": [-1, 1]})]
    phi = 0.5 * math.pi
    dec = kernel.decompose_calZ(phi, a)
    for tag, eps, coeff in (("plus", dec.eps_plus, -4.0), ("minus", dec.eps_minus, 4.0)):
        radius = abs(eps) / 2
        res = _contour_coefficient(lambda z: kernel.calZ_array(z, phi, a), -1j * eps, radius, 0)
        out.append(c.report("kernel-decomposition", f"residue-{tag}", res, coeff, "paper-bound",
                            params={"phi": phi, "eps": eps, "radius": radius}))
        second = _contour_coefficient(lambda z: kernel.dphi_calZ_array(z, phi, a), -1j * eps, radius, 1)
        out.append(c.report("kernel-decomposition", f"dphi-coefficient-{tag}", second, 1j * coeff,
                            "paper-bound", params={"phi": phi, "eps": eps, "radius": radius}))
    # measured proportionality between the stationary kernel and U
    gamma, phi_s = 0.3 + 0.2j, 1.0
    ratio = kernel.measure_sommerfeld_ratio(gamma, phi_s, a)
    out.append(c.report("kernel-decomposition", "sommerfeld-ratio", ratio, 0.5, "derived-oracle",
                        params={"gamma": gamma, "phi": phi_s}))
    return out


# --------------------------------------------------------------------------
# time-domain suites
# --------------------------------------------------------------------------


def _causality(c: _Ctx):
    sc, pr = c.scenario, c.profile
    rng = np.random.default_rng(7)
    worst_d = 0.0
    worst_s = 0.0
    for _ in range(100):
        rho = rng.uniform(0.05, 10.0)
        phi = rng.uniform(0.0, 2 * math.pi)
        t = rng.uniform(-5.0, rho)
        worst_d = max(worst_d, abs(timedomain.diffracted(sc, pr, (rho, phi), t, c.spec)))
        # the incident front reaches the screen at t = 0
        worst_s = max(worst_s, abs(timedomain.scattered(sc, pr, (rho, phi), -abs(t) - 1e-12, c.spec)))
    return [
        c.report("causality", "diffracted", worst_d, 0.0, "trivial", params={"samples": 100, "t": "< rho"}),
        c.report("causality", "scattered", worst_s, 0.0, "paper-bound", params={"samples": 100, "t": "< 0"}),
    ]


def _boundary(c: _Ctx):
    sc, pr = c.scenario, c.profile
    rhos = np.linspace(0.25, 5.0, 20)
    ts = np.linspace(0.0, 12.0, 20)
    worst = 0.0
    scale = 0.0
    for rho in rhos:
        for t in ts:
            scale = max(scale, abs(timedomain.incident(sc, pr, (rho, 0.0), t)))
            for face in (0.0, 2 * math.pi):
                worst = max(worst, abs(timedomain.total(sc, pr, (rho, face), t, c.spec)))
    out = [c.report("boundary", "total-time", worst / max(scale, 1e-300), 0.0, "paper-bound", "upper",
                    {"grid": [20, 20], "rho": [0.25, 5.0], "t": [0.0, 12.0]}, {"scale": scale})]
    omega = 1.0 + 0.5j
    g = complex(pr.fhat(omega - sc.omega0))
    worst_f = 0.0
    for rho in (0.5, 1.0, 2.0, 4.0):
        for face in (0.0, 2 * math.pi):
            us = frequency.hat_scattered(sc, pr, (rho, face), omega, c.spec)
            worst_f = max(worst_f, abs(us + g * np.exp(1j * omega * sc.n[0] * rho)) / abs(g))
    out.append(c.report("boundary", "scattered-frequency", worst_f, 0.0, "paper-bound", "upper",
                        {"omega": omega}))
    worst_a = 0.0
    for rho in (0.1, 1.0, 5.0, 20.0):
        for face in (0.0, 2 * math.pi):
            for route in ("kernel", "fresnel"):
                worst_a = max(worst_a, abs(sommerfeld.amplitude_total(sc, (rho, face), route, c.spec)))
    out.append(c.report("boundary", "amplitude", worst_a, 0.0, "paper-bound", "upper"))
    return out


# --------------------------------------------------------------------------
# frequency-domain suites
# --------------------------------------------------------------------------

_JUMP_OMEGA = 1.0 + 1.0j


def _jumps(c: _Ctx):
    sc, pr, spec = c.scenario, c.profile, c.spec
    omega, rho = _JUMP_OMEGA, 1.0
    g = complex(pr.fhat(omega - sc.omega0))
    out = []

    def J(component, deriv, at):
        f = frequency.FrequencyField(sc, pr, omega, component, deriv, spec)
        return frequency.jump_of(f, rho, at)

    params = {"omega": omega, "rho": rho}
    jr = J("reflected", "", "phi_minus")
    ji1 = J("incident1", "", "phi_plus")
    out.append(c.report("jumps", "components-jump[phi_minus]", abs(jr.value), 0.1, "paper-bound", "lower",
                        params, {"component": "reflected"}))
    out.append(c.report("jumps", "components-jump[phi_plus]", abs(ji1.value), 0.1, "paper-bound", "lower",
                        params, {"component": "incident1"}))
    out.append(c.report("jumps", "reflected-closed-form", jr.value, g * np.exp(1j * omega * rho),
                        "paper-bound", params=params))
    jd = J("diffracted", "", "phi_minus")
    out.append(c.report("jumps", "diffracted-cancels-reflected", abs(jd.value + jr.value), 0.0,
                        "paper-bound", "upper", params))
    for at in ("phi_minus", "phi_plus"):
        for deriv, name in (("", "scattered"), ("phi", "scattered-dphi"), ("phiphi", "scattered-dphiphi")):
            est = J("scattered", deriv, at)
            out.append(c.report("jumps", f"{name}[{at}]", abs(est.value), 0.0, "paper-bound", "upper", params,
                                {"extrapolation_error": est.error}))
    return out


_HELMHOLTZ_POINTS = (
    (1.0, 0.6), (1.5, math.pi / 2), (2.0, math.pi), (2.5, 4.0), (3.0, 5.8),
    (1.2, None), (2.2, None), (1.8, "plus"), (2.8, "plus"), (1.4, 2.6),
)


def _helmholtz_points(sc):
    pts = []
    for rho, phi in _HELMHOLTZ_POINTS:
        if phi is None:
            phi = sc.phi_minus + 0.015  # stencil straddles the reflection boundary
        elif phi == "plus":
            phi = sc.phi_plus - 0.015  # stencil straddles the shadow boundary
        pts.append((rho, phi))
    return pts


def _helmholtz(c: _Ctx):
    sc, pr = c.scenario, c.profile
    omega = 1.0 + 0.5j
    spec = QuadratureSpec(rel_tol=min(c.spec.rel_tol, 1e-13), abs_tol=min(c.spec.abs_tol, 1e-16),
                          max_subdivisions=c.spec.max_subdivisions)
    field_ = frequency.FrequencyField(sc, pr, omega, "scattered", "", spec)
    hs = (0.04, 0.02, 0.01)
    orders_low, orders_high, fine = [], [], []
    for pt in _helmholtz_points(sc):
        r = [frequency.helmholtz_residual(field_, pt, h) for h in hs]
        orders_low.append(math.log2(r[0] / r[1]))
        orders_high.append(math.log2(r[1] / r[2]))
        fine.append(frequency.helmholtz_residual(field_, pt, 1e-3))
    params = {"omega": omega, "h": list(hs), "points": len(fine)}
    return [
        c.report("helmholtz", "order-low", min(orders_low + orders_high), 1.7, "paper-bound", "lower", params,
                 {"orders_first_halving": orders_low, "orders_second_halving": orders_high}),
        c.report("helmholtz", "order-high", max(orders_low + orders_high), 2.3, "paper-bound", "upper", params),
        c.report("helmholtz", "fine-residual", max(fine), 0.0, "paper-bound", "upper", {"h": 1e-3},
                 {"residuals": fine}),
    ]


def decay_rate_bound(scenario: ScenarioConfig, omega: complex, phi: float) -> float:
    """``Im(omega) * min(1, direction cosine)`` for the plane-wave parts present at ``phi``."""
    dc = 1.0
    if phi < scenario.phi_minus:
        dc = -math.cos(phi + scenario.alpha)
    elif phi > scenario.phi_plus:
        dc = -math.cos(phi - scenario.alpha)
    return complex(omega).imag * min(1.0, dc)


def fit_decay_rate(rhos, values) -> float:
    """Least-squares ``c`` in ``log(|v| / (1 + rho^-1/2)) ~ log C - c rho``."""
    rhos = np.asarray(rhos, dtype=float)
    y = np.log(np.abs(np.asarray(values)) / (1 + rhos ** -0.5))
    slope, _ = np.polyfit(rhos, y, 1)
    return float(-slope)


def _decay_fits(c: _Ctx):
    sc, pr = c.scenario, c.profile
    omega = 1.0 + 0.5j
    rhos = np.geomspace(0.5, 30.0, 16)
    out = []
    for phi in (math.pi / 6, math.pi / 2, math.pi, 1.5 * math.pi, 11 * math.pi / 6):
        bound = decay_rate_bound(sc, omega, phi)
        for deriv, label in (("", "value"), ("rho", "drho")):
            vals = [frequency.hat_scattered(sc, pr, (r, phi), omega, c.spec, deriv) for r in rhos]
            rate = fit_decay_rate(rhos, vals)
            cst = float(np.max(np.abs(vals) * np.exp(rate * rhos) / (1 + rhos ** -0.5)))
            out.append(c.report("decay-fits", f"rate[{label},phi={phi:.6f}]", rate, 0.9 * bound, "paper-bound",
                                "lower", {"omega": omega, "rho": [0.5, 30.0], "phi": phi},
                                {"rate_bound": bound, "fitted_C": cst, "positive": rate > 0}))
    return out


def _transform_consistency(c: _Ctx):
    sc, pr = c.scenario, c.profile
    rng = np.random.default_rng(31337)
    out = []
    for i in range(10):
        rho = float(rng.uniform(0.5, 3.0))
        phi = float(rng.uniform(0.1, 2 * math.pi - 0.1))
        omega = complex(rng.uniform(0.5, 2.0), rng.uniform(0.3, 1.0))
        for comp in ("incident1", "reflected", "diffracted", "scattered"):
            num = frequency.transform_timedomain(comp, sc, pr, (rho, phi), omega, c.spec)
            ref = frequency.FrequencyField(sc, pr, omega, comp, "", c.spec)(rho, phi)
            rel = abs(num - ref) / abs(ref) if ref != 0 else abs(num)
            out.append(c.report("transform-consistency", f"relative[{comp},{i}]", rel, 0.0, "derived-oracle",
                                "upper", {"rho": rho, "phi": phi, "omega": omega}, {"numeric": num, "form": ref}))
    return out


def _green_identity(c: _Ctx):
    sc, pr = c.scenario, c.profile
    omega = 1.0 + 0.5j
    man = frequency.ManufacturedField(omega)
    R = 5.0
    mism = []
    sizes = (50, 100, 200)
    for n in sizes:
        rep = frequency.green_identity_check(man, omega, R, n_rho=n, n_phi=2 * n)
        mism.append(rep.measured)
    orders = [math.log2(mism[i] / mism[i + 1]) for i in range(len(mism) - 1)]
    out = [c.report("green-identity", "order", min(orders), 1.7, "derived-oracle", "lower",
                    {"omega": omega, "R": R, "n_rho": list(sizes)}, {"mismatch": mism, "orders": orders})]
    ring_field = frequency.ScatteredRingField(sc, pr, omega, c.spec)
    rings = [abs(frequency.ring_term(ring_field, R_, 64)) for R_ in (5.0, 10.0, 20.0)]
    decreasing = float(all(b < a for a, b in zip(rings, rings[1:])))
    out.append(c.report("green-identity", "ring-decrease", decreasing, 1.0, "paper-bound", "target",
                        {"omega": omega, "R": [5.0, 10.0, 20.0]}, {"ring_terms": rings}))
    man_rings = [abs(frequency.ring_term(man, R_, 256)) for R_ in (5.0, 10.0, 20.0)]
    out.append(c.report("green-identity", "ring-decrease[manufactured]",
                        float(all(b < a for a, b in zip(man_rings, man_rings[1:]))), 1.0, "derived-oracle",
                        "target", {"R": [5.0, 10.0, 20.0]}, {"ring_terms": man_rings}))
    return out


# --------------------------------------------------------------------------
# stationary suites
# --------------------------------------------------------------------------


def _lap(c: _Ctx):
    sc, pr = c.scenario, c.profile
    point = (1.0, math.pi)
    times = (10.0, 100.0, 1000.0)
    rep = lap_study(sc, pr, point, times, c.spec)
    params = {"rho": point[0], "phi": point[1], "times": list(times)}
    out = [
        c.report("lap", "total-final", rep.errors_total[-1], 1e-2 * abs(rep.amplitude_total), "derived-oracle",
                 "upper", params, {"errors": list(rep.errors_total), "fitted_rate": rep.fitted_rate}),
        c.report("lap", "total-decreasing", float(rep.tail_decreasing()), 1.0, "derived-oracle", "target",
                 params),
        c.report("lap", "scattered-final", rep.errors_scattered[-1], 1e-2 * abs(rep.amplitude_scattered),
                 "paper-bound", "upper", params, {"errors": list(rep.errors_scattered)}),
        c.report("lap", "scattered-decreasing", float(rep.tail_decreasing(rep.errors_scattered)), 1.0,
                 "paper-bound", "target", params),
    ]
    return out


def _sommerfeld_oracle(c: _Ctx):
    sc = c.scenario
    rng = np.random.default_rng(4242)
    pts = [(float(rng.uniform(0.1, 20.0)), float(rng.uniform(0.0, 2 * math.pi))) for _ in range(50)]
    worst = max(abs(sommerfeld.amplitude_total(sc, p, "kernel", c.spec) - sommerfeld.amplitude_total(sc, p, "fresnel"))
                for p in pts)
    out = [c.report("sommerfeld-oracle", "route-agreement", worst, 0.0, "derived-oracle", "upper",
                    {"points": 50, "rho": [0.1, 20.0]})]
    screen = 0.0
    for rho in np.geomspace(0.1, 20.0, 8):
        for face in (0.0, 2 * math.pi):
            for route in ("kernel", "fresnel"):
                screen = max(screen, abs(sommerfeld.amplitude_total(sc, (rho, face), route, c.spec)))
    out.append(c.report("sommerfeld-oracle", "screen", screen, 0.0, "paper-bound", "upper"))
    rhos = np.geomspace(10.0, 1000.0, 9)
    for phi in (math.pi / 2, math.pi, 3 * math.pi / 2):
        scaled = [abs(sommerfeld.amplitude_diffracted(sc, (r, phi), c.spec)) * math.sqrt(r) for r in rhos]
        spread = max(scaled) / min(scaled)
        out.append(c.report("sommerfeld-oracle", f"radiation[phi={phi:.6f}]", spread, 2.0, "paper-bound", "upper",
                            {"rho": [10.0, 1000.0]}, {"scaled": scaled}))
    edge = 0.0
    for rho in (1e-1, 1e-2, 1e-3):
        for phi in np.linspace(0.0, 2 * math.pi, 17):
            edge = max(edge, abs(sommerfeld.amplitude_total(sc, (rho, float(phi)), "kernel", c.spec)))
    out.append(c.report("sommerfeld-oracle", "edge", edge, 2.0, "paper-bound", "upper",
                        {"rho": [1e-3, 1e-1]}, {"bound_meaning": "max |A| stays below the incident scale 2"}))
    return out


SUITES: dict[str, Callable[[_Ctx], list]] = {
    "boundary": _boundary,
    "causality": _causality,
    "decay-fits": _decay_fits,
    "green-identity": _green_identity,
    "helmholtz": _helmholtz,
    "jumps": _jumps,
    "kernel-decay": _kernel_decay,
    "kernel-decomposition": _kernel_decomposition,
    "lap": _lap,
    "sommerfeld-oracle": _sommerfeld_oracle,
    "transform-consistency": _transform_consistency,
}


def run_suite(suite_id: str, scenario: ScenarioConfig, profile: Profile, spec: QuadratureSpec = DEFAULT_SPEC,
              tolerances: dict | None = None) -> list[DiagnosticReport]:
    """Run one suite; reports are sorted by ``check_id``."""
    if suite_id not in SUITES:
        raise ConfigurationError(f"unknown suite {suite_id!r}; choose from {', '.join(sorted(SUITES))}")
    ctx = _Ctx(scenario, profile, spec, tolerances)
    return sorted(SUITES[suite_id](ctx), key=lambda r: r.check_id)


def run_suites(suite_ids, scenario, profile, spec: QuadratureSpec = DEFAULT_SPEC, tolerances=None,
               threads: int = 1) -> list[DiagnosticReport]:
    """Run several suites, optionally in worker processes; output order is fixed."""
    ids = sorted(set(suite_ids))
    for s in ids:
        if s not in SUITES:
            raise ConfigurationError(f"unknown suite {s!r}; choose from {', '.join(sorted(SUITES))}")
    if threads == 1 or len(ids) == 1:
        results = [run_suite(s, scenario, profile, spec, tolerances) for s in ids]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads or None) as pool:
            futures = [pool.submit(run_suite, s, scenario, profile, spec, tolerances) for s in ids]
            results = [f.result() for f in futures]
    return sorted((r for group in results for r in group), key=lambda r: r.check_id)
