"""Kernel integrals for the diffracted wave, in time and in frequency.

Frequency domain
    ``int_R W(beta) calZ(beta, phi) exp(i omega rho cosh beta) dbeta`` is split
    into the window ``[-1, 1]`` and two tails.  In the window ``calZ`` is
    replaced by its bounded remainder plus the two simple-pole terms, whose
    integrals (the ``K`` family) are computed either by subtracting the
    integrand value at the pole or by deforming ``[-r, r]`` onto the lower
    semicircle of radius ``r`` and adding the residue.  The tails are moved to
    the rays ``+-1 +- i theta + x`` with ``theta = pi/2 - arg omega`` where the
    exponential factor decays like ``exp(-|omega| rho sinh x)`` without
    oscillating; this also covers real ``omega``.

Time domain
    ``int calZ(beta, phi) F(t - rho cosh beta) dbeta`` has compact support
    ``|beta| <= arccosh(t/rho)``.  Inside ``|beta| <= 1`` the pole terms are
    subtracted at ``beta = 0`` and their integrals added in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import gk
from .errors import DomainError
from .kernel import calZ_array, remainder_array

__all__ = [
    "QuadratureSpec",
    "DEFAULT_SPEC",
    "deformation_radius",
    "epsilon0",
    "integrate_K",
    "integrate_frequency_kernel",
    "integrate_timedomain_kernel",
    "WEIGHTS",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and overrides shared by every kernel integral.

    ``deformation_radius`` fixes the semicircle radius ``r`` (default: the
    largest radius meeting the admissibility conditions, found by bisection).
    ``tail_cutoff`` fixes the end ``X`` of the rotated tail rays.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 20000
    deformation_radius: float | None = None
    tail_cutoff: float | None = None

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")

    def gk_kwargs(self) -> dict:
        return dict(rel_tol=self.rel_tol, abs_tol=self.abs_tol, max_subdivisions=self.max_subdivisions)


DEFAULT_SPEC = QuadratureSpec()


# --------------------------------------------------------------------------
# Deformation radius
# --------------------------------------------------------------------------


def _radius_ok(r: float, omega: complex) -> bool:
    h = math.cosh(r) - 1.0  # max |cosh(beta) - 1| on |beta| <= r
    return h < 0.25 and abs(omega.real) * h <= omega.imag / 4


def deformation_radius(omega: complex, r_max: float = 0.99) -> float:
    """Largest ``r <= r_max`` with ``|h| < 1/4`` and ``|Re omega| |h| <= Im omega / 4`` on ``|beta| <= r``.

    ``h(beta) = cosh(beta) - 1``.  Found by bisection.
    """
    omega = complex(omega)
    if not omega.imag > 0:
        raise DomainError(f"contour deformation needs Im(omega) > 0, got {omega!r}")
    if _radius_ok(r_max, omega):
        return r_max
    lo, hi = 0.0, r_max
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _radius_ok(mid, omega):
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    return lo


def epsilon0(omega: complex) -> float:
    """Pole margin ``eps0 = r/2`` used by the deformation scheme."""
    return 0.5 * deformation_radius(omega)


# --------------------------------------------------------------------------
# Weights
# --------------------------------------------------------------------------


def _weight(name: str, omega: complex, rho: float):
    """Return ``(W, dW)`` as analytic functions of complex ``beta``."""
    iwr = 1j * omega * rho
    if name == "one":
        return (lambda b: np.ones_like(b)), (lambda b: np.zeros_like(b))
    if name == "cosh":
        return np.cosh, np.sinh
    if name == "sinh":
        return np.sinh, np.cosh
    if name == "phiphi":
        return (
            lambda b: np.cosh(b) + iwr * np.sinh(b) ** 2,
            lambda b: np.sinh(b) + 2 * iwr * np.sinh(b) * np.cosh(b),
        )
    raise DomainError(f"unknown weight {name!r}")


WEIGHTS = ("one", "cosh", "sinh", "phiphi")


def _phase_points(omega_abs_rho: float, upper: float) -> np.ndarray:
    """Symmetric breakpoints on ``[-upper, upper]`` at equal steps of ``rho |omega| cosh``."""
    pts = [0.0, upper]
    if omega_abs_rho > 0:
        kmax = int(omega_abs_rho * (math.cosh(upper) - 1.0) / math.pi)
        if kmax > 0:
            k = np.arange(1, kmax + 1)
            pts.extend(np.arccosh(1.0 + k * math.pi / omega_abs_rho).tolist())
    p = np.unique(np.array(pts))
    p = p[p <= upper]
    return np.concatenate([-p[::-1], p[1:]])


# --------------------------------------------------------------------------
# Singular window integrals
# --------------------------------------------------------------------------


def _log_term(b: float, eps: float, eps_side: int) -> complex:
    """``int_{-b}^{b} dbeta / (beta + i eps)``; at ``eps = 0`` the limit from ``eps_side``."""
    if eps == 0.0:
        if eps_side not in (1, -1):
            raise DomainError("pole on the integration path: a one-sided limit (side) is required")
        return -1j * math.pi * eps_side
    return complex(np.log(b + 1j * eps) - np.log(-b + 1j * eps))


def _singular_subtract(G, eps, eps_side, pts, spec):
    """``int_{-1}^{1} G(beta)/(beta + i eps)`` by subtracting ``G(-i eps)``."""
    p = -1j * eps
    gp = complex(G(np.array([p]))[0])

    def quotient(b):
        d = b - p
        with np.errstate(divide="ignore", invalid="ignore"):
            q = (G(b.astype(complex)) - gp) / d
        return np.where(d == 0, 0.0, q)

    smooth = gk.integrate(quotient, pts, **spec.gk_kwargs()).value
    return smooth + gp * _log_term(1.0, eps, eps_side)


def _singular_deform(G, dG, m, eps, eps_side, omega, pts, spec):
    """``int_{-1}^{1} G/(beta + i eps)^m`` on ``[-1,-r] + lower semicircle + [r,1]``."""
    r = spec.deformation_radius if spec.deformation_radius is not None else deformation_radius(omega)
    if not 0 < r < 1:
        raise DomainError(f"deformation radius {r!r} must lie in (0, 1)")
    kw = spec.gk_kwargs()

    def on_line(b):
        return G(b.astype(complex)) / (b + 1j * eps) ** m

    if abs(eps) >= r / 2:
        return gk.integrate(on_line, pts, **kw).value
    if eps == 0.0 and eps_side not in (1, -1):
        raise DomainError("pole on the integration path: a one-sided limit (side) is required")
    outer_right = np.concatenate([[r], pts[pts > r]])
    outer_left = np.concatenate([pts[pts < -r], [-r]])
    total = gk.integrate(on_line, outer_left, **kw).value + gk.integrate(on_line, outer_right, **kw).value

    def on_arc(theta):
        b = r * np.exp(1j * theta)
        return G(b) / (b + 1j * eps) ** m * 1j * b

    total += gk.integrate(on_arc, np.linspace(-math.pi, 0.0, 5), **kw).value
    # pole -i eps lies between the segment and the arc for eps > 0 (or eps -> 0+)
    if eps > 0 or (eps == 0.0 and eps_side == 1):
        p = np.array([-1j * eps])
        residue = G(p)[0] if m == 1 else dG(p)[0]
        total -= 2j * math.pi * complex(residue)
    return total


def _K_family(W, dW, m, rho, omega, eps, eps_side, spec, method):
    """``int_{-1}^{1} W(beta) exp(i omega rho cosh beta)/(beta + i eps)^m``."""
    iwr = 1j * omega * rho

    def G(b):
        return W(b) * np.exp(iwr * np.cosh(b))

    def dG(b):
        return (dW(b) + iwr * np.sinh(b) * W(b)) * np.exp(iwr * np.cosh(b))

    pts = _phase_points(abs(omega) * rho, 1.0)
    if method == "auto":
        method = "deform" if omega.imag > 0 else "subtract"
    if method == "deform":
        if not omega.imag > 0:
            raise DomainError(f"contour deformation needs Im(omega) > 0, got {omega!r}")
        return _singular_deform(G, dG, m, eps, eps_side, omega, pts, spec)
    if method != "subtract":
        raise DomainError(f"unknown method {method!r}")
    if m == 1:
        return _singular_subtract(G, eps, eps_side, pts, spec)
    # m = 2: integrate by parts onto a simple pole
    one = np.array([1.0 + 0j])
    boundary = -G(one)[0] / (1 + 1j * eps) + G(-one)[0] / (-1 + 1j * eps)
    return complex(boundary) + _singular_subtract(dG, eps, eps_side, pts, spec)


def integrate_K(
    kind: str,
    rho: float,
    omega: complex,
    eps: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    method: str = "auto",
    eps_side: int = 0,
) -> complex:
    """Window integrals over ``[-1, 1]``::

        K0 = int exp(i w rho cosh b) / (b + i eps)
        K1 = int cosh(b) exp(i w rho cosh b)
        K2 = int exp(i w rho cosh b) / (b + i eps)^2

    ``K1`` carries no pole and does not depend on ``eps``.  ``eps = 0`` is
    allowed together with ``eps_side = +1`` (limit ``eps -> 0+``) or ``-1``.
    """
    omega = complex(omega)
    eps = float(eps)
    if not rho > 0:
        raise DomainError(f"rho={rho!r} must be > 0")
    if eps == 0.0 and eps_side not in (1, -1):
        raise DomainError("eps = 0 requires eps_side = +1 or -1")
    one, zero = _weight("one", omega, rho)
    if kind == "K0":
        return _K_family(one, zero, 1, rho, omega, eps, eps_side, spec, method)
    if kind == "K2":
        return _K_family(one, zero, 2, rho, omega, eps, eps_side, spec, method)
    if kind == "K1":
        iwr = 1j * omega * rho
        pts = _phase_points(abs(omega) * rho, 1.0)
        return gk.integrate(lambda b: np.cosh(b) * np.exp(iwr * np.cosh(b)), pts, **spec.gk_kwargs()).value
    raise DomainError(f"unknown K kind {kind!r}")


# --------------------------------------------------------------------------
# Frequency-domain kernel integral
# --------------------------------------------------------------------------


def _tail_cutoff(omega: complex, rho: float, spec: QuadratureSpec) -> float:
    if spec.tail_cutoff is not None:
        return float(spec.tail_cutoff)
    return max(2.0, math.asinh(80.0 / (abs(omega) * rho)))


def _tail_points(start: float, stop: float, scale: float) -> np.ndarray:
    """Breakpoints on ``[start, stop]`` refined geometrically near ``start``."""
    span = stop - start
    pts = [start, stop]
    step = min(span, 1.0)
    while step > max(scale, 1e-12 * span):
        pts.append(start + step)
        step *= 0.5
    pts.extend(np.arange(start, stop, 1.0)[1:].tolist())
    return np.unique(np.array(pts))


def _integrate_tails(integrand, omega, rho, spec):
    """Both tails ``|beta| > 1`` on the rotated, non-oscillating paths."""
    theta = 0.5 * math.pi - math.atan2(omega.imag, omega.real)
    X = _tail_cutoff(omega, rho, spec)
    scale = 0.05 / max(abs(omega) * rho, 1e-300)
    kw = spec.gk_kwargs()
    total = 0j
    # Each tail is parametrised outward from +-1; for the left tail the
    # reversed orientation cancels the sign of d(beta)/ds.
    for sgn in (1.0, -1.0):
        # vertical leg start -> start + i sgn theta
        if theta != 0.0:
            ys = _tail_points(0.0, abs(theta), scale)

            def vertical(y, sgn=sgn):
                b = sgn * (1.0 + 1j * math.copysign(1.0, theta) * y)
                return integrand(b) * 1j * math.copysign(1.0, theta)

            total += gk.integrate(vertical, ys, **kw).value
        # horizontal leg start + i sgn theta -> sgn X + i sgn theta
        xs = _tail_points(1.0, X, scale)

        def horizontal(x, sgn=sgn):
            b = sgn * (x + 1j * theta)
            return integrand(b)

        total += gk.integrate(horizontal, xs, **kw).value
    return total


def integrate_frequency_kernel(
    alpha: float,
    rho: float,
    phi: float,
    omega: complex,
    spec: QuadratureSpec = DEFAULT_SPEC,
    weight: str = "one",
    method: str = "auto",
    side: int = 0,
) -> complex:
    """``int_R W(beta) calZ(beta, phi) exp(i omega rho cosh beta) dbeta``.

    ``weight`` selects ``W``: ``one``, ``cosh``, ``sinh`` or ``phiphi``
    (``cosh + i omega rho sinh^2``).  On a jump ray ``phi = phi_pm`` pass
    ``side = +1`` for the limit from larger ``phi`` or ``-1`` from smaller.
    Real ``omega`` is accepted with ``method = 'subtract'`` or ``'auto'``.
    """
    omega = complex(omega)
    if not rho > 0:
        raise DomainError(f"rho={rho!r} must be > 0")
    if omega.imag < 0 or omega == 0:
        raise DomainError(f"need Im(omega) >= 0 and omega != 0, got {omega!r}")
    if not (0.0 <= phi <= 2 * math.pi):
        raise DomainError(f"phi={phi!r} must lie in [0, 2*pi]")
    W, dW = _weight(weight, omega, rho)
    iwr = 1j * omega * rho
    eps_plus = math.pi + alpha - phi
    eps_minus = math.pi - alpha - phi
    eps_side = -side  # phi -> ray + 0 means eps -> 0-

    pts = _phase_points(abs(omega) * rho, 1.0)
    smooth = gk.integrate(
        lambda b: W(b) * remainder_array(b, phi, alpha) * np.exp(iwr * np.cosh(b)), pts, **spec.gk_kwargs()
    ).value
    k_plus = _K_family(W, dW, 1, rho, omega, eps_plus, eps_side, spec, method)
    k_minus = _K_family(W, dW, 1, rho, omega, eps_minus, eps_side, spec, method)
    tails = _integrate_tails(lambda b: W(b) * calZ_array(b, phi, alpha) * np.exp(iwr * np.cosh(b)), omega, rho, spec)
    return smooth - 4.0 * k_plus + 4.0 * k_minus + tails


# --------------------------------------------------------------------------
# Time-domain kernel integral
# --------------------------------------------------------------------------


def integrate_timedomain_kernel(
    alpha: float,
    F: Callable[[np.ndarray], np.ndarray],
    rho: float,
    phi: float,
    t: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    carrier: float = 1.0,
    kinks=(),
    side: int = 0,
) -> complex:
    """``int calZ(beta, phi) F(t - rho cosh beta) dbeta`` over ``|beta| <= arccosh(t/rho)``.

    ``F`` is the modulated profile (zero for negative argument), ``carrier``
    its oscillation frequency (for panel placement) and ``kinks`` the points
    where ``F`` is not smooth.  Exactly zero for ``t <= rho``.
    """
    if not rho > 0:
        raise DomainError(f"rho={rho!r} must be > 0")
    if not (0.0 <= phi <= 2 * math.pi):
        raise DomainError(f"phi={phi!r} must lie in [0, 2*pi]")
    if t <= rho:
        return 0j
    B = math.acosh(t / rho)
    b = min(B, 1.0)
    eps_plus = math.pi + alpha - phi
    eps_minus = math.pi - alpha - phi
    eps_side = -side
    kw = spec.gk_kwargs()

    def Fb(beta):
        return F(t - rho * np.cosh(beta))

    extra = [math.acosh((t - s) / rho) for s in np.asarray(kinks, dtype=float) if rho < t - s < t]
    pts_all = np.unique(np.concatenate([_phase_points(max(carrier, 1.0) * rho, B), extra, np.negative(extra)]))
    inner = pts_all[np.abs(pts_all) <= b]
    inner = np.unique(np.concatenate([[-b, 0.0, b], inner]))

    F0 = complex(F(np.array([t - rho]))[0])

    def inner_integrand(beta):
        Fv = Fb(beta)
        out = remainder_array(beta, phi, alpha) * Fv
        for coeff, eps in ((-4.0, eps_plus), (4.0, eps_minus)):
            d = beta + 1j * eps
            with np.errstate(divide="ignore", invalid="ignore"):
                q = (Fv - F0) / d
            out = out + coeff * np.where(d == 0, 0.0, q)
        return out

    total = gk.integrate(inner_integrand, inner, **kw).value
    total += F0 * (-4.0 * _log_term(b, eps_plus, eps_side) + 4.0 * _log_term(b, eps_minus, eps_side))
    if B > 1.0:
        outer = pts_all[pts_all >= 1.0]
        outer = np.unique(np.concatenate([[1.0, B], outer]))

        def outer_integrand(beta):
            return calZ_array(beta, phi, alpha) * Fb(beta)

        total += gk.integrate(outer_integrand, outer, **kw).value
        total += gk.integrate(outer_integrand, -outer[::-1], **kw).value
    return total
