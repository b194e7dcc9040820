"""Diffraction kernels ``U``, ``Z``, ``calZ`` and the stationary kernel ``zeta``.

With ``c(w) = coth(w/4)`` and ``eps_pm = phi_pm - phi`` the kernel used for
the diffracted wave expands to::

    calZ(beta, phi) = - c(beta + i eps_plus) + c(beta + i eps_minus)
                      + c(beta - i(phi_minus + phi)) - c(beta - i(phi_plus + phi))

Only the first two terms can vanish in their argument for real ``beta`` and
``phi`` in ``[0, 2 pi]``; their ``4/w`` parts are the singular terms of the
decomposition, the rest is the bounded remainder.

Scalar entry points (``eval_*``) check pole proximity.  The ``*_array``
variants are the unchecked vectorised versions used inside quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import PoleProximityError

__all__ = [
    "POLE_RADIUS",
    "coth",
    "eval_U",
    "eval_Z",
    "eval_calZ",
    "eval_dphi_calZ",
    "eval_sommerfeld_kernel",
    "calZ_array",
    "dphi_calZ_array",
    "remainder_array",
    "KernelDecomposition",
    "decompose_calZ",
    "sommerfeld_to_U_argument",
    "measure_sommerfeld_ratio",
]

#: exclusion radius around kernel poles for checked evaluation
POLE_RADIUS = 1e-12
_LAURENT_CUTOFF = 1e-3
_SERIES_CUTOFF = 0.1


def coth(w):
    """Complex ``coth`` without overflow, using the Laurent form near 0."""
    w = np.asarray(w, dtype=complex)
    flip = w.real < 0
    v = np.where(flip, -w, w)
    em = np.expm1(-2.0 * v)  # e^{-2v} - 1, |e^{-2v}| <= 1
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = -(2.0 + em) / em
        small = np.abs(v) < _LAURENT_CUTOFF
        vs = np.where(small, v, 1.0)
        laurent = 1.0 / vs + vs / 3.0 - vs**3 / 45.0
    out = np.where(small, laurent, direct)
    out = np.where(flip, -out, out)
    return out if out.ndim else out[()]


def _coth_minus_inv(x):
    """``coth(x) - 1/x``, analytic at 0."""
    x = np.asarray(x, dtype=complex)
    small = np.abs(x) < _SERIES_CUTOFF
    xs = np.where(small, x, 0.0)
    x2 = xs * xs
    series = xs * (1 / 3 + x2 * (-1 / 45 + x2 * (2 / 945 + x2 * (-1 / 4725 + x2 * (2 / 93555)))))
    xl = np.where(small, 1.0, x)
    direct = coth(xl) - 1.0 / xl
    out = np.where(small, series, direct)
    return out if out.ndim else out[()]


def _csch2(w):
    """``csch(w)^2 = coth(w)^2 - 1``."""
    c = coth(w)
    return c * c - 1.0


def _check_coth_argument(w: complex, where: complex) -> None:
    """Raise if ``coth(w)`` is within ``POLE_RADIUS`` of a pole ``i pi k``."""
    k = round(w.imag / math.pi)
    if abs(w - 1j * math.pi * k) < POLE_RADIUS:
        raise PoleProximityError(f"kernel evaluated within {POLE_RADIUS:g} of a pole at {where!r}", where)


# --------------------------------------------------------------------------
# U and Z
# --------------------------------------------------------------------------


def eval_U(zeta: complex, alpha: float) -> complex:
    """``U(zeta) = coth((zeta - i pi/2 + i alpha)/4) - coth((zeta - i pi/2 - i alpha)/4)``."""
    zeta = complex(zeta)
    for sign in (1, -1):
        w = (zeta - 0.5j * math.pi + sign * 1j * alpha) / 4
        k = round(w.imag / math.pi)
        _check_coth_argument(w, 0.5j * math.pi - sign * 1j * alpha + 4j * math.pi * k)
    return complex(_U_array(np.asarray(zeta), alpha))


def _U_array(zeta, alpha):
    zeta = np.asarray(zeta, dtype=complex)
    return coth((zeta - 0.5j * math.pi + 1j * alpha) / 4) - coth((zeta - 0.5j * math.pi - 1j * alpha) / 4)


def eval_Z(z: complex, alpha: float) -> complex:
    """``Z(z) = -U(z - i pi/2) + U(z - 5 i pi/2)``."""
    z = complex(z)
    for shift in (0.5j * math.pi, 2.5j * math.pi):
        try:
            eval_U(z - shift, alpha)
        except PoleProximityError as exc:
            raise PoleProximityError(str(exc), exc.location + shift) from None
    return complex(-_U_array(z - 0.5j * math.pi, alpha) + _U_array(z - 2.5j * math.pi, alpha))


# --------------------------------------------------------------------------
# calZ
# --------------------------------------------------------------------------


def _shifts(alpha: float, phi: float):
    """Imaginary shifts ``s`` of the four ``coth((beta + i s)/4)`` terms and their signs."""
    phi_plus = math.pi + alpha
    phi_minus = math.pi - alpha
    return (
        (-1.0, phi_plus - phi),
        (+1.0, phi_minus - phi),
        (+1.0, -(phi_minus + phi)),
        (-1.0, -(phi_plus + phi)),
    )


def calZ_array(beta, phi: float, alpha: float):
    """Unchecked vectorised ``calZ(beta, phi)``."""
    beta = np.asarray(beta, dtype=complex)
    out = np.zeros(beta.shape, dtype=complex)
    for sign, s in _shifts(alpha, phi):
        out = out + sign * coth((beta + 1j * s) / 4)
    return out if out.ndim else out[()]


def dphi_calZ_array(beta, phi: float, alpha: float):
    """Unchecked vectorised ``d calZ / d phi``."""
    beta = np.asarray(beta, dtype=complex)
    out = np.zeros(beta.shape, dtype=complex)
    for sign, s in _shifts(alpha, phi):
        # d/dphi coth((beta + i s)/4) with ds/dphi = -1
        out = out + sign * 0.25j * _csch2((beta + 1j * s) / 4)
    return out if out.ndim else out[()]


def remainder_array(beta, phi: float, alpha: float):
    """Bounded remainder ``calZ + 4/(beta + i eps_plus) - 4/(beta + i eps_minus)``."""
    beta = np.asarray(beta, dtype=complex)
    (s0, ep), (s1, em), (s2, a2), (s3, a3) = _shifts(alpha, phi)
    out = (
        s0 * _coth_minus_inv((beta + 1j * ep) / 4)
        + s1 * _coth_minus_inv((beta + 1j * em) / 4)
        + s2 * coth((beta + 1j * a2) / 4)
        + s3 * coth((beta + 1j * a3) / 4)
    )
    return out if out.ndim else out[()]


def _check_calZ(beta: complex, phi: float, alpha: float) -> None:
    phi_plus = math.pi + alpha
    phi_minus = math.pi - alpha
    for ray in (phi_plus, phi_minus):
        if abs(phi - ray) < POLE_RADIUS and abs(beta) < 1e-6:
            raise PoleProximityError(
                f"calZ evaluated at phi={phi!r} within {POLE_RADIUS:g} of a jump ray with |beta| < 1e-6",
                -1j * (ray - phi),
            )
    for _, s in _shifts(alpha, phi):
        w = (beta + 1j * s) / 4
        k = round(w.imag / math.pi)
        _check_coth_argument(w, -1j * s + 4j * math.pi * k)


def eval_calZ(beta: complex, phi: float, alpha: float) -> complex:
    """``calZ(beta, phi) = Z(beta + 2 pi i - i phi)`` with pole checks."""
    beta = complex(beta)
    phi = float(phi)
    _check_calZ(beta, phi, alpha)
    return complex(calZ_array(beta, phi, alpha))


def eval_dphi_calZ(beta: complex, phi: float, alpha: float) -> complex:
    """Analytic ``d calZ / d phi`` with pole checks."""
    beta = complex(beta)
    phi = float(phi)
    _check_calZ(beta, phi, alpha)
    return complex(dphi_calZ_array(beta, phi, alpha))


@dataclass(frozen=True)
class KernelDecomposition:
    """``calZ = -4/(beta + i eps_plus) + 4/(beta + i eps_minus) + remainder``."""

    alpha: float
    phi: float
    eps_plus: float
    eps_minus: float
    singular_coeff_plus: complex = -4.0
    singular_coeff_minus: complex = 4.0

    def remainder(self, beta):
        return remainder_array(beta, self.phi, self.alpha)

    def singular(self, beta):
        beta = np.asarray(beta, dtype=complex)
        return (self.singular_coeff_plus / (beta + 1j * self.eps_plus)
                + self.singular_coeff_minus / (beta + 1j * self.eps_minus))

    def reconstruct(self, beta):
        return self.singular(beta) + self.remainder(beta)


def decompose_calZ(phi: float, alpha: float) -> KernelDecomposition:
    return KernelDecomposition(
        alpha=float(alpha),
        phi=float(phi),
        eps_plus=math.pi + alpha - phi,
        eps_minus=math.pi - alpha - phi,
    )


# --------------------------------------------------------------------------
# Stationary kernel
# --------------------------------------------------------------------------


def eval_sommerfeld_kernel(gamma: complex, phi: float, alpha: float) -> complex:
    """``zeta(gamma, phi) = 1/(1 - e^{i(phi - alpha - gamma)/2}) - 1/(1 - e^{i(phi + alpha - gamma)/2})``."""
    gamma = complex(gamma)
    for pole in (phi - alpha, phi + alpha):
        k = round((gamma - pole).real / (4 * math.pi))
        loc = pole + 4 * math.pi * k
        if abs(gamma - loc) < POLE_RADIUS:
            raise PoleProximityError(f"stationary kernel evaluated within {POLE_RADIUS:g} of pole {loc!r}", loc)
    e1 = np.exp(0.5j * (phi - alpha - gamma))
    e2 = np.exp(0.5j * (phi + alpha - gamma))
    return complex(1.0 / (1.0 - e1) - 1.0 / (1.0 - e2))


def sommerfeld_to_U_argument(gamma: complex, phi: float) -> complex:
    """Argument map ``gamma -> i(gamma - phi) + i pi/2`` aligning the poles of ``U`` and ``zeta``."""
    return 1j * (complex(gamma) - phi) + 0.5j * math.pi


def measure_sommerfeld_ratio(gamma: complex, phi: float, alpha: float) -> complex:
    """Ratio ``zeta(gamma, phi) / U(i(gamma - phi) + i pi/2)`` at a regular point."""
    return eval_sommerfeld_kernel(gamma, phi, alpha) / eval_U(sommerfeld_to_U_argument(gamma, phi), alpha)


KernelHandle = Callable[[np.ndarray, float, float], np.ndarray]
