"""Physical configuration, field points and causal profile functions.

Geometry: the screen is the ray ``{x2 = 0, x1 > 0}``; a point is given in
polar form ``(rho, phi)`` with ``phi`` in ``[0, 2*pi]`` so that the two faces
of the screen are ``phi = 0`` (upper) and ``phi = 2*pi`` (lower).
"""

from __future__ import annotations

import ast
import csv
import math
import operator
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import gk
from .errors import ConfigurationError, DomainError, PrecisionError

__all__ = [
    "ScenarioConfig",
    "FieldPoint",
    "Profile",
    "HeavisideProfile",
    "SmoothRampProfile",
    "SampledProfile",
    "make_scenario",
    "make_profile",
    "fourier_laplace",
    "load_config",
    "parse_number",
]


@dataclass(frozen=True)
class ScenarioConfig:
    """Incidence angle ``alpha`` and carrier frequency ``omega0``.

    The derived angles are the shadow boundary ``phi_plus = pi + alpha`` and
    the reflection boundary ``phi_minus = pi - alpha``; ``n`` is the
    propagation direction of the incident wave and ``n_bar`` its mirror image.
    """

    alpha: float
    omega0: float
    phi_plus: float = field(init=False)
    phi_minus: float = field(init=False)
    n: tuple[float, float] = field(init=False)
    n_bar: tuple[float, float] = field(init=False)

    def __post_init__(self):
        alpha = float(self.alpha)
        omega0 = float(self.omega0)
        if not (math.pi / 2 < alpha < math.pi):
            raise ConfigurationError(
                f"alpha={alpha!r} violates pi/2 < alpha < pi"
            )
        if not (omega0 > 0 and math.isfinite(omega0)):
            raise ConfigurationError(f"omega0={omega0!r} violates omega0 > 0")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "omega0", omega0)
        object.__setattr__(self, "phi_plus", math.pi + alpha)
        object.__setattr__(self, "phi_minus", math.pi - alpha)
        n = (math.cos(math.pi + alpha), math.sin(math.pi + alpha))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "n_bar", (n[0], -n[1]))

    def n_dot_x(self, rho, phi):
        """``n . x`` in polar form, ``-rho cos(phi - alpha)``."""
        return -rho * np.cos(phi - self.alpha)

    def nbar_dot_x(self, rho, phi):
        """``n_bar . x`` in polar form, ``-rho cos(phi + alpha)``."""
        return -rho * np.cos(phi + self.alpha)


def make_scenario(alpha: float, omega0: float) -> ScenarioConfig:
    return ScenarioConfig(alpha, omega0)


@dataclass(frozen=True)
class FieldPoint:
    rho: float
    phi: float

    def __post_init__(self):
        if not (self.rho >= 0):
            raise DomainError(f"rho={self.rho!r} must be >= 0")
        if not (0.0 <= self.phi <= 2 * math.pi):
            raise DomainError(f"phi={self.phi!r} must lie in [0, 2*pi]")

    @property
    def x(self) -> tuple[float, float]:
        return (self.rho * math.cos(self.phi), self.rho * math.sin(self.phi))

    @property
    def on_screen(self) -> bool:
        return self.phi == 0.0 or self.phi == 2 * math.pi


# --------------------------------------------------------------------------
# Profiles
# --------------------------------------------------------------------------


class Profile:
    """Causal envelope ``f`` with ``f(s) = 0`` for ``s < 0`` and ``f -> 1``.

    Subclasses implement :meth:`f` (vectorised) and, when available, the
    closed-form transform :meth:`_fhat_exact`.
    """

    kind: str = "abstract"
    #: exponent p in sup (1+|s|)^p |f(s)| < inf
    p: float = 0.0

    @property
    def horizon(self) -> float:
        """Time after which ``|f(s) - 1| < 0.01``."""
        raise NotImplementedError

    def f(self, s):
        raise NotImplementedError

    def F(self, s, omega0: float):
        """Modulated profile ``f(s) exp(-i omega0 s)``."""
        s = np.asarray(s, dtype=float)
        return self.f(s) * np.exp(-1j * omega0 * s)

    def fhat(self, omega: complex) -> complex:
        return fourier_laplace(self, omega)

    def _fhat_exact(self, omega: complex) -> complex | None:
        return None

    def kinks(self) -> np.ndarray:
        """Points where ``f`` is not smooth (besides ``s = 0``)."""
        return np.empty(0)


@dataclass(frozen=True)
class HeavisideProfile(Profile):
    kind = "heaviside"
    p = 0.0

    @property
    def horizon(self) -> float:
        return 0.0

    def f(self, s):
        s = np.asarray(s, dtype=float)
        return np.where(s >= 0, 1.0, 0.0)

    def _fhat_exact(self, omega):
        return 1j / omega


@dataclass(frozen=True)
class SmoothRampProfile(Profile):
    """``f(s) = 1 - exp(-lam s)`` for ``s >= 0``."""

    lam: float = 1.0
    kind = "smooth-ramp"
    p = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ConfigurationError(f"smooth-ramp rate lambda={self.lam!r} must be > 0")

    @property
    def horizon(self) -> float:
        return math.log(100.0) / self.lam

    def f(self, s):
        s = np.asarray(s, dtype=float)
        return np.where(s >= 0, -np.expm1(-self.lam * np.maximum(s, 0.0)), 0.0)

    def _fhat_exact(self, omega):
        return 1j / omega - 1j / (omega + 1j * self.lam)


@dataclass(frozen=True, eq=False)
class SampledProfile(Profile):
    """Tabulated profile, linearly interpolated, held constant past the table."""

    s: np.ndarray
    values: np.ndarray
    kind = "sampled"
    p = 0.0

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if s.ndim != 1 or s.shape != v.shape or s.size < 2:
            raise ConfigurationError("sampled profile needs matching 1-D s and f columns")
        if np.any(np.diff(s) <= 0):
            raise ConfigurationError("sampled profile s column must be strictly increasing")
        if s[0] < 0:
            if np.any(v[s < 0] != 0):
                raise ConfigurationError("sampled profile must vanish for s < 0")
        if abs(v[-1] - 1) >= 0.01:
            raise ConfigurationError(
                f"sampled profile must settle to 1 (last value {v[-1]!r})"
            )
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "values", v)

    @property
    def horizon(self) -> float:
        bad = np.nonzero(np.abs(self.values - 1) >= 0.01)[0]
        return float(self.s[bad[-1] + 1]) if bad.size else max(float(self.s[0]), 0.0)

    @property
    def end(self) -> float:
        return float(self.s[-1])

    def f(self, s):
        s = np.asarray(s, dtype=float)
        re = np.interp(s, self.s, self.values.real)
        im = np.interp(s, self.s, self.values.imag)
        out = re + 1j * im
        if self.s[0] > 0:
            # ramp from 0 at s = 0 up to the first tabulated value
            head = (s >= 0) & (s < self.s[0])
            out = np.where(head, self.values[0] * s / self.s[0], out)
        return np.where(s >= 0, out, 0.0)

    def kinks(self):
        return self.s[self.s > 0]


def make_profile(kind: str, lam: float | None = None, table_path: str | Path | None = None) -> Profile:
    kind = kind.strip().lower()
    if kind == "heaviside":
        return HeavisideProfile()
    if kind in ("smooth-ramp", "smooth_ramp", "ramp"):
        return SmoothRampProfile(1.0 if lam is None else float(lam))
    if kind == "sampled":
        if table_path is None:
            raise ConfigurationError("sampled profile requires profile.table_path")
        return _read_profile_table(Path(table_path))
    raise ConfigurationError(f"unknown profile kind {kind!r}")


def _read_profile_table(path: Path) -> SampledProfile:
    rows = []
    try:
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                try:
                    rows.append([float(c) for c in row])
                except ValueError:
                    if rows:
                        raise
                    continue  # header line
    except OSError as exc:
        raise ConfigurationError(f"cannot read profile table {path}: {exc}") from exc
    if not rows:
        raise ConfigurationError(f"profile table {path} is empty")
    data = np.array([r + [0.0] * (3 - len(r)) for r in rows])
    return SampledProfile(data[:, 0], data[:, 1] + 1j * data[:, 2])


def fourier_laplace(
    profile: Profile,
    omega: complex,
    T_max: float | None = None,
    tol: float = 1e-10,
    numeric: bool = False,
) -> complex:
    """Fourier-Laplace transform ``int_0^inf exp(i omega t) f(t) dt``.

    Closed-form profiles return the analytic value unless ``numeric`` is set.
    The numeric route integrates up to ``T_max`` (default ``50/Im omega``) and
    refuses to answer if the bound ``sup|f| exp(-Im(omega) T)/Im(omega)`` on
    the discarded tail exceeds ``tol``.
    """
    omega = complex(omega)
    if not omega.imag > 0:
        raise DomainError(f"Fourier-Laplace transform needs Im(omega) > 0, got {omega!r}")
    if not numeric:
        exact = profile._fhat_exact(omega)
        if exact is not None:
            return complex(exact)
    w2 = omega.imag
    T = 50.0 / w2 if T_max is None else float(T_max)
    if isinstance(profile, SampledProfile):
        T = max(T, profile.end)
        sup = float(np.max(np.abs(profile.values)))
    else:
        sup = 1.0
    tail = sup * math.exp(-w2 * T) / w2
    if tail > tol:
        raise PrecisionError(
            f"tail bound {tail:.3g} at T_max={T:.4g} exceeds tol={tol:.3g}",
            achieved=tail,
        )
    return numeric_transform(profile.f, omega, 0.0, T, kinks=profile.kinks(), rel_tol=min(tol, 1e-10))


def numeric_transform(h, omega: complex, t0: float, T: float, kinks=(), rel_tol=1e-10, abs_tol=1e-15,
                      sqrt_edge: bool = False) -> complex:
    """``int_{t0}^{T} exp(i omega t) h(t) dt`` by adaptive quadrature.

    ``sqrt_edge`` substitutes ``t = t0 + u^2`` to absorb a square-root onset
    at ``t0`` (wavefront arrivals).  ``h`` must accept a float array.
    """
    omega = complex(omega)
    step = math.pi / max(abs(omega.real), 1.0)
    kinks = [k for k in np.asarray(kinks, dtype=float) if t0 < k < T]
    if sqrt_edge:
        brk = np.sqrt(np.array(sorted(set(np.arange(t0, T, step).tolist() + kinks + [T]))) - t0)
        brk = np.unique(np.concatenate([[0.0], brk]))

        def g(u):
            t = t0 + u * u
            return 2.0 * u * np.exp(1j * omega * t) * h(t)

        return gk.integrate(g, brk, rel_tol=rel_tol, abs_tol=abs_tol, max_subdivisions=200000).value
    brk = np.unique(np.concatenate([np.arange(t0, T, step), kinks, [T]]))
    return gk.integrate(lambda t: np.exp(1j * omega * t) * h(t), brk, rel_tol=rel_tol,
                        abs_tol=abs_tol, max_subdivisions=200000).value


# --------------------------------------------------------------------------
# Plain-text configuration
# --------------------------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_NAMES = {"pi": math.pi, "e": math.e}


def parse_number(text: str) -> float:
    """Parse a float or a small arithmetic expression such as ``2*pi/3``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        raise ValueError(text)

    try:
        return float(ev(ast.parse(text.strip(), mode="eval")))
    except (SyntaxError, ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"cannot parse number {text!r}") from exc


def load_config(path: str | Path) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def scenario_from_config(cfg: dict[str, str], base: Path | None = None) -> tuple[ScenarioConfig, Profile]:
    alpha = parse_number(cfg.get("alpha", "2*pi/3"))
    omega0 = parse_number(cfg.get("omega0", "1"))
    scenario = make_scenario(alpha, omega0)
    lam = cfg.get("profile.lambda")
    table = cfg.get("profile.table_path")
    if table is not None and base is not None and not Path(table).is_absolute():
        table = str(base / table)
    profile = make_profile(
        cfg.get("profile.kind", "heaviside"),
        lam=None if lam is None else parse_number(lam),
        table_path=table,
    )
    return scenario, profile
