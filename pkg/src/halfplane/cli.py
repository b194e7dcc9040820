"""Command-line entry point: field maps, studies, kernel dumps and verification.

Configuration is a ``key = value`` file (see ``load_config``) optionally
amended by ``--set key=value``.  Recognised keys:

``alpha``, ``omega0``, ``profile.kind``, ``profile.lambda``, ``profile.table_path``
    scenario and incident profile.
``grid.rho_min``, ``grid.rho_max``, ``grid.n_rho``, ``grid.rho_spacing`` (``linear`` | ``log``),
``grid.phi_min``, ``grid.phi_max``, ``grid.n_phi``
    the polar probe grid.
``map.mode`` (``time`` | ``frequency`` | ``stationary``), ``map.components``,
``map.times``, ``map.omegas``, ``map.deriv``
    field-map selection; lists are comma separated, ``omega`` accepts ``a+bj``.
``lap.rho``, ``lap.phi``, ``lap.times``, ``lap.reference``
    limiting-amplitude study.
``kernel.beta_min``, ``kernel.beta_max``, ``kernel.n_beta``
    kernel dump; the φ values come from the grid keys.
``jump.omega``, ``jump.component``, ``jump.deriv``, ``jump.ray``
    jump study; the ρ values come from the grid keys.
``quad.rel_tol``, ``quad.abs_tol``, ``quad.max_subdiv``
    quadrature controls; the matching flags take precedence.
``tol.<check-id>``
    per-check tolerance overrides for ``verify``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import frequency, kernel, sommerfeld, timedomain
from .diagnostics import SUITES, run_suites
from .errors import ConfigurationError, DomainError, HalfPlaneError, JumpLineError, PrecisionError
from .lap import lap_study
from .quadrature import QuadratureSpec
from .scenario import Profile, ScenarioConfig, load_config, parse_number, scenario_from_config

__all__ = ["RunConfig", "main", "build_parser", "cmd_field_map", "cmd_verify", "cmd_lap_study",
           "cmd_kernel_dump", "cmd_jump_study"]

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_PRECISION = 0, 1, 2, 3

STATIONARY_COMPONENTS = ("A", "A_s", "A_i", "A_i0", "A_i1", "A_r", "A_d")


def _fmt(x: float) -> str:
    return "%.17g" % x


def parse_complex(text: str) -> complex:
    """``1+0.5j`` style literals, or a real expression accepted by ``parse_number``."""
    t = text.strip().replace(" ", "")
    try:
        return complex(t)
    except ValueError:
        return complex(parse_number(t))


def _list(text: str, conv):
    return tuple(conv(x) for x in text.split(",") if x.strip())


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, parsed and validated once."""

    scenario: ScenarioConfig
    profile: Profile
    spec: QuadratureSpec
    rhos: tuple
    phis: tuple
    raw: dict = field(default_factory=dict)

    def get(self, key: str, default: str) -> str:
        return self.raw.get(key, default)


def _grid(raw: dict) -> tuple[tuple, tuple]:
    rmin = parse_number(raw.get("grid.rho_min", "0.1"))
    rmax = parse_number(raw.get("grid.rho_max", "10"))
    nr = int(parse_number(raw.get("grid.n_rho", "10")))
    pmin = parse_number(raw.get("grid.phi_min", "0"))
    pmax = parse_number(raw.get("grid.phi_max", "2*pi"))
    npf = int(parse_number(raw.get("grid.n_phi", "13")))
    spacing = raw.get("grid.rho_spacing", "linear")
    if nr < 2 or npf < 2:
        raise ConfigurationError("grid counts must be at least 2")
    if not (0 < rmin < rmax):
        raise ConfigurationError("grid needs 0 < rho_min < rho_max")
    if not (0 <= pmin < pmax <= 2 * math.pi):
        raise ConfigurationError("grid needs 0 <= phi_min < phi_max <= 2 pi")
    if spacing == "log":
        rhos = np.geomspace(rmin, rmax, nr)
    elif spacing == "linear":
        rhos = np.linspace(rmin, rmax, nr)
    else:
        raise ConfigurationError(f"unknown grid.rho_spacing {spacing!r}")
    return tuple(float(r) for r in rhos), tuple(float(p) for p in np.linspace(pmin, pmax, npf))


def load_run_config(args) -> RunConfig:
    raw: dict[str, str] = {}
    base = None
    if args.config:
        raw.update(load_config(args.config))
        base = Path(args.config).parent
    for item in args.set or ():
        if "=" not in item:
            raise ConfigurationError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        raw[k.strip()] = v.strip()
    scenario, profile = scenario_from_config(raw, base)
    rel = args.rel_tol if args.rel_tol is not None else parse_number(raw.get("quad.rel_tol", "1e-10"))
    abs_ = args.abs_tol if args.abs_tol is not None else parse_number(raw.get("quad.abs_tol", "1e-14"))
    msub = args.max_subdiv if args.max_subdiv is not None else int(parse_number(raw.get("quad.max_subdiv", "20000")))
    if not (rel > 0 and abs_ > 0 and msub >= 1):
        raise ConfigurationError("quadrature tolerances must be positive")
    spec = QuadratureSpec(rel_tol=rel, abs_tol=abs_, max_subdivisions=msub)
    rhos, phis = _grid(raw)
    return RunConfig(scenario, profile, spec, rhos, phis, raw)


def _workers(threads: int) -> int:
    return (os.cpu_count() or 1) if threads == 0 else max(1, threads)


def _pmap(fn, tasks, threads: int):
    """Ordered map; results do not depend on the worker count."""
    n = _workers(threads)
    if n == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, tasks))


def _write_csv(out, header, rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    _emit(out, buf.getvalue())


def _emit(out, text: str) -> None:
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# --------------------------------------------------------------------------
# field-map
# --------------------------------------------------------------------------


def _both_sides(fn):
    """Evaluate with ``side = 0``; on a jump ray fall back to the mean of both sides."""
    try:
        return complex(fn(0))
    except JumpLineError:
        return 0.5 * (complex(fn(1)) + complex(fn(-1)))


def _map_rows(task):
    mode, sc, pr, spec, rho, phis, params, comps, deriv = task
    rows = []
    for phi in phis:
        for prm in params:
            for comp in comps:
                if mode == "time":
                    v = _both_sides(lambda s: timedomain.evaluate(comp, sc, pr, (rho, phi), prm, spec, s).value)
                    rows.append((rho, phi, prm, comp, v.real, v.imag))
                elif mode == "frequency":
                    f = frequency.FrequencyField(sc, pr, prm, comp, deriv, spec)
                    v = _both_sides(lambda s: f(rho, phi, s))
                    rows.append((rho, phi, prm.real, prm.imag, comp, v.real, v.imag))
                else:
                    v = sommerfeld.StationaryAmplitude(sc, spec).evaluate(comp, (rho, phi))
                    rows.append((rho, phi, sc.omega0, comp, v.real, v.imag))
    return rows


def cmd_field_map(cfg: RunConfig, out=None, threads: int = 1) -> None:
    mode = cfg.get("map.mode", "stationary")
    if mode == "time":
        comps = _list(cfg.get("map.components", "total"), lambda c: timedomain.Component(c.strip()).value)
        params = _list(cfg.get("map.times", "5"), parse_number)
        header = ["rho", "phi", "t", "component", "re", "im"]
    elif mode == "frequency":
        comps = _list(cfg.get("map.components", "scattered"), lambda c: timedomain.Component(c.strip()).value)
        params = _list(cfg.get("map.omegas", "1+0.5j"), parse_complex)
        header = ["rho", "phi", "omega_re", "omega_im", "component", "re", "im"]
    elif mode == "stationary":
        comps = _list(cfg.get("map.components", "A"), str.strip)
        bad = [c for c in comps if c not in STATIONARY_COMPONENTS]
        if bad:
            raise ConfigurationError(f"unknown amplitude components {bad}; choose from {STATIONARY_COMPONENTS}")
        params = (cfg.scenario.omega0,)
        header = ["rho", "phi", "omega", "component", "re", "im"]
    else:
        raise ConfigurationError(f"unknown map.mode {mode!r}")
    deriv = cfg.get("map.deriv", "")
    if deriv not in frequency.DERIVS:
        raise ConfigurationError(f"unknown map.deriv {deriv!r}")
    tasks = [(mode, cfg.scenario, cfg.profile, cfg.spec, rho, cfg.phis, params, comps, deriv) for rho in cfg.rhos]
    rows = [r for chunk in _pmap(_map_rows, tasks, threads) for r in chunk]
    _write_csv(out, header, rows)


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def cmd_verify(cfg: RunConfig, suites, out=None, threads: int = 1) -> int:
    suites = list(suites) or sorted(SUITES)
    tolerances = {k[4:]: parse_number(v) for k, v in cfg.raw.items() if k.startswith("tol.")}
    reports = run_suites(suites, cfg.scenario, cfg.profile, cfg.spec, tolerances, threads=_workers(threads))
    ok = all(r.passed for r in reports)
    doc = {
        "scenario": {"alpha": cfg.scenario.alpha, "omega0": cfg.scenario.omega0, "profile": cfg.profile.kind},
        "suites": sorted(set(suites)),
        "pass": ok,
        "reports": [r.to_dict() for r in reports],
    }
    _emit(out, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    for r in reports:
        if not r.passed:
            print(f"FAIL {r.check_id}: measured {r.measured!r} vs {r.bound_or_target!r}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# studies
# --------------------------------------------------------------------------


def cmd_lap_study(cfg: RunConfig, out=None) -> None:
    point = (parse_number(cfg.get("lap.rho", "1")), parse_number(cfg.get("lap.phi", "pi")))
    times = _list(cfg.get("lap.times", "10,100,1000"), parse_number)
    rep = lap_study(cfg.scenario, cfg.profile, point, times, cfg.spec, cfg.get("lap.reference", "fresnel"))
    rows = [(t, et, es) for t, et, es in zip(rep.times, rep.errors_total, rep.errors_scattered)]
    _write_csv(out, ["t", "err_total", "err_scattered"], rows)


def cmd_kernel_dump(cfg: RunConfig, out=None) -> None:
    bmin = parse_number(cfg.get("kernel.beta_min", "-10"))
    bmax = parse_number(cfg.get("kernel.beta_max", "10"))
    nb = int(parse_number(cfg.get("kernel.n_beta", "201")))
    if nb < 2 or not bmin < bmax:
        raise ConfigurationError("kernel grid needs n_beta >= 2 and beta_min < beta_max")
    betas = np.linspace(bmin, bmax, nb)
    rows = []
    with np.errstate(divide="ignore", invalid="ignore"):
        for phi in cfg.phis:
            z = kernel.calZ_array(betas, phi, cfg.scenario.alpha)
            rows.extend((float(b), phi, float(v.real), float(v.imag)) for b, v in zip(betas, z))
    _write_csv(out, ["beta", "phi", "re", "im"], rows)


def cmd_jump_study(cfg: RunConfig, out=None) -> None:
    omega = parse_complex(cfg.get("jump.omega", "1+1j"))
    comp = cfg.get("jump.component", "reflected")
    deriv = cfg.get("jump.deriv", "")
    at = cfg.get("jump.ray", "phi_minus")
    if at not in ("phi_minus", "phi_plus"):
        raise ConfigurationError("jump.ray must be phi_minus or phi_plus")
    f = frequency.FrequencyField(cfg.scenario, cfg.profile, omega, comp, deriv, cfg.spec)
    g = complex(cfg.profile.fhat(omega - cfg.scenario.omega0))
    rows = []
    for rho in cfg.rhos:
        est = frequency.jump_of(f, rho, at)
        ref = g * np.exp(1j * omega * rho)
        rows.append((rho, est.value.real, est.value.imag, est.error, float(ref.real), float(ref.imag)))
    _write_csv(out, ["rho", "jump_re", "jump_im", "extrapolation_error", "plane_wave_re", "plane_wave_im"], rows)


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value configuration file")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one configuration key")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--rel-tol", type=float, help="relative quadrature tolerance")
    common.add_argument("--abs-tol", type=float, help="absolute quadrature tolerance")
    common.add_argument("--max-subdiv", type=int, help="cap on adaptive subintervals")
    common.add_argument("--threads", type=int, default=1, metavar="N", help="worker processes (0 = auto)")

    p = argparse.ArgumentParser(prog="halfplane", description="Time-dependent half-plane diffraction.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("field-map", parents=[common], help="CSV map of a field on a polar grid")
    v = sub.add_parser("verify", parents=[common], help="run verification suites, JSON report")
    v.add_argument("--suite", action="append", default=[], choices=sorted(SUITES), metavar="NAME",
                   help="suite to run (repeatable; default all)")
    sub.add_parser("lap-study", parents=[common], help="limiting-amplitude errors as CSV")
    sub.add_parser("kernel-dump", parents=[common], help="kernel values on a (beta, phi) grid")
    sub.add_parser("jump-study", parents=[common], help="extrapolated jumps across a ray versus rho")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_run_config(args)
        if args.command == "field-map":
            cmd_field_map(cfg, args.out, args.threads)
        elif args.command == "verify":
            return cmd_verify(cfg, args.suite, args.out, args.threads)
        elif args.command == "lap-study":
            cmd_lap_study(cfg, args.out)
        elif args.command == "kernel-dump":
            cmd_kernel_dump(cfg, args.out)
        elif args.command == "jump-study":
            cmd_jump_study(cfg, args.out)
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ConfigurationError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HalfPlaneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
