import json
import math

import numpy as np
import pytest

from halfplane.diagnostics import SUITES, decay_rate_bound, fit_decay_rate, run_suite, run_suites
from halfplane.errors import ConfigurationError
from halfplane.reports import DiagnosticReport

FAST = ["kernel-decay", "kernel-decomposition", "causality", "boundary", "jumps", "lap", "sommerfeld-oracle",
        "helmholtz", "decay-fits", "green-identity"]


def test_suite_registry_is_complete():
    assert set(SUITES) == set(FAST) | {"transform-consistency"}


def test_unknown_suite_is_a_usage_error(scenario, heaviside):
    with pytest.raises(ConfigurationError):
        run_suite("everything", scenario, heaviside)
    with pytest.raises(ConfigurationError):
        run_suites(["jumps", "everything"], scenario, heaviside)


@pytest.mark.parametrize("suite", FAST)
def test_fast_suites_pass_on_default_scenario(suite, scenario, heaviside):
    reports = run_suite(suite, scenario, heaviside)
    assert reports
    assert [r.check_id for r in reports] == sorted(r.check_id for r in reports)
    failed = [r.check_id for r in reports if not r.passed]
    assert not failed


def test_causality_reports_exact_zero(scenario, heaviside):
    for r in run_suite("causality", scenario, heaviside):
        assert r.measured == 0 and r.tolerance == 0


def test_jumps_suite_contains_cancellation_check(scenario, heaviside):
    ids = [r.check_id for r in run_suite("jumps", scenario, heaviside)]
    assert "jumps.diffracted-cancels-reflected" in ids


def test_reports_are_deterministic(scenario, heaviside):
    a = [r.to_json() for r in run_suite("sommerfeld-oracle", scenario, heaviside)]
    b = [r.to_json() for r in run_suite("sommerfeld-oracle", scenario, heaviside)]
    assert a == b


def test_worker_count_does_not_change_reports(scenario, heaviside):
    one = run_suites(["causality", "jumps"], scenario, heaviside, threads=1)
    two = run_suites(["causality", "jumps"], scenario, heaviside, threads=2)
    assert [r.to_json() for r in one] == [r.to_json() for r in two]


def test_tolerance_override(scenario, heaviside):
    reports = run_suite("causality", scenario, heaviside, tolerances={"causality.diffracted": -1.0})
    status = {r.check_id: r.passed for r in reports}
    assert status == {"causality.diffracted": False, "causality.scattered": True}


@pytest.mark.parametrize(
    "mode,measured,bound,tol,expected",
    [
        ("target", 1.0, 1.0 + 1e-9, 1e-8, True),
        ("target", 1j, 0.0, 0.5, False),
        ("upper", 0.3, 0.2, 0.1, True),
        ("upper", 0.31, 0.2, 0.1, False),
        ("lower", 0.95, 1.0, 0.0, False),
        ("lower", float("nan"), 0.0, 1.0, False),
    ],
)
def test_report_pass_is_recomputable(mode, measured, bound, tol, expected):
    r = DiagnosticReport("x", {}, measured, bound, tol, "trivial", mode)
    assert r.passed is expected
    assert r.to_dict()["pass"] is expected


def test_report_serialisation():
    r = DiagnosticReport("a.b", {"omega": 1 + 2j, "n": np.int64(3)}, 1 - 1j, 0.0, 1.0, "paper-bound", "target",
                         {"inf": float("inf")})
    d = json.loads(r.to_json())
    assert d["value"] == {"re": 1.0, "im": -1.0}
    assert d["params"]["omega"] == {"re": 1.0, "im": 2.0} and d["params"]["n"] == 3
    assert d["detail"]["inf"] == "inf"
    with pytest.raises(ValueError):
        DiagnosticReport("x", provenance="guess")


def test_decay_rate_bound(scenario):
    assert decay_rate_bound(scenario, 1 + 0.5j, math.pi) == 0.5
    assert decay_rate_bound(scenario, 1 + 0.5j, math.pi / 6) == pytest.approx(0.5 * math.cos(math.pi / 6))


def test_fit_decay_rate_recovers_exponent():
    rho = np.geomspace(0.5, 30, 16)
    v = 3.0 * np.exp(-0.7 * rho) * (1 + rho**-0.5)
    assert fit_decay_rate(rho, v) == pytest.approx(0.7)
