import json
import math

import numpy as np
import pytest

from powerforce.constants import Constants
from powerforce.grid import GridSpec
from powerforce.verify import (
    SUITES,
    TIME_GRID,
    CheckResult,
    VerificationReport,
    VerifyConfig,
    random_band_limited,
    random_packet,
    run_all,
    time_derivative_residual,
)
from powerforce.diffops import gaussian_packet


def test_check_result_passed_is_computed():
    assert CheckResult("a", "x", 1e-9, 1e-8).passed
    assert not CheckResult("a", "x", 1e-7, 1e-8).passed
    assert not CheckResult("a", "x", float("nan"), 1.0).passed


def test_empty_suite_list():
    rep = run_all(VerifyConfig(suites=()))
    assert rep.summary == {"total": 0, "passed": 0, "failed": 0, "seed": 42}
    doc = json.loads(rep.to_json())
    assert set(doc) == {"constants", "checks", "summary"}
    assert doc["checks"] == []


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_all(VerifyConfig(suites=("nope",)))


@pytest.mark.parametrize("name", ["constants", "grid", "angular", "relativity", "fock", "uncertainty",
                                  "time_power", "ehrenfest"])
def test_suite_passes(name):
    rep = run_all(VerifyConfig(suites=(name,), events=200, samples=200, superpositions=10))
    assert rep.summary["total"] > 0
    assert rep.all_passed, [c.as_dict() for c in rep.failures()]


def test_quanta_suite_passes():
    rep = run_all(VerifyConfig(suites=("quanta",), events=500))
    assert rep.all_passed, [c.as_dict() for c in rep.failures()]


def test_diffops_suite_passes():
    rep = run_all(VerifyConfig(suites=("diffops",)))
    assert rep.all_passed, [c.as_dict() for c in rep.failures()]


def test_coarse_grid_degrades_finite_differences_only():
    rep = run_all(VerifyConfig(suites=("diffops",), points=8))
    failed = {c.check_id for c in rep.failures()}
    assert failed
    assert all(".fd" in cid for cid in failed)
    spectral = [c for c in rep.checks if "plane_wave" in c.check_id and ".fd" not in c.check_id]
    assert spectral and all(c.passed for c in spectral)


def test_report_is_sorted_and_deterministic():
    cfg = VerifyConfig(suites=("fock", "constants", "relativity"), samples=50)
    a, b = run_all(cfg).to_json(), run_all(cfg).to_json()
    assert a == b
    ids = [c["check_id"] for c in json.loads(a)["checks"]]
    assert ids == sorted(ids)


def test_check_records_carry_metadata():
    rep = run_all(VerifyConfig(suites=("constants",), epsilons=(0.37,)))
    (check,) = rep.checks
    d = check.as_dict()
    assert set(d) == {"check_id", "anchor", "residual", "tolerance", "passed", "metadata"}
    assert d["metadata"]["epsilon"] == 0.37


def test_failure_is_recorded_not_raised():
    rep = VerificationReport(Constants(), [CheckResult("b", "x", 1.0, 0.0), CheckResult("a", "x", 0.0, 0.0)], 1)
    assert [c.check_id for c in rep.checks] == ["a", "b"]
    assert rep.summary["failed"] == 1 and not rep.all_passed
    assert "FAIL" in rep.to_table()


def test_time_residual_second_order():
    psi = gaussian_packet(-10.0, 0.3, 3.0, TIME_GRID)
    c = Constants()
    r1 = time_derivative_residual(psi, 1.0, 0.2, 1.0, c)
    r2 = time_derivative_residual(psi, 1.0, 0.1, 1.0, c)
    assert r1 / r2 == pytest.approx(4.0, rel=0.05)


def test_band_limited_state_is_normalized(rng):
    g = GridSpec(3, 8, 2.0)
    psi = random_band_limited(g, rng)
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)


def test_random_packet_localized(rng):
    g = GridSpec(1, 256, 32.0)
    for _ in range(20):
        random_packet(g, rng)


def test_suite_names():
    assert list(SUITES) == ["constants", "grid", "diffops", "angular", "quanta", "relativity", "fock",
                            "uncertainty", "time_power", "ehrenfest"]
