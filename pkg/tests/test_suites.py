"""Verification suite runner: registry, determinism, failure shapes."""
import math

import pytest

from nctheta import suites
from nctheta.errors import PreconditionError, UnsupportedSizeError
from nctheta.suites import SuiteCheck, SuiteReport, run_suite

EXPECTED_SUITES = {
    "forms", "basic-props", "continuity", "holder", "thin-diag", "dwd",
    "product", "abpsi", "gamma2", "sandwich", "compatible", "twirl",
    "classical",
}


def test_registry_names():
    assert set(suites.SUITES) == EXPECTED_SUITES


def test_unknown_suite_lists_names():
    with pytest.raises(PreconditionError, match="available suites"):
        run_suite("no-such-suite")


def test_trials_must_be_positive():
    with pytest.raises(PreconditionError, match="positive"):
        run_suite("forms", trials=0)


def test_blocks_rejected_on_plain_suites():
    with pytest.raises(PreconditionError, match="block layout"):
        run_suite("forms", blocks=((1, 2),))


def test_block_dimension_cap():
    with pytest.raises(UnsupportedSizeError):
        run_suite("dwd", blocks=((3, 3),))
    with pytest.raises(UnsupportedSizeError):
        run_suite("forms", n=9)


def test_twirl_suite_passes_and_reports():
    rep = run_suite("twirl", n=2, trials=1)
    assert isinstance(rep, SuiteReport)
    assert rep.suite == "twirl" and rep.seed == 42 and rep.n == 2
    assert all(c.passed for c in rep.checks)
    lines = rep.to_lines()
    assert lines[0] == "suite=twirl seed=42 n=2 trials=1"
    assert lines[-2].startswith("result=PASS")
    assert lines[-1].startswith("# wall")


def test_payload_is_deterministic_across_runs():
    a = run_suite("basic-props", trials=1, seed=7)
    b = run_suite("basic-props", trials=1, seed=7)
    payload = lambda r: [l for l in r.to_lines() if not l.startswith("#")]
    assert payload(a) == payload(b)


def test_seed_changes_instances_not_format():
    a = run_suite("forms", trials=1, seed=1)
    b = run_suite("forms", trials=1, seed=2)
    assert a.checks[0].claim == b.checks[0].claim
    assert a.checks[0].residual != b.checks[0].residual


def test_block_suites_echo_blocks():
    rep = run_suite("thin-diag", blocks=((1, 2), (2, 1)), trials=1)
    assert rep.blocks == ((1, 2), (2, 1))
    assert "blocks=1x2,2x1" in rep.to_lines()[0]
    # a plain dimension draws a seeded random layout of that total size
    rep2 = run_suite("dwd", n=4, trials=1)
    assert sum(a * b for a, b in rep2.blocks) == 4


def test_check_line_format():
    c = SuiteCheck("some-claim", 2.5e-9, 1e-6)
    assert c.passed
    assert c.line() == "check some-claim residual=+2.500e-09 tol=1.0e-06 pass"
    bad = SuiteCheck("other", math.inf, 1e-6, note="SolverFailure")
    assert not bad.passed
    assert bad.line().endswith("FAIL note=SolverFailure")


def test_failed_checks_flip_the_report():
    rep = SuiteReport("demo", 42, 3, 1,
                      [SuiteCheck("good", 0.0, 1e-6),
                       SuiteCheck("bad", 1.0, 1e-6)])
    lines = rep.to_lines()
    assert lines[-1] == "result=FAIL checks=2 failed=1"
