from __future__ import annotations

import math

import pytest

from twoproj_cli.config import RunConfig
from twoproj_cli.errors import ConfigurationError, DomainError
from twoproj_cli.verify import CHECK_GROUPS, CheckResult, VerifyReport, run_suite, suite


def test_check_result_status():
    assert CheckResult("a", 0.5, "<=", 1.0).passed
    assert CheckResult("b", 2.0, ">", 1.0).status == "pass"
    assert CheckResult("c", 2.0, "<=", 1.0).status == "fail"
    assert not CheckResult("d", math.nan, "<=", 1.0).passed


def test_report_rows():
    report = VerifyReport((CheckResult("a", 0.5, "<=", 1.0), CheckResult("b", 2.0, "<=", 1.0, "x")))
    assert not report.all_passed
    assert report.failed == ["b"]
    assert report.rows()[1] == ["b", "fail", 2.0, "<=", 1.0, "x"]


@pytest.mark.parametrize("group", ["algebra", "toeplitz", "cone", "asymptotics", "cli"])
def test_fast_groups_pass(group):
    report = run_suite(RunConfig(), [group])
    assert report.checks
    assert report.all_passed, report.failed


def test_groups_run_in_requested_order():
    seen: list[str] = []
    report = run_suite(RunConfig(), ["toeplitz", "algebra"], on_result=lambda r: seen.append(r.name))
    assert seen == [c.name for c in report.checks]
    assert seen[0].startswith("toeplitz.")
    assert seen[-1].startswith("algebra.")


def test_unknown_group_is_rejected():
    with pytest.raises(ConfigurationError):
        run_suite(RunConfig(), ["algebra", "nope"])


def test_group_error_becomes_failed_check(monkeypatch):
    def broken(config):
        raise DomainError("out of range")

    monkeypatch.setitem(suite.CHECK_GROUPS, "algebra", broken)
    report = run_suite(RunConfig(), ["algebra"])
    (check,) = report.checks
    assert check.name == "algebra.error"
    assert check.status == "fail"
    assert check.detail == "out of range"


def test_full_suite_passes():
    report = run_suite(RunConfig())
    assert {c.name.split(".")[0] for c in report.checks} == set(CHECK_GROUPS)
    assert report.all_passed, report.failed
