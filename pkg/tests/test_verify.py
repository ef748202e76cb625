import json

import pytest

from utils.utils import json_dumps
from virlab import verify
from virlab.errors import UnknownSuiteError


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        verify.run_suite("everything")


@pytest.mark.parametrize("suite", ["partition", "recurrence", "routes", "bounds"])
def test_suites_pass(suite):
    report = verify.run_suite(suite)
    assert report.passed, [c.to_dict() for c in report.failures]
    assert report.checks


def test_tables_suite_with_small_live_range():
    report = verify.verify_tables(rh_live_max_n=5)
    assert report.passed, [c.to_dict() for c in report.failures]
    tables = {c.name.split()[1] for c in report.checks}
    assert tables == {"1", "2", "3", "4", "5", "6"}


def test_rh_expansion_suite_up_to_six():
    report = verify.verify_rh_expansion(count_max_n=6)
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["tables", "rh-expansion"])
def test_full_suites(suite):
    assert verify.run_suite(suite).passed


def test_report_is_json_serializable():
    report = verify.run_suite("routes")
    payload = json.loads(json_dumps(report.to_dict()))
    assert payload["suite"] == "routes"
    assert payload["passed"] is True
    assert payload["mismatches"] == 0
    assert {"name", "expected", "actual", "passed"} <= set(payload["results"][0])


def test_failed_check_is_reported():
    report = verify.SuiteReport("demo")
    report.add("ok", 1, 1)
    report.add("off by one", 2, 3)
    assert not report.passed
    assert [c.name for c in report.failures] == ["off by one"]
