import pytest

from verification.invariant_checks import SUITES, CheckResult, SuiteReport, run_suite


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_passes_on_a_small_corpus(suite):
    report = run_suite(suite, seed=3, samples=4)
    assert report.passed, [check.to_dict() for check in report.checks if not check.passed]


def test_zero_samples_pass_vacuously():
    report = run_suite("associativity", seed=0, samples=0)
    assert report.passed
    assert [check.checked for check in report.checks] == [0, 0]


def test_wrong_suite_name():
    with pytest.raises(KeyError, match="Wrong Suite Name"):
        run_suite("no-such-suite", seed=0, samples=1)


def test_check_result():
    result = CheckResult("sample")
    result.expect(True, "fine")
    assert result.passed
    result.expect(False, "broken")

    assert not result.passed
    assert result.to_dict() == {"name": "sample", "passed": False, "checked": 2, "failures": ["broken"]}


def test_suite_report():
    report = SuiteReport("hw", 1, 2, [CheckResult("a", checked=1), CheckResult("b", checked=1, failures=["x"])])

    assert not report.passed
    data = report.to_dict()
    assert (data["suite"], data["seed"], data["samples"], data["passed"]) == ("hw", 1, 2, False)
    assert [check["name"] for check in data["checks"]] == ["a", "b"]


@pytest.mark.slow
@pytest.mark.parametrize("suite, samples", [("associativity", 100), ("homomorphism", 50), ("jump-closure", 100),
                                            ("concurrency", 50)])
def test_full_size_corpus(suite, samples):
    report = run_suite(suite, seed=0, samples=samples)
    assert report.passed, [check.to_dict() for check in report.checks if not check.passed]
