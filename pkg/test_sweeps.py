import pytest

from backend.src.errors import InvalidInputError
from backend.src.services import sweeps
from backend.src.services.sweeps import FAIL, PASS, SKIP, SUITES, run_case, run_suite


def _boom():
    raise ArithmeticError("broken")


def test_every_suite_is_registered():
    assert set(SUITES) == {"ring", "qpoch", "gf", "lgv", "prop1", "dodgson", "submatrix", "recursion", "krat", "endtoend"}


@pytest.mark.parametrize(
    "suite, max_m, max_k",
    [("ring", 1, 0), ("qpoch", 3, 2), ("gf", 1, 1), ("lgv", 2, 1), ("dodgson", 3, 1), ("submatrix", 3, 2), ("recursion", 3, 1)],
)
def test_small_suites_pass(suite, max_m, max_k):
    report = run_suite(suite, max_m=max_m, max_k=max_k, seed=5, workers=1)
    assert report.ok, report.first_failure
    assert report.cases == report.passed + report.skipped + report.failed


def test_case_lists_are_deterministic():
    for name, build in SUITES.items():
        if name in ("endtoend", "krat"):
            continue
        first = [(label, checker, args) for label, checker, args in build(2, 1, 9)]
        assert first == build(2, 1, 9)


def test_prop1_suite_size():
    cases = sweeps.prop1_cases(3, 2, seed=1)
    assert sum(1 for label, _, _ in cases if label.startswith("sample")) == sweeps.PROP1_SAMPLES
    assert cases[0][2] == (0, (0, 1))


def test_skipped_recursion_cases():
    assert sweeps.check_recursion(0, (0, 2, 3))[0] == SKIP
    assert sweeps.check_recursion(0, (-1, 0, 1)) == (PASS, "")
    # the product-side step has no divisor to skip on
    assert sweeps.check_induction_step(0, (0, 2, 3)) == (PASS, "")


def test_run_case_reports_exceptions():
    label, status, detail = run_case(("boom", _boom, ()))
    assert (label, status) == ("boom", FAIL)
    assert detail == "ArithmeticError: broken"


def test_first_failure_is_recorded(monkeypatch):
    def failing_cases(max_m, max_k, seed):
        return [("ok", sweeps.check_ring, (1,)), ("bad", _boom, ()), ("worse", _boom, ())]

    monkeypatch.setitem(SUITES, "ring", failing_cases)
    report = run_suite("ring", workers=1)
    assert (report.passed, report.failed) == (1, 2)
    assert report.first_failure.case == "bad"
    assert not report.ok


def test_worker_pool_gives_the_same_report():
    serial = run_suite("qpoch", max_m=2, max_k=1, seed=3, workers=1)
    pooled = run_suite("qpoch", max_m=2, max_k=1, seed=3, workers=2)
    assert serial == pooled


def test_invalid_suite_and_bounds():
    with pytest.raises(InvalidInputError):
        run_suite("everything")
    with pytest.raises(InvalidInputError):
        run_suite("ring", max_m=0)


def test_qpoch_suite_reports_poles_instead_of_skipping():
    report = run_suite("qpoch", max_m=5, max_k=4, seed=1, workers=1)
    assert report.ok, report.first_failure
    assert report.skipped == 0
    labels = [label for label, _, _ in sweeps.qpoch_cases(5, 4, 1)]
    assert sum(1 for label in labels if label.startswith("pole")) == 10
    assert sum(1 for label in labels if label.startswith("splitting")) == 25


def test_lgv_region_check_covers_the_q4_substitution():
    assert sweeps.check_lgv_region(3, 2, (-4, -1, 2)) == (PASS, "")
