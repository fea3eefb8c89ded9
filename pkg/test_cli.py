import json
from fractions import Fraction

import pytest

from backend.src.api.cli import main
from backend.src.api.models import SuiteReport
from backend.src.services.exact import LaurentPoly, lp_from_json, lp_to_json
from backend.src.services.render import svg_labels


def _stdout_lines(capsys):
    return capsys.readouterr().out.strip().splitlines()


def test_gf_dp(capsys):
    assert main(["gf", "0", "1", "1", "0", "--method", "dp"]) == 0
    poly = lp_from_json(_stdout_lines(capsys)[0])
    assert poly.as_dict() == {-2: Fraction(1, 2), 0: 1, 2: Fraction(1, 2)}


def test_gf_infeasible_is_zero(capsys):
    assert main(["gf", "0", "0", "0", "5"]) == 0
    assert _stdout_lines(capsys)[0] == '{"var":"q","terms":[]}'


def test_gf_row(capsys):
    assert main(["gf", "1", "0", "3", "0"]) == 0
    poly = lp_from_json(_stdout_lines(capsys)[0])
    assert poly.as_dict() == {e: Fraction(1, 4) for e in (-3, -1, 1, 3)}


def test_gf_closed_prints_the_cross_check(capsys):
    assert main(["gf", "0", "1", "1", "0", "--method", "closed"]) == 0
    lines = _stdout_lines(capsys)
    assert set(json.loads(lines[0])) == {"num", "den"}
    assert json.loads(lines[1]) == {"rf_eq_dp": True}


def test_region_all_routes(capsys):
    assert main(["region", "1", "1", "0", "--all"]) == 0
    expected = LaurentPoly.from_dict({-1: Fraction(1, 2), 1: Fraction(1, 2)})
    assert _stdout_lines(capsys)[0] == lp_to_json(expected)


@pytest.mark.parametrize("command", ["family", "lgv", "closed"])
def test_route_shorthands_agree(command, capsys):
    assert main([command, "2", "0", "0,1"]) == 0
    poly = lp_from_json(_stdout_lines(capsys)[0])
    assert poly.as_dict() == {e: Fraction(1, 4) for e in (-3, -1, 1, 3)}


def test_region_pretty(capsys):
    assert main(["closed", "2", "0", "0,1", "--pretty"]) == 0
    lines = _stdout_lines(capsys)
    assert lines[1] == "1/4 * q^-3 * (1 + q^2 + q^4 + q^6)"
    assert lines[2].startswith("prefactor: ")
    assert lines[3] == "product at q^4: q^-8 * (1 - q^4 - q^8 + q^12)"


def test_vanishing_region(capsys):
    assert main(["region", "2", "0", "1,2", "--all"]) == 0
    assert lp_from_json(_stdout_lines(capsys)[0]).is_zero()


def test_negative_dents_after_separator(capsys):
    assert main(["region", "2", "1", "--all", "--", "-1,0"]) == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["region", "2", "0", "0"],
        ["region", "0", "0", "0"],
        ["region", "2", "0", "1,0"],
        ["region", "2", "-1", "0,1"],
        ["region", "2", "0", "a,b"],
        ["region", "1", "0", "0", "--route", "magic"],
        ["gf", "0", "1"],
        ["verify", "nonsense"],
        ["render", "1", "1", "0", "--family", "3"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    assert main(argv) == 2


def test_enumeration_cap_exits_4():
    assert main(["family", "2", "0", "0,1", "--cap", "1"]) == 4
    assert main(["render", "2", "0", "0,1", "--cap", "1"]) == 4


def test_cap_from_environment(monkeypatch):
    from backend.src.config import get_settings

    monkeypatch.setenv("QHEX_CAP", "1")
    get_settings.cache_clear()
    try:
        assert main(["family", "2", "0", "0,1"]) == 4
    finally:
        monkeypatch.delenv("QHEX_CAP")
        get_settings.cache_clear()


@pytest.mark.parametrize("argv", [["verify", "prop1", "--max-m", "3"], ["verify", "krat", "--max-m", "2"]])
def test_verify_passes(argv, capsys):
    assert main(argv) == 0
    report = SuiteReport.model_validate_json(capsys.readouterr().out)
    assert report.ok
    assert report.passed + report.skipped == report.cases > 0


def test_verify_end_to_end(capsys):
    assert main(["verify", "endtoend", "--max-m", "3", "--max-k", "2"]) == 0
    report = SuiteReport.model_validate_json(capsys.readouterr().out)
    assert report.failed == 0
    assert report.first_failure is None


def test_render_to_file(tmp_path):
    out = tmp_path / "family.svg"
    assert main(["render", "1", "1", "0", "--family", "0", "--out", str(out)]) == 0
    assert svg_labels(out.read_text(encoding="utf-8")) == [1]


def test_render_to_stdout(capsys):
    assert main(["render", "1", "0", "0", "--tiling"]) == 0
    assert svg_labels(capsys.readouterr().out) == []
