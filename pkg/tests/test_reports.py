import pytest

from jetweil.config import DEFAULT_TEMPLATE, load_suite_config
from jetweil.errors import SignInconsistent, WeilError
from jetweil.reports import ERROR, FAIL, Case, Report, compare, guarded, sign_case


def test_compare():
    assert compare("same", 3, 3).passed
    failed = compare("different", 3, 4)
    assert failed.status == FAIL
    assert failed.witness == {"lhs": 3, "rhs": 4}
    assert compare("flipped", 3, -3, allow_sign=True).sign == -1


def test_sign_case_needs_one_common_sign():
    assert sign_case("ok", [(1, -1), (2, -2), (0, 0)]).sign == -1
    with pytest.raises(SignInconsistent):
        sign_case("mixed", [(1, -1), (2, 2)])
    assert sign_case("strict", [(1, -1)], projective=False).status == FAIL


def test_guarded_turns_errors_into_cases():
    def boom():
        raise WeilError("no")
    case = guarded("boom", boom)
    assert case.status == ERROR
    assert case.note == "WeilError: no"


def test_report_is_sorted_and_counted():
    report = Report("demo", {"seed": 1}).extend([Case("b"), Case("a", status=FAIL)])
    data = report.to_dict()
    assert [c["name"] for c in data["cases"]] == ["a", "b"]
    assert data["summary"] == {"total": 2, "passed": 1, "failed": 1, "errors": 0}
    assert report.exit_code == 1
    assert report.to_json() == Report("demo", {"seed": 1}).extend([Case("a", status=FAIL), Case("b")]).to_json()


def test_duplicate_names_are_rejected():
    with pytest.raises(ValueError):
        Report("demo").extend([Case("a"), Case("a")]).to_dict()


def test_markdown_summary():
    pytest.importorskip("pystache")
    report = Report("demo", {"seed": 1}).extend([Case("a", note="checked"), Case("b", status=FAIL)])
    text = report.render_markdown(DEFAULT_TEMPLATE)
    assert "demo" in text
    assert "FAILURES PRESENT" in text
    assert "checked" in text


def test_default_config_loads():
    config = load_suite_config()
    assert config["kashiwara"]["samples"][1] == 100
    assert config["emit"]["format"] == "json"
