import pytest

from majdet import scenarios


@pytest.mark.parametrize("name", list(scenarios.SCENARIOS))
def test_scenario_passes(name):
    result = scenarios.SCENARIOS[name]()
    failing = [row for row in result.rows if not row.passed]
    assert result.passed, f"{name}: {[(r.name, r.computed, r.expected) for r in failing]}"


def test_run_all_covers_every_scenario():
    results = scenarios.run_all()
    assert {r.scenario for r in results} == set(scenarios.SCENARIOS)


def test_rows_json_schema():
    result = scenarios.run_ex28()
    payload = result.to_json()
    assert payload["scenario"] == "ex-2.8"
    assert payload["pass"] is True
    for row in payload["rows"]:
        assert set(row) == {"name", "computed", "expected", "tol", "pass"}
