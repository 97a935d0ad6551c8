import json
import math

import jsonschema
import pytest

from ergodfa.bounds import CensusResult, brute_force_census, emk_bound
from ergodfa.errors import CheckFailed, InvalidInput
from ergodfa.experiments import (
    CHECKS, ExperimentConfig, ExperimentReport, aggregate, emit_report, load_report,
    load_schema, report_csv, report_json, run_bound_suite, run_campaign, run_trial, worker_count,
)


def small_cfg(**kw):
    base = dict(n_values=[3, 8, 20], trials=15, master_seed=99, checks=list(CHECKS),
                walk_steps=2000)
    base.update(kw)
    return ExperimentConfig(**base)


@pytest.fixture(scope="module")
def report():
    return run_campaign(small_cfg(), workers=1)


def test_one_state_automata_are_ergodic():
    rep = run_campaign(ExperimentConfig(n_values=[1], trials=10), workers=1)
    s = rep.summary_for(1)
    assert s.fraction_ergodic == 1.0
    assert s.fraction_unique_closed == 1.0
    assert s.mean_class_fraction == 1.0


def test_fractions_in_unit_interval(report):
    for s in report.summary:
        assert s.trials == 15 and s.failed == 0
        for name in ("fraction_unique_closed", "fraction_ergodic", "fraction_minimized_ergodic",
                     "stationary_convergence_rate", "mean_class_fraction"):
            v = getattr(s, name)
            assert v is None or 0 <= v <= 1
        assert s.grusho_c == pytest.approx(0.7968, abs=1e-4)


def test_minimization_preserves_ergodicity(report):
    for t in report.trials:
        if t.ergodic:
            assert t.minimized_ergodic is True
            assert t.stationary_converged is True
            assert t.walk_tv is not None


def test_aggregates_recomputable(report):
    assert aggregate(report.trials) == report.summary
    shuffled = sorted(aggregate(list(reversed(report.trials))), key=lambda s: s.n)
    assert shuffled == sorted(report.summary, key=lambda s: s.n)


def test_trial_records_depend_only_on_seed():
    a = run_trial(20, 2, 5, 3, CHECKS, 1000)
    b = run_trial(20, 2, 5, 3, CHECKS, 1000)
    assert a == b
    assert a.seed != run_trial(20, 2, 5, 4).seed


def test_json_round_trip_and_schema(report, tmp_path):
    path = tmp_path / "r.json"
    emit_report(report, "json", path)
    first = path.read_text()
    jsonschema.validate(json.loads(first), load_schema("report.schema.json"))
    back = load_report(path)
    assert back == report
    emit_report(back, "json", path)
    assert path.read_text() == first


def test_csv_round_trip(report, tmp_path):
    path = tmp_path / "r.csv"
    emit_report(report, "csv", path)
    back = load_report(path)
    assert back.trials == report.trials
    assert back.summary == report.summary
    emit_report(back, "csv", path)
    assert path.read_text() == report_csv(report)


def test_empty_report_is_header_only():
    text = report_csv(ExperimentReport([], []))
    assert text.count("\n") == 1
    assert text.startswith("n,r,trial,seed")


def test_summary_only_json(report):
    d = json.loads(report_json(report, per_trial=False))
    assert "trials" not in d
    jsonschema.validate(d, load_schema("report.schema.json"))


@pytest.mark.slow
def test_worker_count_does_not_change_output():
    cfg = small_cfg(n_values=[10, 30], trials=20)
    serial = report_json(run_campaign(cfg, workers=1))
    assert report_json(run_campaign(cfg, workers=8)) == serial
    assert report_csv(run_campaign(cfg, workers=3)) == report_csv(run_campaign(cfg, workers=1))


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("ERGODFA_WORKERS", "4")
    assert worker_count() == 4
    assert worker_count(2) == 2
    monkeypatch.delenv("ERGODFA_WORKERS")
    assert worker_count() == 1


@pytest.mark.parametrize("bad", [
    dict(n_values=[], trials=1), dict(n_values=[5], trials=0), dict(n_values=[5], r=1),
    dict(n_values=[5], checks=["nope"]), dict(n_values=[5], format="xml"),
])
def test_config_validation(bad):
    with pytest.raises(InvalidInput):
        ExperimentConfig(**bad)


def test_config_schema(tmp_path):
    with pytest.raises(InvalidInput, match="colour"):
        ExperimentConfig.from_dict({"n_values": [5], "colour": "red"})
    cfg = ExperimentConfig.default()
    jsonschema.validate(cfg.to_dict(), load_schema("config.schema.json"))
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert ExperimentConfig.from_json(path) == cfg


def test_walk_implies_stationary():
    assert "stationary" in ExperimentConfig(n_values=[4], checks=["walk"]).checks


def test_bound_suite_passes():
    out = run_bound_suite()
    assert out["passed"]
    assert [row["truncated"] for row in out["grusho"][:6]] == [0.796, 0.94, 0.98, 0.993, 0.997, 0.999]


def test_bound_suite_flags_injected_violation():
    good = brute_force_census(2, 2)
    bad = CensusResult(3, 2, total=10, unique_closed=10, ergodic=0, periodic_events={(3, 3): 9})
    assert 0.9 > emk_bound(3, 3, 3, 2)
    with pytest.raises(CheckFailed) as info:
        run_bound_suite([good, bad])
    assert info.value.check == "emk_domination"
    assert info.value.where == (3, 3, 3)


def test_campaign_stats_near_census_for_tiny_n():
    cen = brute_force_census(3, 2)
    trials = 4000
    rep = run_campaign(ExperimentConfig(n_values=[3], trials=trials, checks=["ergodicity"]), 1)
    p = cen.ergodic_ratio
    sigma = math.sqrt(p * (1 - p) / trials)
    assert abs(rep.summary_for(3).fraction_ergodic - p) <= 3 * sigma
