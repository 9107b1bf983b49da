import math

import numpy as np
import pytest

from campussim.engine import EngineOptions, Scenario, run_ensemble
from campussim.policy import NO_POLICY, sunrise_presets
from campussim.progression import ProgressionParams
from campussim.results import (
    doc_to_ensemble,
    ensemble_to_doc,
    read_ensemble_csv,
    read_ensemble_json,
    write_ensemble_csv,
    write_ensemble_json,
)
from campussim.scenario import (
    ConfigError,
    apply_preset,
    build_network,
    build_policy,
    build_scenario,
    default_config,
    parse_config_file,
    scenario_id,
    validate_config,
)


class TestValidateConfig:
    def test_empty_config_resolves_to_defaults(self):
        resolved = validate_config({})
        assert resolved == default_config()
        assert resolved["network"]["scale"] == 0.043
        assert resolved["engine"]["horizon_days"] == 84

    def test_partial_overrides_merge(self):
        resolved = validate_config({"engine": {"horizon_days": 28}})
        assert resolved["engine"]["horizon_days"] == 28
        assert resolved["engine"]["runs"] == default_config()["engine"]["runs"]

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError, match=r"unknown section"):
            validate_config({"networq": {}})

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match=r"unknown key"):
            validate_config({"network": {"scal": 0.1}})

    def test_bad_value_rejected(self):
        with pytest.raises(ConfigError, match=r"bad value"):
            validate_config({"engine": {"horizon_days": "three months"}})

    def test_file_source_requires_path(self):
        with pytest.raises(ConfigError, match="enrollment_file"):
            validate_config({"network": {"source": "file"}})

    def test_category_weights_must_sum_to_one(self):
        with pytest.raises(ConfigError, match="p1"):
            validate_config({"network": {"p1": 0.5, "p2": 0.2, "p3": 0.2}})

    def test_modality_cap_accepts_inf_spellings(self):
        for word in ("inf", "none", "all", "Infinity"):
            resolved = validate_config({"policy": {"modality_cap": word}})
            assert resolved["policy"]["modality_cap"] == math.inf
        resolved = validate_config({"policy": {"modality_cap": "30"}})
        assert resolved["policy"]["modality_cap"] == 30

    def test_boolean_spellings(self):
        for word, want in (("yes", True), ("off", False), ("1", True)):
            resolved = validate_config({"testing": {"enabled": word}})
            assert resolved["testing"]["enabled"] is want
        with pytest.raises(ConfigError):
            validate_config({"testing": {"enabled": "maybe"}})

    def test_mask_type_choices(self):
        with pytest.raises(ConfigError):
            validate_config({"policy": {"student_mask_type": "scarf"}})


class TestParseConfigFile:
    def test_ini_round_trip(self, tmp_path):
        path = tmp_path / "scenario.ini"
        path.write_text(
            "[engine]\n"
            "horizon_days = 28  # one month\n"
            "[policy]\n"
            "modality_cap = 30\n"
            "distancing_feet = 6.0\n"
        )
        resolved = parse_config_file(path)
        assert resolved["engine"]["horizon_days"] == 28
        assert resolved["policy"]["modality_cap"] == 30
        assert resolved["policy"]["distancing_feet"] == 6.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            parse_config_file(tmp_path / "nope.ini")

    def test_bad_key_carries_name(self, tmp_path):
        path = tmp_path / "scenario.ini"
        path.write_text("[engine]\nhorizon = 28\n")
        with pytest.raises(ConfigError, match="horizon"):
            parse_config_file(path)


class TestScenarioId:
    def test_stable_and_canonical(self):
        a = scenario_id(validate_config({}))
        b = scenario_id(validate_config({"engine": {"horizon_days": 84}}))
        assert a == b  # explicit default is the same scenario
        assert len(a) == 16

    def test_sensitive_to_any_parameter(self):
        a = scenario_id(validate_config({}))
        b = scenario_id(validate_config({"policy": {"modality_cap": 30}}))
        assert a != b


class TestBuildScenario:
    def test_build_from_defaults(self):
        resolved = validate_config(
            {"network": {"scale": 0.01, "synthetic_seed": 3}}
        )
        scenario, settings = build_scenario(resolved)
        assert settings.runs == 1000
        assert scenario.options.horizon == 84
        assert scenario.policy == build_policy(resolved)

    def test_policy_distancing_reaches_transmission(self):
        resolved = validate_config({"policy": {"distancing_feet": 6.0}})
        scenario, _ = build_scenario(
            resolved, network=build_network(
                validate_config({"network": {"scale": 0.01,
                                             "synthetic_seed": 3}})
            )
        )
        assert scenario.effective_transmission().distancing_ft == 6.0

    def test_injected_network_is_used(self, tiny_net):
        scenario, _ = build_scenario(validate_config({}), network=tiny_net)
        assert scenario.network is tiny_net


class TestApplyPreset:
    def test_overlay_changes_only_policy_and_testing(self):
        base = validate_config({"engine": {"horizon_days": 28}})
        preset = sunrise_presets(28, testing_capacity=215)[4]
        out = apply_preset(base, preset.policy)
        assert out["engine"] == base["engine"]
        assert out["network"] == base["network"]
        assert out["testing"]["enabled"] is True
        assert out["testing"]["daily_capacity"] == 215
        assert out["policy"]["modality_cap"] == 30

    def test_infinite_cap_survives_the_overlay(self):
        base = validate_config({})
        out = apply_preset(base, sunrise_presets()[0].policy)
        assert out["policy"]["modality_cap"] == math.inf


@pytest.fixture(scope="module")
def small_ensemble(request):
    net = request.getfixturevalue("desk_campus")
    scenario = Scenario(
        network=net,
        policy=NO_POLICY,
        progression=ProgressionParams(outside_infections_per_day=1),
        options=EngineOptions(horizon=14),
    )
    return run_ensemble(scenario, 5, 0)


class TestResultsPersistence:
    META = {"scenario_id": "abc123", "base_seed": 0, "runs": 5}

    def test_doc_round_trip(self, small_ensemble):
        doc = ensemble_to_doc(small_ensemble, self.META)
        back, meta = doc_to_ensemble(doc)
        assert meta == self.META
        np.testing.assert_array_equal(
            back.mean_series, small_ensemble.mean_series
        )
        np.testing.assert_array_equal(
            back.per_run_finals, small_ensemble.per_run_finals
        )

    def test_doc_week_table(self, small_ensemble):
        doc = ensemble_to_doc(small_ensemble, self.META)
        assert doc["weeks"]["7"] == small_ensemble.mean_series[6]
        assert doc["weeks"]["14"] == small_ensemble.mean_series[13]
        assert "21" not in doc["weeks"]  # beyond the 14-day horizon

    def test_json_round_trip(self, small_ensemble, tmp_path):
        path = tmp_path / "out.json"
        write_ensemble_json(small_ensemble, self.META, path)
        back, meta = read_ensemble_json(path)
        assert meta == self.META
        np.testing.assert_array_equal(
            back.ci_half_width, small_ensemble.ci_half_width
        )
        np.testing.assert_array_equal(
            back.per_run_all_finals, small_ensemble.per_run_all_finals
        )

    def test_json_output_is_deterministic(self, small_ensemble, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        write_ensemble_json(small_ensemble, self.META, a)
        write_ensemble_json(small_ensemble, self.META, b)
        assert a.read_bytes() == b.read_bytes()

    def test_csv_round_trip(self, small_ensemble, tmp_path):
        path = tmp_path / "out.csv"
        write_ensemble_csv(small_ensemble, self.META, path)
        back, meta = read_ensemble_csv(path)
        assert meta["scenario_id"] == "abc123"
        np.testing.assert_array_equal(
            back.mean_series, small_ensemble.mean_series
        )
        np.testing.assert_array_equal(
            back.ci_all_half_width, small_ensemble.ci_all_half_width
        )
        assert back.run_count == small_ensemble.run_count
