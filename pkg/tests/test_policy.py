import math

import numpy as np
import pytest

from campussim.network import NetworkIndex, Person
from campussim.policy import (
    NO_POLICY,
    PolicyConfig,
    resolve_mask_etas,
    resolve_mask_wearing,
    sunrise_presets,
)


class TestPolicyConfig:
    def test_no_policy_is_neutral(self):
        assert NO_POLICY.student_mask_compliance == 0.0
        assert NO_POLICY.distancing_ft == 2.0
        assert NO_POLICY.modality_cap == math.inf
        assert NO_POLICY.online_until_day == 0
        assert not NO_POLICY.testing.enabled

    def test_compliance_bounds(self):
        with pytest.raises(ValueError):
            PolicyConfig(student_mask_compliance=1.1)
        with pytest.raises(ValueError):
            PolicyConfig(instructor_mask_compliance=-0.1)

    def test_unknown_mask_type(self):
        with pytest.raises(ValueError):
            PolicyConfig(student_mask_type="bandana")

    def test_distancing_range(self):
        with pytest.raises(ValueError):
            PolicyConfig(distancing_ft=1.0)
        with pytest.raises(ValueError):
            PolicyConfig(distancing_ft=7.0)
        PolicyConfig(distancing_ft=6.0)  # boundary allowed

    def test_zero_cap_allowed(self):
        PolicyConfig(modality_cap=0)  # every class online
        with pytest.raises(ValueError):
            PolicyConfig(modality_cap=-1)

    def test_negative_online_until_rejected(self):
        with pytest.raises(ValueError):
            PolicyConfig(online_until_day=-1)


class TestMaskResolution:
    def test_full_compliance_everyone_wears(self):
        people = [Person(f"S{i}") for i in range(10)]
        policy = PolicyConfig(
            student_mask_type="n95", student_mask_compliance=1.0
        )
        resolve_mask_wearing(people, policy, np.random.default_rng(0))
        assert all(p.wears_mask and p.mask_type == "n95" for p in people)

    def test_zero_compliance_nobody_wears(self):
        people = [Person(f"S{i}") for i in range(10)]
        resolve_mask_wearing(people, NO_POLICY, np.random.default_rng(0))
        assert all(not p.wears_mask and p.mask_type == "none" for p in people)

    def test_partial_compliance_rate(self):
        people = [Person(f"S{i}") for i in range(20_000)]
        policy = PolicyConfig(
            student_mask_type="cloth", student_mask_compliance=0.3
        )
        resolve_mask_wearing(people, policy, np.random.default_rng(1))
        rate = sum(p.wears_mask for p in people) / len(people)
        assert rate == pytest.approx(0.3, abs=0.01)

    def test_roles_use_their_own_settings(self):
        people = [Person("S0", "student"), Person("I0", "instructor")]
        policy = PolicyConfig(
            student_mask_type="cloth", student_mask_compliance=1.0,
            instructor_mask_type="n95", instructor_mask_compliance=1.0,
        )
        resolve_mask_wearing(people, policy, np.random.default_rng(0))
        assert people[0].mask_type == "cloth"
        assert people[1].mask_type == "n95"


class TestMaskEtas:
    def test_array_matches_role_settings(self, tiny_net):
        index = NetworkIndex(tiny_net)
        policy = PolicyConfig(
            student_mask_type="cloth", student_mask_compliance=1.0,
            instructor_mask_type="n95", instructor_mask_compliance=1.0,
        )
        etas = resolve_mask_etas(index, policy, np.random.default_rng(0))
        for i, is_student in enumerate(index.is_student):
            assert etas[i] == (0.38 if is_student else 0.95)

    def test_zero_compliance_all_zero(self, tiny_net):
        index = NetworkIndex(tiny_net)
        etas = resolve_mask_etas(index, NO_POLICY, np.random.default_rng(0))
        assert np.all(etas == 0.0)


class TestSunrisePresets:
    def test_names_and_order(self):
        names = [p.name for p in sunrise_presets()]
        assert names == [
            "NoPolicy", "M", "PD+M", "CM+PD+M", "T+CM+PD+M", "RCM+T+PD+M",
        ]

    def test_each_stage_adds_one_dimension(self):
        presets = {p.name: p.policy for p in sunrise_presets()}
        assert presets["NoPolicy"] == NO_POLICY
        m = presets["M"]
        assert m.student_mask_type == "cloth"
        assert m.student_mask_compliance == 1.0
        assert m.distancing_ft == 2.0
        pd = presets["PD+M"]
        assert pd.distancing_ft == 6.0
        assert pd.modality_cap == math.inf
        cm = presets["CM+PD+M"]
        assert cm.modality_cap == 30
        assert not cm.testing.enabled
        t = presets["T+CM+PD+M"]
        assert t.testing.enabled
        assert t.online_until_day == 0
        rcm = presets["RCM+T+PD+M"]
        assert rcm.online_until_day == 14
        assert rcm.modality_cap == 30

    def test_testing_capacity_parameter(self):
        presets = {p.name: p.policy for p in sunrise_presets(
            testing_capacity=215
        )}
        assert presets["T+CM+PD+M"].testing.daily_capacity == 215

    def test_short_horizon_clamps_online_phase(self):
        presets = {p.name: p.policy for p in sunrise_presets(horizon=7)}
        assert presets["RCM+T+PD+M"].online_until_day == 7
