"""Operating policies: one choice per decision dimension, plus named presets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .network import NetworkIndex, Person
from .testing import TestingConfig
from .transmission import MASK_EFFICIENCY


@dataclass(frozen=True)
class PolicyConfig:
    student_mask_type: str = "cloth"
    instructor_mask_type: str = "cloth"
    student_mask_compliance: float = 0.0
    instructor_mask_compliance: float = 0.0
    distancing_ft: float = 2.0
    modality_cap: float = math.inf  # classes larger than this go online
    testing: TestingConfig = field(default_factory=TestingConfig)
    online_until_day: int = 0  # all classes online before this day

    def __post_init__(self):
        for name in ("student_mask_compliance", "instructor_mask_compliance"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        for name in ("student_mask_type", "instructor_mask_type"):
            if getattr(self, name) not in MASK_EFFICIENCY:
                raise ValueError(f"unknown mask type {getattr(self, name)!r}")
        if not 2.0 <= self.distancing_ft <= 6.0:
            raise ValueError("distancing_ft must be within [2, 6]")
        if self.online_until_day < 0:
            raise ValueError("online_until_day must be >= 0")
        if self.modality_cap < 0:
            raise ValueError("modality_cap must be non-negative")


NO_POLICY = PolicyConfig(
    student_mask_type="none",
    instructor_mask_type="none",
)


@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    policy: PolicyConfig


def resolve_mask_wearing(
    people: list[Person], policy: PolicyConfig, rng: np.random.Generator
) -> None:
    """Fix each person's mask wearing for a whole replication.

    Draws independently per person at the role's compliance rate; a
    non-wearer's mask type is 'none'.
    """
    for person in people:
        if person.role == "student":
            compliance, mtype = (
                policy.student_mask_compliance, policy.student_mask_type
            )
        else:
            compliance, mtype = (
                policy.instructor_mask_compliance, policy.instructor_mask_type
            )
        wears = bool(rng.random() < compliance)
        person.wears_mask = wears
        person.mask_type = mtype if wears else "none"


def resolve_mask_etas(
    index: NetworkIndex, policy: PolicyConfig, rng: np.random.Generator
) -> np.ndarray:
    """Per-person filtration efficiency array for one replication."""
    n = index.n_people
    compliance = np.where(
        index.is_student,
        policy.student_mask_compliance,
        policy.instructor_mask_compliance,
    )
    wears = rng.random(n) < compliance
    eta_if_worn = np.where(
        index.is_student,
        MASK_EFFICIENCY[policy.student_mask_type],
        MASK_EFFICIENCY[policy.instructor_mask_type],
    )
    return np.where(wears, eta_if_worn, 0.0)


def sunrise_presets(
    horizon: int = 84, testing_capacity: int = 5000
) -> list[ScenarioPreset]:
    """The staged reopening-plan presets, each adding one dimension.

    NoPolicy -> M (cloth masks, full compliance) -> PD+M (6 ft) ->
    CM+PD+M (cap 30) -> T+CM+PD+M (testing) -> RCM+T+PD+M (first two
    weeks fully online).
    """
    no_policy = NO_POLICY
    m = replace(
        no_policy,
        student_mask_type="cloth",
        instructor_mask_type="cloth",
        student_mask_compliance=1.0,
        instructor_mask_compliance=1.0,
    )
    pd_m = replace(m, distancing_ft=6.0)
    cm_pd_m = replace(pd_m, modality_cap=30)
    t_cm_pd_m = replace(
        cm_pd_m,
        testing=TestingConfig(daily_capacity=testing_capacity, enabled=True),
    )
    rcm_t_pd_m = replace(t_cm_pd_m, online_until_day=min(14, horizon))
    return [
        ScenarioPreset("NoPolicy", no_policy),
        ScenarioPreset("M", m),
        ScenarioPreset("PD+M", pd_m),
        ScenarioPreset("CM+PD+M", cm_pd_m),
        ScenarioPreset("T+CM+PD+M", t_cm_pd_m),
        ScenarioPreset("RCM+T+PD+M", rcm_t_pd_m),
    ]
