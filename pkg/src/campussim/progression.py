"""Day-by-day disease progression of every agent in a replication."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class HealthState(IntEnum):
    SUSCEPTIBLE = 0
    INCUBATING = 1
    TRANSMITTING = 2  # pre-symptomatic but already infectious
    ASYMPTOMATIC = 3
    SYMPTOMATIC = 4
    QUARANTINED = 5
    REMOVED_SEVERE = 6
    RECOVERED = 7


S = HealthState

# edges of the progression machine; TRANSMITTING -> QUARANTINED happens when
# contact-traced testing catches a pre-symptomatic infectious agent
LEGAL_TRANSITIONS = {
    (S.SUSCEPTIBLE, S.INCUBATING),
    (S.INCUBATING, S.TRANSMITTING),
    (S.TRANSMITTING, S.ASYMPTOMATIC),
    (S.TRANSMITTING, S.SYMPTOMATIC),
    (S.TRANSMITTING, S.QUARANTINED),
    (S.ASYMPTOMATIC, S.RECOVERED),
    (S.ASYMPTOMATIC, S.QUARANTINED),
    (S.SYMPTOMATIC, S.RECOVERED),
    (S.SYMPTOMATIC, S.QUARANTINED),
    (S.QUARANTINED, S.RECOVERED),
    (S.QUARANTINED, S.REMOVED_SEVERE),
}

# with imperfect specificity, non-infectious agents can be quarantined and
# later released back to their pre-quarantine state
FALSE_POSITIVE_TRANSITIONS = LEGAL_TRANSITIONS | {
    (S.SUSCEPTIBLE, S.QUARANTINED),
    (S.INCUBATING, S.QUARANTINED),
    (S.RECOVERED, S.QUARANTINED),
    (S.QUARANTINED, S.SUSCEPTIBLE),
    (S.QUARANTINED, S.INCUBATING),
    (S.QUARANTINED, S.TRANSMITTING),
}

INFECTIOUS_STATES = (S.TRANSMITTING, S.ASYMPTOMATIC, S.SYMPTOMATIC)

# infection source codes
SOURCE_NONE = -1
SOURCE_CAMPUS = 0
SOURCE_OUTSIDE = 1
SOURCE_SEED = 2


@dataclass(frozen=True)
class ProgressionParams:
    incubation_shape: float = 1.97
    incubation_scale: float = 9.35  # days; gives mean 8.29, median 7.76
    symptomatic_prob: float = 0.65
    contagious_shape: float = 3.0
    contagious_scale: float = 2.6  # days; gives mean 7.8
    severe_prob: float = 0.0
    outside_infections_per_day: int = 5
    initial_infected_fraction: float = 0.01
    initial_infection_age_max_days: int = 5

    def __post_init__(self):
        if self.incubation_shape <= 0 or self.incubation_scale <= 0:
            raise ValueError("incubation parameters must be positive")
        if self.contagious_shape <= 0 or self.contagious_scale <= 0:
            raise ValueError("contagious parameters must be positive")
        for name in ("symptomatic_prob", "severe_prob",
                     "initial_infected_fraction"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")


class ContractViolation(Exception):
    pass


def sample_incubation(
    params: ProgressionParams, rng: np.random.Generator, size=None
):
    """Weibull incubation time in days, strictly positive."""
    return params.incubation_scale * rng.weibull(params.incubation_shape, size)


def sample_contagious_duration(
    params: ProgressionParams, rng: np.random.Generator, size=None
):
    """Gamma contagious period in days, strictly positive."""
    return rng.gamma(params.contagious_shape, params.contagious_scale, size)


class Population:
    """Struct-of-arrays health record for every agent of one replication."""

    def __init__(self, n: int, is_student: np.ndarray | None = None):
        self.n = n
        self.is_student = (
            np.ones(n, dtype=bool) if is_student is None
            else np.asarray(is_student, dtype=bool)
        )
        self.state = np.full(n, int(S.SUSCEPTIBLE), dtype=np.int8)
        self.infection_day = np.full(n, np.nan)
        self.incubation_days = np.full(n, np.nan)
        self.lead_days = np.zeros(n, dtype=np.int8)  # infectious lead, 1..3
        self.contagious_days = np.full(n, np.nan)
        self.t_transmit = np.full(n, np.inf)
        self.t_incubation_end = np.full(n, np.inf)
        self.t_contagious_end = np.full(n, np.inf)
        self.will_symptomatic = np.zeros(n, dtype=bool)
        self.source = np.full(n, SOURCE_NONE, dtype=np.int8)
        self.quarantine_until = np.full(n, np.inf)
        self.pre_quarantine_state = np.full(n, -1, dtype=np.int8)
        self.quarantine_true_positive = np.zeros(n, dtype=bool)
        self.severe_fate = np.zeros(n, dtype=bool)
        self.symptom_onset_day = np.full(n, -(10**9), dtype=np.int64)
        self.last_test_day = np.full(n, -(10**9), dtype=np.int64)

    def state_counts(self) -> dict[HealthState, int]:
        return {s: int(np.sum(self.state == int(s))) for s in HealthState}


def is_infectious(pop: Population, idx=None):
    """Infectious to campus sessions; quarantined agents are not."""
    st = pop.state if idx is None else pop.state[idx]
    return (
        (st == int(S.TRANSMITTING))
        | (st == int(S.ASYMPTOMATIC))
        | (st == int(S.SYMPTOMATIC))
    )


def infect(
    pop: Population,
    idx,
    day: float,
    source: int,
    params: ProgressionParams,
    rng: np.random.Generator,
) -> None:
    """Move susceptible agents at `idx` to incubating, sampling their clocks."""
    idx = np.atleast_1d(np.asarray(idx, dtype=np.int64))
    if len(idx) == 0:
        return
    if np.any(pop.state[idx] != int(S.SUSCEPTIBLE)):
        raise ContractViolation("only susceptible agents can be infected")
    k = len(idx)
    inc = sample_incubation(params, rng, k)
    # an incubation shorter than every possible lead leaves no valid lead;
    # resample it (rare for the default parameters)
    bad = inc <= 1.0
    while np.any(bad):
        inc[bad] = sample_incubation(params, rng, int(bad.sum()))
        bad = inc <= 1.0
    lead = rng.integers(1, 4, size=k)
    bad = lead >= inc
    while np.any(bad):
        lead[bad] = rng.integers(1, 4, size=int(bad.sum()))
        bad = lead >= inc
    contagious = sample_contagious_duration(params, rng, k)

    pop.state[idx] = int(S.INCUBATING)
    pop.infection_day[idx] = day
    pop.incubation_days[idx] = inc
    pop.lead_days[idx] = lead
    pop.contagious_days[idx] = contagious
    pop.t_transmit[idx] = day + inc - lead
    pop.t_incubation_end[idx] = day + inc
    pop.t_contagious_end[idx] = day + inc - lead + contagious
    pop.will_symptomatic[idx] = rng.random(k) < params.symptomatic_prob
    pop.source[idx] = source


def advance_day(pop: Population, day: float) -> np.ndarray:
    """Apply every due transition for `day`; returns newly symptomatic indices.

    Quarantine releases run first so a falsely positive agent's restored
    state can cascade through the regular thresholds in the same call.
    """
    st = pop.state

    release = (st == int(S.QUARANTINED)) & (day >= pop.quarantine_until)
    if np.any(release):
        severe = release & pop.severe_fate
        st[severe] = int(S.REMOVED_SEVERE)
        true_pos = release & ~pop.severe_fate & pop.quarantine_true_positive
        st[true_pos] = int(S.RECOVERED)
        false_pos = release & ~pop.severe_fate & ~pop.quarantine_true_positive
        st[false_pos] = pop.pre_quarantine_state[false_pos]
        pop.quarantine_until[release] = np.inf

    m = (st == int(S.INCUBATING)) & (day >= pop.t_transmit)
    st[m] = int(S.TRANSMITTING)

    m = (st == int(S.TRANSMITTING)) & (day >= pop.t_incubation_end)
    new_symptomatic = m & pop.will_symptomatic
    st[new_symptomatic] = int(S.SYMPTOMATIC)
    pop.symptom_onset_day[new_symptomatic] = int(day)
    st[m & ~pop.will_symptomatic] = int(S.ASYMPTOMATIC)

    m = (
        (st == int(S.ASYMPTOMATIC)) | (st == int(S.SYMPTOMATIC))
    ) & (day >= pop.t_contagious_end)
    st[m] = int(S.RECOVERED)

    return np.flatnonzero(new_symptomatic)


def seed_initial_infections(
    pop: Population, params: ProgressionParams, rng: np.random.Generator
) -> np.ndarray:
    """Infect floor(fraction * #students) students, backdated 0..max days."""
    students = np.flatnonzero(pop.is_student)
    k = int(params.initial_infected_fraction * len(students))
    if k == 0:
        return np.empty(0, dtype=np.int64)
    picked = rng.choice(students, size=k, replace=False)
    ages = rng.integers(0, params.initial_infection_age_max_days + 1, size=k)
    for age in np.unique(ages):
        group = picked[ages == age]
        infect(pop, group, -float(age), SOURCE_SEED, params, rng)
    return picked


def apply_outside_infection(
    pop: Population,
    day: float,
    params: ProgressionParams,
    rng: np.random.Generator,
) -> np.ndarray:
    """Spontaneously infect up to the daily quota of susceptible students."""
    eligible = np.flatnonzero(
        pop.is_student & (pop.state == int(S.SUSCEPTIBLE))
    )
    k = min(params.outside_infections_per_day, len(eligible))
    if k == 0:
        return np.empty(0, dtype=np.int64)
    picked = rng.choice(eligible, size=k, replace=False)
    infect(pop, picked, day, SOURCE_OUTSIDE, params, rng)
    return picked
