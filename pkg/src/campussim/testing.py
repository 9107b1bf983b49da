"""Daily test allocation, contact tracing, and quarantine of positives."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .network import DaySessions
from .progression import HealthState as S
from .progression import Population, is_infectious


@dataclass(frozen=True)
class TestingConfig:
    daily_capacity: int = 0
    sensitivity: float = 0.967
    specificity: float = 1.0
    gap_days: int = 3  # min days between two tests of one person
    enabled: bool = False
    ct_window_days: int = 3  # trace window; defaults to the gap
    false_positive_isolation_days: int = 14

    def __post_init__(self):
        if self.daily_capacity < 0 or self.gap_days < 0:
            raise ValueError("capacity and gap must be non-negative")
        for name in ("sensitivity", "specificity"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")


@dataclass
class TestRecord:
    person: int  # population index
    day: int
    positive: bool
    was_infectious: bool  # true disease state at test time
    symptomatic_trigger: bool  # tested from the symptomatic queue
    ct_class: int | None = None  # CT class that led to the test, if any


@dataclass
class TestingState:
    """Mutable per-replication carry-over between testing days."""

    pending_symptomatic: list[int] = field(default_factory=list)
    positive_history: list[tuple[int, int]] = field(default_factory=list)
    records: list[TestRecord] = field(default_factory=list)


def contact_trace(
    positive_persons: Iterable[int],
    history: Sequence[DaySessions],
    window: int,
    day: int,
    n_people: int,
) -> set[int]:
    """Classes with at least one attendance by a positive in the window."""
    pos = set(int(p) for p in positive_persons)
    if not pos:
        return set()
    pos_mask = np.zeros(n_people, dtype=bool)
    pos_mask[list(pos)] = True
    ct: set[int] = set()
    for ds in history:
        if not (day - window < ds.day <= day):
            continue
        if len(ds.att_person) == 0:
            continue
        rows = pos_mask[ds.att_person]
        cs = np.concatenate([[0], np.cumsum(rows)])
        flagged = (cs[ds.att_ptr[1:]] - cs[ds.att_ptr[:-1]]) > 0
        ct.update(int(c) for c in ds.session_class[flagged])
    return ct


def weighted_sample_without_replacement(
    items: np.ndarray, weights: np.ndarray, k: int, rng: np.random.Generator
) -> np.ndarray:
    """Successive weight-proportional draws without replacement.

    Uses exponential sort keys, which is distribution-equivalent to drawing
    one item at a time with probability proportional to its weight.
    """
    if k >= len(items):
        return items.copy()
    keys = rng.exponential(size=len(items)) / weights
    return items[np.argpartition(keys, k)[:k]]


def log_infectability_weights(shared_session_counts: np.ndarray) -> np.ndarray:
    """Default CT sampling weight: log of (1 + infectability).

    Infectability of a candidate is 1 plus the number of their sessions in
    the trace window shared with a positive-tested person; it uses only
    observable contact data, never true disease state.
    """
    return np.log(2.0 + shared_session_counts)


def quarantine(
    pop: Population,
    idx: int,
    day: int,
    config: TestingConfig,
    severe_prob: float,
    rng: np.random.Generator,
) -> bool:
    """Quarantine a positive-tested agent; no-op when already quarantined."""
    if pop.state[idx] == int(S.QUARANTINED):
        return False
    true_positive = bool(is_infectious(pop, idx))
    pop.pre_quarantine_state[idx] = pop.state[idx]
    pop.quarantine_true_positive[idx] = true_positive
    if true_positive:
        pop.quarantine_until[idx] = max(day + 1, pop.t_contagious_end[idx])
        # severe outcomes only make sense for the truly ill
        pop.severe_fate[idx] = rng.random() < severe_prob
    else:
        pop.quarantine_until[idx] = day + config.false_positive_isolation_days
        pop.severe_fate[idx] = False
    pop.state[idx] = int(S.QUARANTINED)
    return True


def run_daily_testing(
    pop: Population,
    history: Sequence[DaySessions],
    config: TestingConfig,
    day: int,
    rng: np.random.Generator,
    state: TestingState,
    severe_prob: float = 0.0,
    weight_fn=log_infectability_weights,
) -> list[TestRecord]:
    """Allocate one day's tests: symptomatic queue first, then CT sampling.

    Agents who turned symptomatic yesterday (plus any capacity-overflow
    backlog) are tested first; remaining tests go to students who attended
    contact-traced classes in the window, sampled by `weight_fn`. Positives
    (true and false) are quarantined immediately.
    """
    if not config.enabled:
        return []
    capacity = config.daily_capacity
    records: list[TestRecord] = []
    tested_today: set[int] = set()

    def eligible(i: int) -> bool:
        return (
            day - pop.last_test_day[i] >= config.gap_days
            and i not in tested_today
            and pop.state[i] not in (int(S.QUARANTINED), int(S.REMOVED_SEVERE))
        )

    def administer(i: int, symptomatic_trigger: bool, ct_class=None):
        infectious = bool(is_infectious(pop, i))
        if infectious:
            positive = rng.random() < config.sensitivity
        else:
            positive = rng.random() < (1.0 - config.specificity)
        pop.last_test_day[i] = day
        tested_today.add(i)
        rec = TestRecord(
            int(i), day, positive, infectious, symptomatic_trigger, ct_class
        )
        records.append(rec)
        if positive:
            state.positive_history.append((day, int(i)))
            quarantine(pop, i, day, config, severe_prob, rng)

    # 1. symptomatic queue: backlog first, then yesterday's new symptomatic
    queue = [
        i for i in state.pending_symptomatic
        if pop.state[i] == int(S.SYMPTOMATIC)
    ]
    new_sym = np.flatnonzero(
        (pop.state == int(S.SYMPTOMATIC))
        & (pop.symptom_onset_day == day - 1)
    )
    queue.extend(int(i) for i in new_sym if i not in queue)
    still_pending: list[int] = []
    for i in queue:
        if not eligible(i):
            continue
        if len(records) < capacity:
            administer(i, symptomatic_trigger=True)
        else:
            still_pending.append(i)
    state.pending_symptomatic = still_pending

    # 2. surplus capacity: sample students from contact-traced classes
    remaining = capacity - len(records)
    if remaining > 0:
        window = config.ct_window_days
        positives = [
            p for (d, p) in state.positive_history if day - window < d <= day
        ]
        if positives:
            ct_classes = contact_trace(positives, history, window, day, pop.n)
            shared, ct_attend, ct_class_of = _shared_session_counts(
                positives, history, window, day, pop.n, ct_classes
            )
            cand = np.flatnonzero(
                (ct_attend > 0)
                & pop.is_student
                & (pop.state != int(S.QUARANTINED))
                & (pop.state != int(S.REMOVED_SEVERE))
                & (day - pop.last_test_day >= config.gap_days)
            )
            cand = np.array(
                [i for i in cand if i not in tested_today], dtype=np.int64
            )
            if len(cand) > 0:
                weights = weight_fn(shared[cand].astype(float))
                picked = weighted_sample_without_replacement(
                    cand, weights, remaining, rng
                )
                for i in picked:
                    administer(
                        int(i),
                        symptomatic_trigger=False,
                        ct_class=int(ct_class_of[int(i)]),
                    )

    state.records.extend(records)
    return records


def _shared_session_counts(
    positive_persons: Sequence[int],
    history: Sequence[DaySessions],
    window: int,
    day: int,
    n_people: int,
    ct_classes: set[int],
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per person over the window: sessions shared with a tested positive,
    attendances of contact-traced classes, and one CT class they attended
    (for the test log)."""
    pos_mask = np.zeros(n_people, dtype=bool)
    pos_mask[np.asarray(positive_persons, dtype=np.int64)] = True
    shared = np.zeros(n_people, dtype=np.int64)
    ct_attend = np.zeros(n_people, dtype=np.int64)
    ct_class_of = np.full(n_people, -1, dtype=np.int64)
    ct_list = np.array(sorted(ct_classes), dtype=np.int64)
    for ds in history:
        if not (day - window < ds.day <= day) or len(ds.att_person) == 0:
            continue
        rows = pos_mask[ds.att_person]
        cs = np.concatenate([[0], np.cumsum(rows)])
        session_flagged = (cs[ds.att_ptr[1:]] - cs[ds.att_ptr[:-1]]) > 0
        session_ct = np.isin(ds.session_class, ct_list)
        sizes = np.diff(ds.att_ptr)
        not_pos = ~pos_mask[ds.att_person]

        keep = np.repeat(session_flagged, sizes) & not_pos
        np.add.at(shared, ds.att_person[keep], 1)

        keep_ct = np.repeat(session_ct, sizes) & not_pos
        hit = ds.att_person[keep_ct]
        np.add.at(ct_attend, hit, 1)
        ct_class_of[hit] = np.repeat(ds.session_class, sizes)[keep_ct]
    return shared, ct_attend, ct_class_of
