"""Daily simulation loop for one replication and Monte Carlo ensembles."""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from numpy.random import SeedSequence

from . import progression as prog
from .network import (
    BipartiteNetwork,
    DaySessions,
    EventSequence,
    NetworkIndex,
    apply_modality_cap,
    sample_event_sequence,
)
from .policy import PolicyConfig, ScenarioPreset, resolve_mask_etas
from .progression import HealthState as S
from .progression import Population, ProgressionParams
from .testing import TestingState, run_daily_testing
from .transmission import FT_TO_M, TransmissionParams

WEEK_END_DAYS = (7, 14, 21, 28, 42, 56, 70, 84)

METRIC_CAMPUS = "campus"
METRIC_ALL = "all"


@dataclass(frozen=True)
class EngineOptions:
    horizon: int = 84
    attendance_rate: float = 1.0
    include_instructors_in_metric: bool = False
    metric: str = METRIC_CAMPUS

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if not 0.0 <= self.attendance_rate <= 1.0:
            raise ValueError("attendance_rate must be in [0, 1]")
        if self.metric not in (METRIC_CAMPUS, METRIC_ALL):
            raise ValueError("metric must be 'campus' or 'all'")


@dataclass
class Scenario:
    """Everything one replication needs except its seed."""

    network: BipartiteNetwork
    policy: PolicyConfig
    transmission: TransmissionParams = field(default_factory=TransmissionParams)
    progression: ProgressionParams = field(default_factory=ProgressionParams)
    options: EngineOptions = field(default_factory=EngineOptions)
    _index: NetworkIndex | None = field(default=None, repr=False, compare=False)

    @property
    def index(self) -> NetworkIndex:
        if self._index is None:
            capped = apply_modality_cap(self.network, self.policy.modality_cap)
            self._index = NetworkIndex(capped)
        return self._index

    def effective_transmission(self) -> TransmissionParams:
        return replace(
            self.transmission, distancing_ft=self.policy.distancing_ft
        )


@dataclass
class SimulationResult:
    daily_cumulative_campus: np.ndarray  # infections via class sessions
    daily_cumulative_all: np.ndarray  # campus + outside + seeds
    per_day_new_infections: np.ndarray
    final_state_counts: dict
    tests_administered: int = 0


@dataclass
class EnsembleResult:
    metric: str
    mean_series: np.ndarray
    ci_half_width: np.ndarray  # 1.96 * sd / sqrt(n)
    run_count: int
    per_run_finals: np.ndarray
    mean_all_series: np.ndarray
    ci_all_half_width: np.ndarray
    per_run_all_finals: np.ndarray

    def week_end_means(self, days: Sequence[int] = WEEK_END_DAYS) -> dict:
        return {
            d: float(self.mean_series[d - 1])
            for d in days
            if d - 1 < len(self.mean_series)
        }


def replication_seed(base_seed: int, i: int) -> SeedSequence:
    """Pure derivation of replication i's random stream root."""
    return SeedSequence(entropy=base_seed, spawn_key=(i,))


def _filter_quarantined(ds: DaySessions, state: np.ndarray) -> DaySessions:
    """Drop quarantined/removed agents from a day's attendee lists."""
    if len(ds.att_person) == 0:
        return ds
    att_state = state[ds.att_person]
    keep = (att_state != int(S.QUARANTINED)) & (
        att_state != int(S.REMOVED_SEVERE)
    )
    if np.all(keep):
        return ds
    cs = np.concatenate([[0], np.cumsum(keep)])
    counts = cs[ds.att_ptr[1:]] - cs[ds.att_ptr[:-1]]
    new_ptr = np.concatenate([[0], np.cumsum(counts)])
    return DaySessions(
        ds.day, ds.session_class, ds.duration, ds.att_person[keep], new_ptr
    )


def _evaluate_sessions(
    ds: DaySessions,
    pop: Population,
    etas: np.ndarray,
    tparams: TransmissionParams,
    rng: np.random.Generator,
) -> np.ndarray:
    """All of one day's sessions at once; returns newly infected person idx.

    Infector sets are fixed at day start, so nobody infected today transmits
    today (class time is far below the incubation period). A person hit in
    several sessions is infected once.
    """
    if ds.n_sessions == 0 or len(ds.att_person) == 0:
        return np.empty(0, dtype=np.int64)
    att = ds.att_person
    att_state = pop.state[att]
    inf_row = (
        (att_state == int(S.TRANSMITTING))
        | (att_state == int(S.ASYMPTOMATIC))
        | (att_state == int(S.SYMPTOMATIC))
    )
    q_contrib = np.where(inf_row, 1.0 - etas[att], 0.0)
    cs = np.concatenate([[0.0], np.cumsum(q_contrib)])
    q_sum = tparams.quantum_rate * (cs[ds.att_ptr[1:]] - cs[ds.att_ptr[:-1]])
    if not np.any(q_sum > 0):
        return np.empty(0, dtype=np.int64)

    n_att = np.diff(ds.att_ptr)
    r_m = tparams.distancing_ft * FT_TO_M
    volume = np.maximum(n_att, 1) * math.pi * r_m * r_m * tparams.ceiling_height
    big_q = tparams.air_changes * volume

    session_of_row = np.repeat(
        np.arange(ds.n_sessions), n_att
    )
    sus_row = att_state == int(S.SUSCEPTIBLE)
    rows = np.flatnonzero(sus_row)
    if len(rows) == 0:
        return np.empty(0, dtype=np.int64)
    s_of = session_of_row[rows]
    x = (
        tparams.pulmonary_rate
        * (1.0 - etas[att[rows]])
        * q_sum[s_of]
        * ds.duration[s_of]
        / big_q[s_of]
    )
    probs = -np.expm1(-x) if tparams.use_exact else np.minimum(x, 1.0)
    hit = rng.random(len(rows)) < probs
    return np.unique(att[rows[hit]])


def run_single(
    scenario: Scenario,
    seed: int | SeedSequence,
    event_sequence: EventSequence | None = None,
    keep_test_log: bool = False,
) -> SimulationResult:
    """One seeded replication: outside infections, sessions, testing,
    progression, in that daily order. Fully deterministic given the seed."""
    ss = seed if isinstance(seed, SeedSequence) else SeedSequence(seed)
    (mask_ss, attend_ss, seed_ss, outside_ss, session_ss, test_ss) = ss.spawn(6)

    index = scenario.index
    policy = scenario.policy
    pparams = scenario.progression
    tparams = scenario.effective_transmission()
    opts = scenario.options
    horizon = opts.horizon

    etas = resolve_mask_etas(index, policy, np.random.default_rng(mask_ss))
    if event_sequence is None:
        event_sequence = sample_event_sequence(
            index, opts.attendance_rate, horizon,
            np.random.default_rng(attend_ss),
        )

    pop = Population(index.n_people, index.is_student)
    prog.seed_initial_infections(
        pop, pparams, np.random.default_rng(seed_ss)
    )
    prog.advance_day(pop, 0)

    outside_rng = np.random.default_rng(outside_ss)
    session_rng = np.random.default_rng(session_ss)
    test_rng = np.random.default_rng(test_ss)

    tstate = TestingState()
    window = policy.testing.ct_window_days
    history: deque[DaySessions] = deque(maxlen=window + 1)

    metric_mask = (
        np.ones(index.n_people, dtype=bool)
        if opts.include_instructors_in_metric
        else index.is_student
    )
    cum_campus = np.zeros(horizon, dtype=np.int64)
    cum_all = np.zeros(horizon, dtype=np.int64)

    for day in range(horizon):
        prog.apply_outside_infection(pop, day, pparams, outside_rng)

        if day >= policy.online_until_day:
            ds = _filter_quarantined(event_sequence.days[day], pop.state)
            new_idx = _evaluate_sessions(ds, pop, etas, tparams, session_rng)
            if len(new_idx):
                prog.infect(
                    pop, new_idx, day, prog.SOURCE_CAMPUS, pparams,
                    session_rng,
                )
        else:
            ds = DaySessions(
                day,
                np.empty(0, dtype=np.int64),
                np.empty(0, dtype=float),
                np.empty(0, dtype=np.int64),
                np.zeros(1, dtype=np.int64),
            )
        history.append(ds)

        if policy.testing.enabled:
            run_daily_testing(
                pop, history, policy.testing, day, test_rng, tstate,
                severe_prob=pparams.severe_prob,
            )

        prog.advance_day(pop, day + 1)

        infected = pop.source != prog.SOURCE_NONE
        cum_campus[day] = int(
            np.sum(infected & (pop.source == prog.SOURCE_CAMPUS) & metric_mask)
        )
        cum_all[day] = int(np.sum(infected & metric_mask))

    new_per_day = np.diff(cum_all, prepend=0)
    result = SimulationResult(
        daily_cumulative_campus=cum_campus,
        daily_cumulative_all=cum_all,
        per_day_new_infections=new_per_day,
        final_state_counts={s.name: c for s, c in pop.state_counts().items()},
        tests_administered=len(tstate.records),
    )
    if keep_test_log:
        result.test_log = tstate.records  # type: ignore[attr-defined]
    return result


_WORKER_SCENARIO: Scenario | None = None
_WORKER_BASE_SEED: int | None = None


def _init_worker(scenario: Scenario, base_seed: int) -> None:
    global _WORKER_SCENARIO, _WORKER_BASE_SEED
    _WORKER_SCENARIO = scenario
    _WORKER_BASE_SEED = base_seed


def _run_replication(i: int) -> SimulationResult:
    return run_single(_WORKER_SCENARIO, replication_seed(_WORKER_BASE_SEED, i))


def run_ensemble(
    scenario: Scenario,
    n_runs: int,
    base_seed: int,
    parallelism: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> EnsembleResult:
    """Seeded Monte Carlo ensemble; identical output at any parallelism."""
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    scenario.index  # build once, share read-only

    results: list[SimulationResult]
    if parallelism <= 1:
        results = []
        for i in range(n_runs):
            results.append(run_single(scenario, replication_seed(base_seed, i)))
            if progress:
                progress(i + 1, n_runs)
    else:
        with ProcessPoolExecutor(
            max_workers=parallelism,
            initializer=_init_worker,
            initargs=(scenario, base_seed),
        ) as ex:
            results = []
            for res in ex.map(_run_replication, range(n_runs), chunksize=4):
                results.append(res)
                if progress:
                    progress(len(results), n_runs)

    campus = np.stack([r.daily_cumulative_campus for r in results]).astype(float)
    allsrc = np.stack([r.daily_cumulative_all for r in results]).astype(float)
    chosen = campus if scenario.options.metric == METRIC_CAMPUS else allsrc

    def ci(mat: np.ndarray) -> np.ndarray:
        if n_runs < 2:
            return np.zeros(mat.shape[1])
        return 1.96 * mat.std(axis=0, ddof=1) / math.sqrt(n_runs)

    return EnsembleResult(
        metric=scenario.options.metric,
        mean_series=chosen.mean(axis=0),
        ci_half_width=ci(chosen),
        run_count=n_runs,
        per_run_finals=chosen[:, -1].copy(),
        mean_all_series=allsrc.mean(axis=0),
        ci_all_half_width=ci(allsrc),
        per_run_all_finals=allsrc[:, -1].copy(),
    )


def compare_scenarios(
    network: BipartiteNetwork,
    presets: Sequence[ScenarioPreset],
    n_runs: int,
    base_seed: int,
    transmission: TransmissionParams | None = None,
    progression_params: ProgressionParams | None = None,
    options: EngineOptions | None = None,
    parallelism: int = 1,
    common_random_numbers: bool = True,
    week_end_days: Sequence[int] = WEEK_END_DAYS,
) -> dict[str, dict]:
    """Week-end mean cumulative infections per preset, shared inputs.

    With common random numbers every preset reuses the same replication
    seeds, sharpening the comparison.
    """
    out: dict[str, dict] = {}
    for k, preset in enumerate(presets):
        scenario = Scenario(
            network=network,
            policy=preset.policy,
            transmission=transmission or TransmissionParams(),
            progression=progression_params or ProgressionParams(),
            options=options or EngineOptions(),
        )
        seed = base_seed if common_random_numbers else base_seed + 1_000_003 * k
        ens = run_ensemble(scenario, n_runs, seed, parallelism=parallelism)
        out[preset.name] = {
            "weeks": ens.week_end_means(week_end_days),
            "ensemble": ens,
        }
    return out
