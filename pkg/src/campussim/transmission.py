"""Airborne infection probabilities for class sessions (Wells-Riley model)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

FT_TO_M = 0.3048

# aerosol filtration efficiency by mask type
MASK_EFFICIENCY = {
    "none": 0.0,
    "cloth": 0.38,
    "medical": 0.55,
    "n95": 0.95,
}

SUSCEPTIBLE = "susceptible"
INFECTIOUS = "infectious"
OTHER = "other"


@dataclass(frozen=True)
class TransmissionParams:
    pulmonary_rate: float = 0.48  # m^3/h breathed by a susceptible
    quantum_rate: float = 20.0  # quanta/h emitted per infector
    air_changes: float = 4.0  # room air changes per hour
    ceiling_height: float = 3.0  # m
    distancing_ft: float = 2.0  # physical-distance radius, feet
    use_exact: bool = False  # exponential form instead of the linear one

    def __post_init__(self):
        for name in ("pulmonary_rate", "quantum_rate", "air_changes",
                     "ceiling_height", "distancing_ft"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class SessionContext:
    """One class meeting: who is in the room, for how long."""

    # (person id, health status, wears mask, mask type)
    attendees: list[tuple[str, str, bool, str]]
    duration_hours: float
    distancing_ft: float = 2.0
    ceiling_height: float = 3.0
    air_changes: float = 4.0

    def room_volume(self) -> float:
        return room_volume(
            len(self.attendees), self.distancing_ft, self.ceiling_height
        )

    def ventilation(self) -> float:
        return self.air_changes * self.room_volume()


def room_volume(
    attendee_count: int, distancing_ft: float, ceiling_height_m: float
) -> float:
    """Room volume in m^3: one distancing circle per attendee, times height.

    The only place feet are converted to meters.
    """
    if attendee_count < 1:
        raise ValueError("attendee_count must be >= 1")
    r_m = distancing_ft * FT_TO_M
    return attendee_count * math.pi * r_m * r_m * ceiling_height_m


def infection_probability_exact(
    infectors: float, p: float, q: float, t: float, big_q: float
) -> float:
    """1 - exp(-I p q t / Q), the classical dose-response form."""
    if big_q <= 0:
        raise ValueError("room ventilation must be positive")
    return -math.expm1(-infectors * p * q * t / big_q)

def infection_probability_linear(
    infectors: float, p: float, q: float, t: float, big_q: float
) -> float:
    """First-order form I p q t / Q, clamped to 1.

    Always >= the exact probability; the gap is at most (I p q t / Q)^2 / 2.
    """
    if big_q <= 0:
        raise ValueError("room ventilation must be positive")
    return min(infectors * p * q * t / big_q, 1.0)


def effective_rates(
    infector_mask_etas: Sequence[float],
    susceptible_mask_eta: float,
    p: float,
    q: float,
) -> tuple[float, float]:
    """Mask-adjusted intake rate and summed emission rate.

    Returns (p_eff, q_sum_eff) where q_sum_eff replaces the product I*q so
    that infectors with different masks combine correctly; with no masks it
    reduces to (p, I*q).
    """
    p_eff = p * (1.0 - susceptible_mask_eta)
    q_sum = q * sum(1.0 - eta for eta in infector_mask_etas)
    return p_eff, q_sum


def mask_eta(wears_mask: bool, mask_type: str) -> float:
    return MASK_EFFICIENCY[mask_type] if wears_mask else 0.0


def class_session_infections(
    ctx: SessionContext,
    params: TransmissionParams,
    rng: np.random.Generator,
) -> set[str]:
    """Sample which susceptible attendees get infected in one session.

    Each susceptible is hit independently with the linear Wells-Riley
    probability (or the exact form when params.use_exact), using their own
    mask-adjusted intake and the session's summed mask-adjusted emission.
    Sessions are independent: rooms are sanitized between meetings, so
    nothing carries over.
    """
    infector_etas = [
        mask_eta(wears, mtype)
        for (_, status, wears, mtype) in ctx.attendees
        if status == INFECTIOUS
    ]
    if not infector_etas:
        return set()
    big_q = ctx.ventilation()
    prob_fn = (
        infection_probability_exact
        if params.use_exact
        else infection_probability_linear
    )
    infected: set[str] = set()
    for pid, status, wears, mtype in ctx.attendees:
        if status != SUSCEPTIBLE:
            continue
        p_eff, q_sum = effective_rates(
            infector_etas, mask_eta(wears, mtype),
            params.pulmonary_rate, params.quantum_rate,
        )
        prob = prob_fn(1.0, p_eff, q_sum, ctx.duration_hours, big_q)
        if rng.random() < prob:
            infected.add(pid)
    return infected


def session_infection_probabilities(
    susceptible_etas: np.ndarray,
    infector_etas: np.ndarray,
    duration_hours: float,
    attendee_count: int,
    params: TransmissionParams,
) -> np.ndarray:
    """Vectorized per-susceptible probability for one session."""
    if len(infector_etas) == 0:
        return np.zeros(len(susceptible_etas))
    big_q = params.air_changes * room_volume(
        attendee_count, params.distancing_ft, params.ceiling_height
    )
    q_sum = params.quantum_rate * np.sum(1.0 - infector_etas)
    x = params.pulmonary_rate * (1.0 - susceptible_etas) * q_sum
    x = x * duration_hours / big_q
    if params.use_exact:
        return -np.expm1(-x)
    return np.minimum(x, 1.0)
