"""Per-session infection risk: room geometry, masks, and the two model forms.

Run: python3 demos/02_wells_riley_room.py
"""

from campussim import (
    MASK_EFFICIENCY,
    infection_probability_exact,
    infection_probability_linear,
    room_volume,
)
from campussim.transmission import effective_rates

P_BREATH = 0.48  # m^3/h inhaled by a susceptible
Q_QUANTA = 20.0  # quanta/h emitted per infector
ACH = 4.0        # room air changes per hour

print("room volume grows with occupancy and the distancing radius:")
for n, dist in [(30, 2.0), (30, 6.0), (150, 2.0)]:
    vol = room_volume(n, dist, 3.0)
    print(f"  {n:>3} people at {dist:.0f} ft -> {vol:8.1f} m^3")

print("\none infector, one-hour class, varying room size:")
for n in (10, 30, 150):
    big_q = ACH * room_volume(n, 2.0, 3.0)
    lin = infection_probability_linear(1, P_BREATH, Q_QUANTA, 1.0, big_q)
    exa = infection_probability_exact(1, P_BREATH, Q_QUANTA, 1.0, big_q)
    print(f"  {n:>3} attendees: linear {lin:.5f}  exact {exa:.5f}")

print("\nmasks cut both emission (infector) and intake (susceptible):")
big_q = ACH * room_volume(30, 2.0, 3.0)
for mask, eta in MASK_EFFICIENCY.items():
    p_eff, q_sum = effective_rates([eta], eta, P_BREATH, Q_QUANTA)
    prob = infection_probability_linear(1, p_eff, q_sum, 1.0, big_q)
    print(f"  both in {mask:<8} (eta {eta:.2f}) -> {prob:.5f}")
