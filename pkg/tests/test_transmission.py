import math

import numpy as np
import pytest

from campussim.transmission import (
    FT_TO_M,
    INFECTIOUS,
    MASK_EFFICIENCY,
    OTHER,
    SUSCEPTIBLE,
    SessionContext,
    TransmissionParams,
    class_session_infections,
    effective_rates,
    infection_probability_exact,
    infection_probability_linear,
    mask_eta,
    room_volume,
    session_infection_probabilities,
)


class TestRoomVolume:
    def test_single_occupant_two_feet(self):
        # pi * (2 ft in m)^2 * 3 m ceiling
        assert room_volume(1, 2.0, 3.0) == pytest.approx(3.5023621, abs=1e-6)

    def test_thirty_occupants(self):
        assert room_volume(30, 2.0, 3.0) == pytest.approx(105.070863, abs=1e-5)

    def test_scales_linearly_with_occupancy(self):
        assert room_volume(10, 2.0, 3.0) == pytest.approx(
            10 * room_volume(1, 2.0, 3.0)
        )

    def test_scales_quadratically_with_distance(self):
        assert room_volume(1, 6.0, 3.0) == pytest.approx(
            9 * room_volume(1, 2.0, 3.0)
        )

    def test_empty_room_raises(self):
        with pytest.raises(ValueError):
            room_volume(0, 2.0, 3.0)

    def test_feet_conversion_constant(self):
        assert FT_TO_M == pytest.approx(0.3048)


class TestInfectionProbability:
    def test_worked_example_exact(self):
        p = infection_probability_exact(1, 0.48, 20.0, 1.0, 500.0)
        assert p == pytest.approx(0.019017, abs=5e-7)

    def test_worked_example_linear(self):
        p = infection_probability_linear(1, 0.48, 20.0, 1.0, 500.0)
        assert p == pytest.approx(0.0192, abs=5e-7)

    def test_linear_dominates_exact(self):
        for x in np.linspace(0.0, 0.5, 51):
            lin = infection_probability_linear(1, x, 1, 1, 1)
            exa = infection_probability_exact(1, x, 1, 1, 1)
            assert 0.0 <= lin - exa <= x * x / 2 + 1e-12

    def test_linear_clamps_at_one(self):
        assert infection_probability_linear(10, 1.0, 100.0, 1.0, 1.0) == 1.0

    def test_exact_stays_below_one(self):
        assert infection_probability_exact(1, 0.48, 20.0, 1.0, 1.0) < 1.0
        assert infection_probability_exact(10, 1.0, 100.0, 1.0, 1.0) <= 1.0

    def test_zero_infectors_zero_probability(self):
        assert infection_probability_exact(0, 0.48, 20, 1, 100) == 0.0
        assert infection_probability_linear(0, 0.48, 20, 1, 100) == 0.0

    def test_nonpositive_ventilation_raises(self):
        with pytest.raises(ValueError):
            infection_probability_exact(1, 0.48, 20, 1, 0.0)
        with pytest.raises(ValueError):
            infection_probability_linear(1, 0.48, 20, 1, -1.0)


class TestMasks:
    def test_efficiency_table(self):
        assert MASK_EFFICIENCY == {
            "none": 0.0, "cloth": 0.38, "medical": 0.55, "n95": 0.95,
        }

    def test_eta_zero_when_not_worn(self):
        assert mask_eta(False, "n95") == 0.0
        assert mask_eta(True, "n95") == 0.95

    def test_effective_rates_no_masks(self):
        p_eff, q_sum = effective_rates([0.0, 0.0, 0.0], 0.0, 0.48, 20.0)
        assert p_eff == 0.48
        assert q_sum == pytest.approx(60.0)

    def test_heterogeneous_infector_masks(self):
        # one cloth, one n95 infector: emissions combine per infector
        p_eff, q_sum = effective_rates([0.38, 0.95], 0.55, 0.48, 20.0)
        assert p_eff == pytest.approx(0.48 * 0.45)
        assert q_sum == pytest.approx(20.0 * (0.62 + 0.05))


class TestSessionContext:
    def ctx(self, attendees, duration=1.0, **kw):
        return SessionContext(attendees, duration, **kw)

    def test_room_volume_tracks_attendance(self):
        ctx = self.ctx([("a", SUSCEPTIBLE, False, "none")] * 30)
        assert ctx.room_volume() == pytest.approx(105.070863, abs=1e-5)
        assert ctx.ventilation() == pytest.approx(420.283451, abs=1e-4)

    def test_no_infectors_no_infections(self, rng):
        ctx = self.ctx([("a", SUSCEPTIBLE, False, "none")] * 5)
        assert class_session_infections(ctx, TransmissionParams(), rng) == set()

    def test_only_susceptibles_can_be_infected(self):
        attendees = [
            ("inf", INFECTIOUS, False, "none"),
            ("sus", SUSCEPTIBLE, False, "none"),
            ("rec", OTHER, False, "none"),
        ]
        ctx = self.ctx(attendees, duration=100.0)
        hit = class_session_infections(
            ctx, TransmissionParams(), np.random.default_rng(0)
        )
        assert hit <= {"sus"}

    def test_mask_lowers_hit_rate(self):
        def rate(mask):
            hits = 0
            rng = np.random.default_rng(1)
            for _ in range(2000):
                ctx = self.ctx(
                    [
                        ("inf", INFECTIOUS, mask, "n95"),
                        ("sus", SUSCEPTIBLE, mask, "n95"),
                    ],
                    duration=2.0,
                )
                hits += len(
                    class_session_infections(ctx, TransmissionParams(), rng)
                )
            return hits / 2000

        assert rate(True) < rate(False) * 0.2

    def test_matches_linear_formula(self):
        # long average over one susceptible must match the closed form
        attendees = [
            ("inf", INFECTIOUS, False, "none"),
            ("sus", SUSCEPTIBLE, False, "none"),
        ]
        ctx = self.ctx(attendees, duration=1.0)
        want = infection_probability_linear(
            1, 0.48, 20.0, 1.0, ctx.ventilation()
        )
        rng = np.random.default_rng(5)
        hits = sum(
            len(class_session_infections(ctx, TransmissionParams(), rng))
            for _ in range(20000)
        )
        assert hits / 20000 == pytest.approx(want, rel=0.05)


class TestVectorizedProbabilities:
    def test_matches_scalar_form(self):
        params = TransmissionParams()
        probs = session_infection_probabilities(
            np.array([0.0, 0.38]), np.array([0.0]), 1.5, 10, params
        )
        big_q = params.air_changes * room_volume(10, 2.0, 3.0)
        for eta, got in zip([0.0, 0.38], probs):
            want = infection_probability_linear(
                1, 0.48 * (1 - eta), 20.0, 1.5, big_q
            )
            assert got == pytest.approx(want)

    def test_exact_variant(self):
        params = TransmissionParams(use_exact=True)
        probs = session_infection_probabilities(
            np.array([0.0]), np.array([0.0, 0.0]), 1.0, 5, params
        )
        big_q = params.air_changes * room_volume(5, 2.0, 3.0)
        want = infection_probability_exact(1, 0.48, 40.0, 1.0, big_q)
        assert probs[0] == pytest.approx(want)

    def test_no_infectors(self):
        probs = session_infection_probabilities(
            np.array([0.0, 0.0]), np.array([]), 1.0, 2, TransmissionParams()
        )
        assert np.all(probs == 0.0)


class TestTransmissionParams:
    def test_defaults(self):
        params = TransmissionParams()
        assert params.pulmonary_rate == 0.48
        assert params.quantum_rate == 20.0
        assert params.air_changes == 4.0
        assert params.ceiling_height == 3.0
        assert params.use_exact is False

    def test_nonpositive_rate_rejected(self):
        with pytest.raises(ValueError):
            TransmissionParams(pulmonary_rate=0.0)
        with pytest.raises(ValueError):
            TransmissionParams(air_changes=-1.0)
