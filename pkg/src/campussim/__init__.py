"""Agent-based simulator of airborne infection spread on a campus."""

from .engine import (
    EngineOptions,
    EnsembleResult,
    Scenario,
    SimulationResult,
    compare_scenarios,
    run_ensemble,
    run_single,
)
from .enrollment import (
    generate_synthetic_campus,
    load_enrollment,
    write_enrollment,
)
from .network import (
    BipartiteNetwork,
    ClassSection,
    EventSequence,
    Person,
    apply_modality_cap,
    balance_degree_sequences,
    generate_campus,
    generate_configuration,
    sample_event_sequence,
)
from .policy import NO_POLICY, PolicyConfig, ScenarioPreset, sunrise_presets
from .progression import HealthState, Population, ProgressionParams
from .testing import TestingConfig
from .transmission import (
    MASK_EFFICIENCY,
    TransmissionParams,
    infection_probability_exact,
    infection_probability_linear,
    room_volume,
)

__version__ = "0.1.0"
