"""Scenario configuration: one validator shared by the CLI and the service."""

from __future__ import annotations

import configparser
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .engine import EngineOptions, Scenario
from .enrollment import generate_synthetic_campus, load_enrollment
from .network import BipartiteNetwork
from .policy import PolicyConfig
from .progression import ProgressionParams
from .testing import TestingConfig
from .transmission import MASK_EFFICIENCY, TransmissionParams


class ConfigError(Exception):
    pass


def _bool(v):
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("true", "yes", "on", "1"):
        return True
    if s in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {v!r}")


def _cap(v):
    s = str(v).strip().lower()
    if s in ("inf", "infinity", "none", "all"):
        return math.inf
    return int(s)


def _choice(*options):
    def conv(v):
        s = str(v).strip()
        if s not in options:
            raise ValueError(f"must be one of {options}, got {s!r}")
        return s
    return conv


MASK_TYPES = tuple(MASK_EFFICIENCY)

# section -> key -> (converter, default)
SCHEMA = {
    "network": {
        "source": (_choice("synthetic", "file"), "synthetic"),
        "enrollment_file": (str, ""),
        "scale": (float, 0.043),
        "synthetic_seed": (int, 1),
        "departments": (int, 20),
        "p1": (float, 0.7),
        "p2": (float, 0.2),
        "p3": (float, 0.1),
        "meetings_per_week": (int, 2),
        "duration_hours": (float, 1.0),
        "attendance_rate": (float, 1.0),
    },
    "transmission": {
        "pulmonary_rate": (float, 0.48),
        "quantum_rate": (float, 20.0),
        "air_changes": (float, 4.0),
        "ceiling_height": (float, 3.0),
        "use_exact_wells_riley": (_bool, False),
    },
    "progression": {
        "incubation_shape": (float, 1.97),
        "incubation_scale": (float, 9.35),
        "symptomatic_prob": (float, 0.65),
        "contagious_shape": (float, 3.0),
        "contagious_scale": (float, 2.6),
        "severe_prob": (float, 0.0),
        "outside_infections_per_day": (int, 5),
        "initial_infected_fraction": (float, 0.01),
        "initial_infection_age_max_days": (int, 5),
    },
    "testing": {
        "enabled": (_bool, False),
        "daily_capacity": (int, 0),
        "sensitivity": (float, 0.967),
        "specificity": (float, 1.0),
        "gap_days": (int, 3),
        "ct_window_days": (int, 3),
        "false_positive_isolation_days": (int, 14),
    },
    "policy": {
        "student_mask_type": (_choice(*MASK_TYPES), "none"),
        "student_mask_compliance": (float, 0.0),
        "instructor_mask_type": (_choice(*MASK_TYPES), "none"),
        "instructor_mask_compliance": (float, 0.0),
        "distancing_feet": (float, 2.0),
        "modality_cap": (_cap, math.inf),
        "online_until_day": (int, 0),
    },
    "engine": {
        "horizon_days": (int, 84),
        "runs": (int, 1000),
        "base_seed": (int, 0),
        "parallelism": (int, 1),
        "metric": (_choice("campus", "all"), "campus"),
        "include_instructors_in_metric": (_bool, False),
    },
}


def default_config() -> dict:
    """Fully resolved default scenario config (every known key present)."""
    return {
        section: {key: default for key, (_, default) in keys.items()}
        for section, keys in SCHEMA.items()
    }


def validate_config(raw: dict) -> dict:
    """Resolve a (possibly partial) config dict against the schema.

    Unknown sections or keys are errors, so typos never pass silently.
    """
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping of sections")
    resolved = default_config()
    for section, entries in raw.items():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        if not isinstance(entries, dict):
            raise ConfigError(f"section [{section}] must be a mapping")
        for key, value in entries.items():
            if key not in SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
            conv, _ = SCHEMA[section][key]
            try:
                resolved[section][key] = conv(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(
                    f"bad value for {section}.{key}: {exc}"
                ) from exc
    net = resolved["network"]
    if net["source"] == "file" and not net["enrollment_file"]:
        raise ConfigError("network.source=file requires network.enrollment_file")
    if abs(net["p1"] + net["p2"] + net["p3"] - 1.0) > 1e-9:
        raise ConfigError("network.p1 + p2 + p3 must equal 1")
    return resolved


def parse_config_file(path: str | Path) -> dict:
    """Parse an INI scenario file; errors carry the offending key or line."""
    parser = configparser.ConfigParser(
        inline_comment_prefixes=("#", ";"), interpolation=None
    )
    try:
        text = Path(path).read_text(encoding="utf-8")
        parser.read_string(text, source=str(path))
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    raw = {s: dict(parser.items(s)) for s in parser.sections()}
    return validate_config(raw)


def scenario_id(resolved: dict) -> str:
    """Content hash of a canonicalized, fully resolved config."""
    canonical = json.dumps(resolved, sort_keys=True, default=str)
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


@dataclass
class RunSettings:
    runs: int
    base_seed: int
    parallelism: int


def build_network(resolved: dict) -> BipartiteNetwork:
    net_cfg = resolved["network"]
    if net_cfg["source"] == "file":
        return load_enrollment(net_cfg["enrollment_file"])
    return generate_synthetic_campus(
        scale=net_cfg["scale"],
        seed=net_cfg["synthetic_seed"],
        departments=net_cfg["departments"],
        p1=net_cfg["p1"],
        p2=net_cfg["p2"],
        p3=net_cfg["p3"],
        meetings_per_week=net_cfg["meetings_per_week"],
        duration_hours=net_cfg["duration_hours"],
    )


def build_policy(resolved: dict) -> PolicyConfig:
    t = resolved["testing"]
    p = resolved["policy"]
    return PolicyConfig(
        student_mask_type=p["student_mask_type"],
        instructor_mask_type=p["instructor_mask_type"],
        student_mask_compliance=p["student_mask_compliance"],
        instructor_mask_compliance=p["instructor_mask_compliance"],
        distancing_ft=p["distancing_feet"],
        modality_cap=p["modality_cap"],
        online_until_day=p["online_until_day"],
        testing=TestingConfig(
            enabled=t["enabled"],
            daily_capacity=t["daily_capacity"],
            sensitivity=t["sensitivity"],
            specificity=t["specificity"],
            gap_days=t["gap_days"],
            ct_window_days=t["ct_window_days"],
            false_positive_isolation_days=t["false_positive_isolation_days"],
        ),
    )


def build_scenario(
    resolved: dict, network: BipartiteNetwork | None = None
) -> tuple[Scenario, RunSettings]:
    """Materialize a validated config into engine inputs."""
    tr = resolved["transmission"]
    pr = resolved["progression"]
    en = resolved["engine"]
    policy = build_policy(resolved)
    scenario = Scenario(
        network=network if network is not None else build_network(resolved),
        policy=policy,
        transmission=TransmissionParams(
            pulmonary_rate=tr["pulmonary_rate"],
            quantum_rate=tr["quantum_rate"],
            air_changes=tr["air_changes"],
            ceiling_height=tr["ceiling_height"],
            distancing_ft=policy.distancing_ft,
            use_exact=tr["use_exact_wells_riley"],
        ),
        progression=ProgressionParams(
            incubation_shape=pr["incubation_shape"],
            incubation_scale=pr["incubation_scale"],
            symptomatic_prob=pr["symptomatic_prob"],
            contagious_shape=pr["contagious_shape"],
            contagious_scale=pr["contagious_scale"],
            severe_prob=pr["severe_prob"],
            outside_infections_per_day=pr["outside_infections_per_day"],
            initial_infected_fraction=pr["initial_infected_fraction"],
            initial_infection_age_max_days=pr["initial_infection_age_max_days"],
        ),
        options=EngineOptions(
            horizon=en["horizon_days"],
            attendance_rate=resolved["network"]["attendance_rate"],
            include_instructors_in_metric=en["include_instructors_in_metric"],
            metric=en["metric"],
        ),
    )
    settings = RunSettings(
        runs=en["runs"],
        base_seed=en["base_seed"],
        parallelism=en["parallelism"],
    )
    return scenario, settings


def apply_preset(resolved: dict, preset_policy: PolicyConfig) -> dict:
    """Overlay a preset's policy and testing choices on a resolved config."""
    out = json.loads(json.dumps(resolved, default=str))
    out["policy"] = {
        "student_mask_type": preset_policy.student_mask_type,
        "student_mask_compliance": preset_policy.student_mask_compliance,
        "instructor_mask_type": preset_policy.instructor_mask_type,
        "instructor_mask_compliance": preset_policy.instructor_mask_compliance,
        "distancing_feet": preset_policy.distancing_ft,
        "modality_cap": preset_policy.modality_cap,
        "online_until_day": preset_policy.online_until_day,
    }
    out["testing"] = {
        "enabled": preset_policy.testing.enabled,
        "daily_capacity": preset_policy.testing.daily_capacity,
        "sensitivity": preset_policy.testing.sensitivity,
        "specificity": preset_policy.testing.specificity,
        "gap_days": preset_policy.testing.gap_days,
        "ct_window_days": preset_policy.testing.ct_window_days,
        "false_positive_isolation_days":
            preset_policy.testing.false_positive_isolation_days,
    }
    return validate_config(out)
