"""Local scenario service: submit configs, run ensembles, poll, fetch."""

from __future__ import annotations

import hashlib
import json
import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .engine import run_ensemble
from .network import NetworkError
from .policy import sunrise_presets
from .results import ensemble_to_doc, read_ensemble_json, write_ensemble_json
from .scenario import (
    ConfigError,
    apply_preset,
    build_scenario,
    default_config,
    scenario_id,
    validate_config,
)


class ScenarioSubmission(BaseModel):
    config: dict = Field(default_factory=dict)


class EnsembleRequest(BaseModel):
    runs: int = 100
    seed: int = 0


def json_safe(value):
    """Replace non-finite floats with the spelling the validator accepts.

    Strict JSON has no Infinity literal, so an unbounded modality cap is
    transported as the string "inf" and converted back on validation.
    """
    if isinstance(value, dict):
        return {k: json_safe(v) for k, v in value.items()}
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def run_key(sid: str, seed: int, runs: int) -> str:
    return hashlib.sha256(f"{sid}:{seed}:{runs}".encode()).hexdigest()[:16]


class JobRegistry:
    """In-memory run tracking; finished results live on disk only."""

    def __init__(self):
        self.lock = threading.Lock()
        self.jobs: dict[str, dict] = {}

    def get(self, run_id: str) -> dict | None:
        with self.lock:
            job = self.jobs.get(run_id)
            return dict(job) if job else None

    def put(self, run_id: str, **fields) -> None:
        with self.lock:
            self.jobs.setdefault(run_id, {}).update(fields)


def create_app(data_dir: str | Path, parallelism: int = 1) -> FastAPI:
    data_dir = Path(data_dir)
    scenarios_dir = data_dir / "scenarios"
    results_dir = data_dir / "results"
    scenarios_dir.mkdir(parents=True, exist_ok=True)
    results_dir.mkdir(parents=True, exist_ok=True)

    app = FastAPI(title="campussim service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = JobRegistry()
    executor = ThreadPoolExecutor(max_workers=max(1, parallelism))

    def scenario_path(sid: str) -> Path:
        return scenarios_dir / f"{sid}.json"

    def result_path(run_id: str) -> Path:
        return results_dir / f"{run_id}.json"

    @app.post("/scenarios")
    def create_scenario(body: ScenarioSubmission):
        try:
            resolved = validate_config(body.config)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        sid = scenario_id(resolved)
        path = scenario_path(sid)
        created = not path.exists()
        if created:
            path.write_text(
                json.dumps(
                    {
                        "id": sid,
                        "config": json_safe(resolved),
                        "created_at": time.time(),
                    },
                    sort_keys=True,
                    default=str,
                )
            )
        return {"id": sid, "created": created}

    @app.get("/scenarios/{sid}")
    def get_scenario(sid: str):
        path = scenario_path(sid)
        if not path.exists():
            raise HTTPException(status_code=404, detail="unknown scenario")
        return json.loads(path.read_text())

    @app.get("/presets")
    def list_presets():
        base = validate_config(default_config())
        out = []
        for preset in sunrise_presets(base["engine"]["horizon_days"]):
            cfg = apply_preset(base, preset.policy)
            out.append(
                {
                    "name": preset.name,
                    "policy": json_safe(cfg["policy"]),
                    "testing": cfg["testing"],
                }
            )
        return out

    def execute(run_id: str, resolved: dict, runs: int, seed: int, sid: str):
        try:
            registry.put(run_id, state="running")
            scenario, _ = build_scenario(resolved)

            def progress(done: int, total: int) -> None:
                registry.put(run_id, completed_runs=done)

            ens = run_ensemble(scenario, runs, seed, progress=progress)
            meta = {"scenario_id": sid, "base_seed": seed, "runs": runs}
            write_ensemble_json(ens, meta, result_path(run_id))
            registry.put(run_id, state="done", completed_runs=runs)
        except (NetworkError, ConfigError, ValueError) as exc:
            registry.put(run_id, state="failed", error=str(exc))

    @app.post("/scenarios/{sid}/ensembles")
    def start_ensemble(sid: str, body: EnsembleRequest):
        path = scenario_path(sid)
        if not path.exists():
            raise HTTPException(status_code=404, detail="unknown scenario")
        if body.runs < 1:
            raise HTTPException(status_code=400, detail="runs must be >= 1")
        run_id = run_key(sid, body.seed, body.runs)
        if result_path(run_id).exists():
            return {"run_id": run_id, "state": "done"}
        job = registry.get(run_id)
        if job and job["state"] in ("queued", "running"):
            raise HTTPException(
                status_code=409,
                detail=f"ensemble {run_id} already {job['state']}",
            )
        resolved = json.loads(path.read_text())["config"]
        resolved = validate_config(resolved)
        registry.put(
            run_id,
            state="queued",
            scenario_id=sid,
            completed_runs=0,
            total_runs=body.runs,
            seed=body.seed,
        )
        executor.submit(execute, run_id, resolved, body.runs, body.seed, sid)
        return {"run_id": run_id, "state": "queued"}

    @app.get("/ensembles/{run_id}/status")
    def ensemble_status(run_id: str):
        job = registry.get(run_id)
        if job is None:
            if result_path(run_id).exists():
                doc = json.loads(result_path(run_id).read_text())
                n = doc["run_count"]
                return {
                    "run_id": run_id, "state": "done",
                    "completed_runs": n, "total_runs": n,
                }
            raise HTTPException(status_code=404, detail="unknown run id")
        return {
            "run_id": run_id,
            "state": job["state"],
            "completed_runs": job.get("completed_runs", 0),
            "total_runs": job.get("total_runs", 0),
            **({"error": job["error"]} if "error" in job else {}),
        }

    @app.get("/ensembles/{run_id}/results")
    def ensemble_results(run_id: str):
        path = result_path(run_id)
        if path.exists():
            # serve the stored document verbatim so clients can rely on the
            # exact exported bytes, not a re-serialization of them
            return Response(
                content=path.read_bytes(), media_type="application/json"
            )
        job = registry.get(run_id)
        if job is None:
            raise HTTPException(status_code=404, detail="unknown run id")
        if job["state"] == "failed":
            raise HTTPException(
                status_code=409, detail=f"run failed: {job.get('error')}"
            )
        raise HTTPException(
            status_code=409, detail=f"run is {job['state']}, poll status"
        )

    return app
