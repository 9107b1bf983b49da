"""Persistence of ensemble results as JSON and delimited text."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .engine import WEEK_END_DAYS, EnsembleResult


def ensemble_to_doc(result: EnsembleResult, meta: dict) -> dict:
    """Structured document: metadata, per-day mean/CI rows, per-run finals."""
    return {
        "metadata": dict(meta),
        "metric": result.metric,
        "run_count": result.run_count,
        "weeks": {
            str(d): float(result.mean_series[d - 1])
            for d in WEEK_END_DAYS
            if d - 1 < len(result.mean_series)
        },
        "days": [
            {
                "day": d,
                "mean": float(result.mean_series[d]),
                "ci": float(result.ci_half_width[d]),
                "mean_all": float(result.mean_all_series[d]),
                "ci_all": float(result.ci_all_half_width[d]),
            }
            for d in range(len(result.mean_series))
        ],
        "per_run_finals": [float(v) for v in result.per_run_finals],
        "per_run_all_finals": [float(v) for v in result.per_run_all_finals],
    }


def doc_to_ensemble(doc: dict) -> tuple[EnsembleResult, dict]:
    days = doc["days"]
    result = EnsembleResult(
        metric=doc["metric"],
        mean_series=np.array([r["mean"] for r in days]),
        ci_half_width=np.array([r["ci"] for r in days]),
        run_count=int(doc["run_count"]),
        per_run_finals=np.array(doc["per_run_finals"]),
        mean_all_series=np.array([r["mean_all"] for r in days]),
        ci_all_half_width=np.array([r["ci_all"] for r in days]),
        per_run_all_finals=np.array(doc["per_run_all_finals"]),
    )
    return result, doc["metadata"]


def write_ensemble_json(
    result: EnsembleResult, meta: dict, path: str | Path
) -> None:
    Path(path).write_text(
        json.dumps(ensemble_to_doc(result, meta), indent=2, sort_keys=True)
        + "\n",
        encoding="utf-8",
    )


def read_ensemble_json(path: str | Path) -> tuple[EnsembleResult, dict]:
    return doc_to_ensemble(json.loads(Path(path).read_text(encoding="utf-8")))


def write_ensemble_csv(
    result: EnsembleResult, meta: dict, path: str | Path
) -> None:
    """Delimited twin of the JSON document.

    Metadata in `#` comment lines, then per-day rows, then per-run finals.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for key in sorted(meta):
            fh.write(f"# {key}={meta[key]}\n")
        fh.write(f"# metric={result.metric}\n")
        fh.write(f"# run_count={result.run_count}\n")
        writer = csv.writer(fh)
        writer.writerow(["day", "mean", "ci", "mean_all", "ci_all"])
        for d in range(len(result.mean_series)):
            writer.writerow(
                [
                    d,
                    repr(float(result.mean_series[d])),
                    repr(float(result.ci_half_width[d])),
                    repr(float(result.mean_all_series[d])),
                    repr(float(result.ci_all_half_width[d])),
                ]
            )
        writer.writerow(["run", "final", "final_all"])
        for i in range(result.run_count):
            writer.writerow(
                [
                    i,
                    repr(float(result.per_run_finals[i])),
                    repr(float(result.per_run_all_finals[i])),
                ]
            )


def read_ensemble_csv(path: str | Path) -> tuple[EnsembleResult, dict]:
    meta: dict = {}
    day_rows: list[list[str]] = []
    run_rows: list[list[str]] = []
    section = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value
                continue
            row = next(csv.reader([line]))
            if row[0] == "day":
                section = "days"
                continue
            if row[0] == "run":
                section = "runs"
                continue
            (day_rows if section == "days" else run_rows).append(row)
    result = EnsembleResult(
        metric=meta.pop("metric"),
        mean_series=np.array([float(r[1]) for r in day_rows]),
        ci_half_width=np.array([float(r[2]) for r in day_rows]),
        run_count=int(meta.pop("run_count")),
        per_run_finals=np.array([float(r[1]) for r in run_rows]),
        mean_all_series=np.array([float(r[3]) for r in day_rows]),
        ci_all_half_width=np.array([float(r[4]) for r in day_rows]),
        per_run_all_finals=np.array([float(r[2]) for r in run_rows]),
    )
    return result, meta
