"""Command-line entry points: run ensembles, generate campuses, serve."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import WEEK_END_DAYS, run_ensemble
from .enrollment import generate_synthetic_campus
from .network import NetworkError
from .policy import sunrise_presets
from .results import write_ensemble_csv, write_ensemble_json
from .scenario import (
    ConfigError,
    apply_preset,
    build_network,
    build_scenario,
    default_config,
    parse_config_file,
    scenario_id,
    validate_config,
)

EXIT_CONFIG_ERROR = 2
EXIT_INFEASIBLE = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="campussim",
        description="Campus infection simulator: seeded Monte Carlo "
        "ensembles under composable operating policies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an ensemble for a scenario file")
    run.add_argument("scenario", nargs="?", help="scenario .ini file "
                     "(defaults apply when omitted)")
    run.add_argument("--runs", type=int, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--parallel", type=int, default=None)
    run.add_argument("--out", type=Path, default=Path("results"))
    run.add_argument(
        "--preset",
        help="policy preset name (NoPolicy, M, PD+M, CM+PD+M, T+CM+PD+M, "
        "RCM+T+PD+M) or 'sunrise-all' for the whole staged comparison",
    )
    run.add_argument("--campus", choices=["synthetic", "file"], default=None)

    synth = sub.add_parser("synth", help="write a synthetic enrollment file")
    synth.add_argument("--scale", type=float, default=0.043)
    synth.add_argument("--seed", type=int, default=1)
    synth.add_argument("--departments", type=int, default=20)
    synth.add_argument("--out", type=Path, required=True)

    serve = sub.add_parser("serve", help="start the local scenario service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--data-dir", type=Path, default=Path("campussim-data"))
    serve.add_argument("--parallel", type=int, default=1)
    return parser


def _print_week_table(rows: dict[str, dict[int, float]]) -> None:
    days = WEEK_END_DAYS
    header = "scenario".ljust(14) + "".join(
        f"wk{d // 7:>2}".rjust(10) for d in days
    )
    print(header)
    for name, weeks in rows.items():
        print(
            name.ljust(14)
            + "".join(f"{weeks.get(d, float('nan')):>10.1f}" for d in days)
        )


def cli_run(args) -> int:
    try:
        resolved = (
            parse_config_file(args.scenario)
            if args.scenario
            else validate_config(default_config())
        )
        if args.campus:
            resolved["network"]["source"] = args.campus
            resolved = validate_config(resolved)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    horizon = resolved["engine"]["horizon_days"]
    presets = {p.name: p for p in sunrise_presets(horizon)}
    preset_names: list[str | None]
    if args.preset == "sunrise-all":
        preset_names = list(presets)
    elif args.preset:
        if args.preset not in presets:
            print(
                f"config error: unknown preset {args.preset!r} "
                f"(known: {', '.join(presets)}, sunrise-all)",
                file=sys.stderr,
            )
            return EXIT_CONFIG_ERROR
        preset_names = [args.preset]
    else:
        preset_names = [None]

    try:
        network = build_network(resolved)
    except NetworkError as exc:
        print(f"network generation failed: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE

    args.out.mkdir(parents=True, exist_ok=True)
    table: dict[str, dict[int, float]] = {}
    for name in preset_names:
        cfg = (
            apply_preset(resolved, presets[name].policy)
            if name is not None
            else resolved
        )
        try:
            scenario, settings = build_scenario(cfg, network=network)
        except (ConfigError, ValueError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG_ERROR
        runs = args.runs if args.runs is not None else settings.runs
        seed = args.seed if args.seed is not None else settings.base_seed
        par = args.parallel if args.parallel is not None else settings.parallelism
        sid = scenario_id(cfg)
        try:
            ens = run_ensemble(scenario, runs, seed, parallelism=par)
        except NetworkError as exc:
            print(f"network generation failed: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
        meta = {"scenario_id": sid, "base_seed": seed, "runs": runs}
        if name:
            meta["preset"] = name
        stem = f"{name or 'scenario'}-{sid}-s{seed}-n{runs}".replace("+", "_")
        write_ensemble_json(ens, meta, args.out / f"{stem}.json")
        write_ensemble_csv(ens, meta, args.out / f"{stem}.csv")
        table[name or "scenario"] = ens.week_end_means()
    _print_week_table(table)
    return 0


def cli_synth(args) -> int:
    try:
        net = generate_synthetic_campus(
            scale=args.scale,
            seed=args.seed,
            departments=args.departments,
            out_path=args.out,
        )
    except NetworkError as exc:
        print(f"network generation failed: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    counts = net.meta.get("category_counts", ())
    print(
        f"wrote {args.out}: {len(net.students())} students, "
        f"{len(net.classes)} classes, {len(net.instructors())} instructors "
        f"(pick categories {counts})"
    )
    return 0


def cli_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.data_dir, parallelism=args.parallel)
    uvicorn.run(app, host="127.0.0.1", port=args.port)
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "run":
        return cli_run(args)
    if args.command == "synth":
        return cli_synth(args)
    return cli_serve(args)


if __name__ == "__main__":
    sys.exit(main())
