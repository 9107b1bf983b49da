"""The staged reopening comparison: six presets, common random numbers.

Each preset adds one policy dimension on top of the previous one:
NoPolicy -> M (cloth masks) -> PD+M (6 ft) -> CM+PD+M (classes > 30 online)
-> T+CM+PD+M (daily testing + tracing) -> RCM+T+PD+M (first 2 weeks online).

Run: python3 demos/04_policy_comparison.py   (about 1 minute)
"""

from campussim import (
    ProgressionParams,
    compare_scenarios,
    generate_synthetic_campus,
    sunrise_presets,
)

SCALE = 0.043
net = generate_synthetic_campus(scale=SCALE, seed=1)

out = compare_scenarios(
    net,
    sunrise_presets(horizon=84, testing_capacity=round(5000 * SCALE)),
    n_runs=100,
    base_seed=11,
    progression_params=ProgressionParams(outside_infections_per_day=1),
    parallelism=8,
)

days = (7, 14, 21, 28, 42, 56, 70, 84)
print("mean cumulative campus-source infections (100 runs each)")
print("preset".ljust(12) + "".join(f"wk{d // 7:>2}".rjust(9) for d in days))
for name, row in out.items():
    weeks = row["weeks"]
    print(name.ljust(12) + "".join(f"{weeks[d]:>9.1f}" for d in days))

print("\nweek-12 mean with 95% CI half-width:")
for name, row in out.items():
    ens = row["ensemble"]
    print(
        f"  {name:<12} {ens.mean_series[-1]:8.1f} "
        f"+- {ens.ci_half_width[-1]:5.1f}"
    )
