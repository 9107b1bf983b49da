/**
 * Comparison view: overlaid mean curves with 95% CI bands plus the week-end
 * table. Chart and table render from the same fetched documents; every
 * number is taken from the service export, never recomputed client-side,
 * and CI ribbons sit at mean ± half-width exactly as exported.
 */

import type { FetchedResults } from "./api.js";
import { pyFloat } from "./format.js";

/** Week-end days reported in the table: weeks 1, 2, 3, 4, 6, 8, 10, 12. */
export const WEEK_END_DAYS = [7, 14, 21, 28, 42, 56, 70, 84] as const;

export interface ComparisonEntry {
  label: string;
  results: FetchedResults;
  /** Identifies the campus the scenario ran on (e.g. a hash of the resolved
   * network section); entries with differing keys get a warning badge. */
  campusKey?: string;
}

export interface CurveSeries {
  label: string;
  days: number[];
  mean: number[];
  lower: number[];
  upper: number[];
  runCount: number;
  seed: number;
}

export interface WeekTable {
  /** Column headers as week numbers. */
  weeks: number[];
  /** One row per entry; cells are export-exact strings. */
  rows: { label: string; cells: string[] }[];
}

export interface ComparisonView {
  curves: CurveSeries[];
  table: WeekTable;
  warnings: string[];
}

export function buildComparison(entries: ComparisonEntry[]): ComparisonView {
  const curves: CurveSeries[] = [];
  const rows: WeekTable["rows"] = [];
  const warnings: string[] = [];

  const campusKeys = new Set(
    entries.map((e) => e.campusKey).filter((k) => k !== undefined),
  );
  if (campusKeys.size > 1) {
    warnings.push(
      "results come from different campus inputs and are not comparable",
    );
  }

  for (const { label, results } of entries) {
    const { doc } = results;
    curves.push({
      label,
      days: doc.days.map((r) => r.day + 1),
      mean: doc.days.map((r) => r.mean),
      lower: doc.days.map((r) => r.mean - r.ci),
      upper: doc.days.map((r) => r.mean + r.ci),
      runCount: doc.run_count,
      seed: doc.metadata.base_seed,
    });
    rows.push({
      label,
      cells: WEEK_END_DAYS.map((day) => {
        const value = doc.weeks[String(day)];
        if (value === undefined) {
          throw new RangeError(`export has no week-end value for day ${day}`);
        }
        return pyFloat(value);
      }),
    });
  }

  return {
    curves,
    table: { weeks: WEEK_END_DAYS.map((d) => d / 7), rows },
    warnings,
  };
}

const PALETTE = [
  "#4363d8", "#e6194b", "#3cb44b", "#f58231", "#911eb4", "#469990",
];

function polylinePoints(
  days: number[],
  values: number[],
  xOf: (day: number) => number,
  yOf: (value: number) => number,
): string {
  return days.map((d, i) => `${xOf(d)},${yOf(values[i]!)}`).join(" ");
}

/**
 * Render the overlay chart as standalone SVG: one translucent CI ribbon and
 * one mean polyline per series, axes labeled in days and students, legend
 * carrying each series' run count and seed. No smoothing is applied.
 */
export function renderChartSvg(
  view: ComparisonView,
  width = 720,
  height = 400,
): string {
  const margin = { left: 60, right: 16, top: 16, bottom: 44 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const maxDay = Math.max(1, ...view.curves.map((c) => c.days.length));
  const maxY = Math.max(1, ...view.curves.flatMap((c) => c.upper));
  const xOf = (day: number) =>
    margin.left + ((day - 1) / Math.max(1, maxDay - 1)) * plotW;
  const yOf = (value: number) =>
    margin.top + plotH - (value / maxY) * plotH;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
      `height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect x="${margin.left}" y="${margin.top}" width="${plotW}" ` +
      `height="${plotH}" fill="none" stroke="#888"/>`,
    `<text x="${margin.left + plotW / 2}" y="${height - 8}" ` +
      `text-anchor="middle" class="axis-label">day of semester</text>`,
    `<text x="14" y="${margin.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 14 ${margin.top + plotH / 2})" ` +
      `class="axis-label">cumulative infected (students)</text>`,
  ];

  view.curves.forEach((curve, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const forward = polylinePoints(curve.days, curve.upper, xOf, yOf);
    const reverseDays = [...curve.days].reverse();
    const reverseLower = [...curve.lower].reverse();
    const backward = polylinePoints(reverseDays, reverseLower, xOf, yOf);
    parts.push(
      `<polygon class="ci-band" data-series="${curve.label}" ` +
        `points="${forward} ${backward}" fill="${color}" ` +
        `fill-opacity="0.15" stroke="none"/>`,
      `<polyline class="mean-curve" data-series="${curve.label}" ` +
        `points="${polylinePoints(curve.days, curve.mean, xOf, yOf)}" ` +
        `fill="none" stroke="${color}" stroke-width="1.5"/>`,
    );
  });

  view.curves.forEach((curve, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const y = margin.top + 14 + i * 16;
    parts.push(
      `<rect x="${margin.left + 8}" y="${y - 9}" width="10" height="10" ` +
        `fill="${color}"/>`,
      `<text x="${margin.left + 24}" y="${y}" class="legend">` +
        `${curve.label} (n=${curve.runCount}, seed=${curve.seed})</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n");
}

/** Render the week-end table; cell text is the export representation. */
export function renderWeekTable(view: ComparisonView): string {
  const head = view.table.weeks
    .map((w) => `<th scope="col">Week ${w}</th>`)
    .join("");
  const body = view.table.rows
    .map(
      (row) =>
        `<tr><th scope="row">${row.label}</th>` +
        row.cells.map((cell) => `<td>${cell}</td>`).join("") +
        "</tr>",
    )
    .join("\n");
  return (
    '<table class="week-table">\n' +
    `<thead><tr><th scope="col">Scenario</th>${head}</tr></thead>\n` +
    `<tbody>\n${body}\n</tbody>\n</table>`
  );
}

/** The staged-reopening strip: one chip per preset, in rollout order. */
export function renderTimelineStrip(presetNames: string[]): string {
  const chips = presetNames
    .map(
      (name, i) =>
        `<span class="stage-chip" data-stage="${i}">${name}</span>`,
    )
    .join('<span class="stage-arrow">&rarr;</span>');
  return `<div class="timeline-strip">${chips}</div>`;
}
