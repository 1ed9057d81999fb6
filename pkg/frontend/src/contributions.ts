/**
 * Per-item attribute contributions (weight x normalized value) drive
 * the stacked bars and the contribution streams. With many attributes
 * only a few colors stay readable, so beyond 12 attributes the streams
 * collapse to the top 8 by total contribution plus an "other" bucket.
 */

export const MAX_DISTINCT_ATTRIBUTES = 12;
export const TOP_ATTRIBUTES = 8;

export interface ContributionSeries {
  names: string[];
  /** rows follow the input item order; columns follow `names` */
  values: number[][];
}

export function contributions(
  weights: Record<string, number>,
  normalizedRows: Record<string, number>[],
): ContributionSeries {
  const names = Object.keys(weights);
  const values = normalizedRows.map((row) => names.map((n) => (weights[n] ?? 0) * (row[n] ?? 0)));
  return { names, values };
}

export function collapseToTop(series: ContributionSeries): ContributionSeries {
  if (series.names.length <= MAX_DISTINCT_ATTRIBUTES) return series;
  const totals = series.names.map((_, j) =>
    series.values.reduce((acc, row) => acc + Math.abs(row[j] ?? 0), 0),
  );
  const order = totals
    .map((total, j) => ({ total, j }))
    .sort((a, b) => b.total - a.total || a.j - b.j)
    .map((e) => e.j);
  const keep = order.slice(0, TOP_ATTRIBUTES).sort((a, b) => a - b);
  const names = keep.map((j) => series.names[j]!).concat(["other"]);
  const values = series.values.map((row) => {
    const kept = keep.map((j) => row[j] ?? 0);
    const other = row.reduce((acc, v, j) => (keep.includes(j) ? acc : acc + v), 0);
    return kept.concat([other]);
  });
  return { names, values };
}
