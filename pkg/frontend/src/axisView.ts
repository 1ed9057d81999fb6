import { consistencyColor, diffColor } from "./colors.js";
import { collapseToTop, type ContributionSeries } from "./contributions.js";
import type { AxisPlacement, RankedRow } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface AxisViewOptions {
  width?: number;
  /** Fired when the Align button is clicked with the selected item. */
  onAlign?: (itemId: string) => void;
}

/**
 * Projection-axis view: the unrolled rating line with one dot per item
 * at (arc position, distance), colored gray/blue/orange-red by
 * consistency and shaded by |inverse ordinal|; beneath it the score
 * area chart, the contribution streams, and the attribute comparison
 * matrix. Clicking an item threads a connective line through all four
 * subviews; Align reorders columns by similarity to the selection.
 */
export class AxisView {
  private selected: string | null = null;
  private placements: AxisPlacement[] = [];
  private ranking: RankedRow[] = [];
  private series: ContributionSeries = { names: [], values: [] };
  private normalized: Map<string, Record<string, number>> = new Map();
  private columnOrder: string[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly options: AxisViewOptions = {},
  ) {}

  render(
    placements: AxisPlacement[],
    ranking: RankedRow[],
    series: ContributionSeries,
    normalizedRows: Map<string, Record<string, number>>,
  ): void {
    this.placements = placements;
    this.ranking = [...ranking].sort((a, b) => a.rank - b.rank);
    this.series = collapseToTop(series);
    this.normalized = normalizedRows;
    this.columnOrder = this.ranking.map((r) => r.id);
    this.redraw();
  }

  /** Replace the column order (the Align response) keeping selection. */
  applyAlignment(order: string[]): void {
    this.columnOrder = order;
    this.redraw();
  }

  dotColor(placement: AxisPlacement): string {
    const maxMag = Math.max(...this.placements.map((p) => Math.abs(p.inverse_ordinal)), 1);
    return consistencyColor(placement.inverse_ordinal, maxMag);
  }

  private redraw(): void {
    this.root.textContent = "";
    this.root.appendChild(this.projectionAxis());
    this.root.appendChild(this.scoreAxis());
    this.root.appendChild(this.contributionAxis());
    this.root.appendChild(this.comparisonMatrix());
    const align = document.createElement("button");
    align.className = "align-button";
    align.textContent = "Align";
    align.disabled = this.selected === null;
    align.addEventListener("click", () => {
      if (this.selected !== null) this.options.onAlign?.(this.selected);
    });
    this.root.appendChild(align);
  }

  private projectionAxis(): SVGSVGElement {
    const width = this.options.width ?? 640;
    const height = 160;
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(width));
    svg.setAttribute("height", String(height));
    svg.classList.add("projection-axis");

    const maxArc = Math.max(...this.placements.map((p) => p.arc_position), 1e-9);
    const maxDist = Math.max(...this.placements.map((p) => p.distance), 1e-9);
    const baseline = height - 20;
    const axisLine = document.createElementNS(SVG_NS, "line");
    axisLine.setAttribute("x1", "10");
    axisLine.setAttribute("x2", String(width - 10));
    axisLine.setAttribute("y1", String(baseline));
    axisLine.setAttribute("y2", String(baseline));
    axisLine.setAttribute("stroke", "#222");
    svg.appendChild(axisLine);

    for (const p of this.placements) {
      const cx = 10 + (p.arc_position / maxArc) * (width - 20);
      const cy = baseline - (p.distance / maxDist) * (height - 40);
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(cx));
      dot.setAttribute("cy", String(cy));
      dot.setAttribute("r", "4");
      dot.setAttribute("fill", this.dotColor(p));
      dot.dataset.id = p.id;
      dot.dataset.consistency = p.consistency;
      dot.classList.add("axis-dot");
      if (p.id === this.selected) dot.classList.add("selected");
      dot.addEventListener("click", () => {
        this.selected = p.id;
        this.redraw();
      });
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `${p.id}: bracket (${p.bracket[0]}, ${p.bracket[1]}), inverse ordinal ${p.inverse_ordinal}`;
      dot.appendChild(title);
      svg.appendChild(dot);
    }
    if (this.selected) this.connectiveLine(svg, width, baseline, maxArc);
    return svg;
  }

  private connectiveLine(svg: SVGSVGElement, width: number, baseline: number, maxArc: number): void {
    const p = this.placements.find((q) => q.id === this.selected);
    const col = this.columnOrder.indexOf(this.selected ?? "");
    if (!p || col < 0) return;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(10 + (p.arc_position / maxArc) * (width - 20)));
    line.setAttribute("y1", String(baseline));
    line.setAttribute("x2", String(this.columnX(col, width)));
    line.setAttribute("y2", String(baseline + 20));
    line.classList.add("connective-line");
    line.setAttribute("stroke", "#2166ac");
    line.setAttribute("stroke-width", "2");
    svg.appendChild(line);
  }

  private columnX(index: number, width: number): number {
    const n = Math.max(this.columnOrder.length, 1);
    return 10 + ((index + 0.5) / n) * (width - 20);
  }

  private scoreAxis(): SVGSVGElement {
    const width = this.options.width ?? 640;
    const height = 80;
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(width));
    svg.setAttribute("height", String(height));
    svg.classList.add("score-axis");
    const byId = new Map(this.ranking.map((r) => [r.id, r.score]));
    const maxScore = Math.max(...this.ranking.map((r) => r.score), 1e-9);
    const points: string[] = [`10,${height}`];
    for (const [i, id] of this.columnOrder.entries()) {
      const x = this.columnX(i, width);
      const y = height - ((byId.get(id) ?? 0) / maxScore) * (height - 10);
      points.push(`${x},${y}`);
      const bar = document.createElementNS(SVG_NS, "rect");
      bar.setAttribute("x", String(x - 2));
      bar.setAttribute("y", String(y));
      bar.setAttribute("width", "4");
      bar.setAttribute("height", String(height - y));
      bar.setAttribute("fill", "#bbb");
      bar.dataset.id = id;
      svg.appendChild(bar);
    }
    points.push(`${width - 10},${height}`);
    const area = document.createElementNS(SVG_NS, "polygon");
    area.setAttribute("points", points.join(" "));
    area.setAttribute("fill", "rgba(120, 140, 160, 0.25)");
    area.classList.add("score-area");
    svg.appendChild(area);
    return svg;
  }

  private contributionAxis(): SVGSVGElement {
    const width = this.options.width ?? 640;
    const height = 100;
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(width));
    svg.setAttribute("height", String(height));
    svg.classList.add("contribution-axis");
    const index = new Map(this.ranking.map((r, i) => [r.id, i]));
    const maxTotal = Math.max(
      ...this.series.values.map((row) => row.reduce((a, b) => a + Math.max(b, 0), 0)),
      1e-9,
    );
    for (const [col, id] of this.columnOrder.entries()) {
      const row = this.series.values[index.get(id) ?? 0] ?? [];
      let y = height;
      for (const [j, value] of row.entries()) {
        const h = (Math.max(value, 0) / maxTotal) * (height - 10);
        const seg = document.createElementNS(SVG_NS, "rect");
        seg.setAttribute("x", String(this.columnX(col, width) - 3));
        seg.setAttribute("y", String(y - h));
        seg.setAttribute("width", "6");
        seg.setAttribute("height", String(h));
        seg.classList.add(`stream-${j}`);
        seg.dataset.attribute = this.series.names[j] ?? "";
        svg.appendChild(seg);
        y -= h;
      }
    }
    return svg;
  }

  private comparisonMatrix(): HTMLTableElement {
    const table = document.createElement("table");
    table.className = "attribute-comparison";
    const attrs = this.series.names.filter((n) => n !== "other");
    const selectedRow = this.selected ? this.normalized.get(this.selected) : undefined;
    const maxAbs = 1.0; // normalized values live in [0, 1]
    for (const attr of attrs) {
      const tr = document.createElement("tr");
      const th = document.createElement("th");
      th.textContent = attr;
      tr.appendChild(th);
      for (const id of this.columnOrder) {
        const td = document.createElement("td");
        const value = this.normalized.get(id)?.[attr] ?? 0;
        const bar = document.createElement("div");
        bar.className = "attr-bar";
        bar.style.width = `${value * 40}px`;
        if (selectedRow) {
          bar.style.background = diffColor(value - (selectedRow[attr] ?? 0), maxAbs);
        }
        td.dataset.id = id;
        td.appendChild(bar);
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    return table;
  }
}
