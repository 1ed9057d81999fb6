import { markedWindow } from "./dragWindow.js";
import type { ComparisonRow, RankedRow } from "./types.js";

export interface RankingTableOptions {
  /** Fired with the marked-id window after a drop; the caller sends it
   * to the rerank endpoint verbatim. */
  onRerank: (marked: string[]) => void;
  /** Contribution per attribute for the stacked bar, already scaled. */
  contributions?: Map<string, number[]>;
  /** Rank deltas against the previously saved scheme, for the arrows. */
  previous?: ComparisonRow[];
}

const ARROW_GLYPH = { up: "↑", down: "↓", flat: "" } as const;

/**
 * The ranking table: one draggable row per item showing rank, label,
 * score, and a stacked contribution bar. Dragging a row somewhere else
 * reorders the DOM immediately and reports the marked window of the
 * post-drag order.
 */
export class RankingTable {
  private order: string[] = [];
  private draggedId: string | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly options: RankingTableOptions,
  ) {}

  currentOrder(): string[] {
    return [...this.order];
  }

  render(rows: RankedRow[]): void {
    this.order = rows.map((r) => r.id);
    const arrows = new Map((this.options.previous ?? []).map((c) => [c.item_id, c.arrow]));
    this.root.textContent = "";
    const table = document.createElement("table");
    table.className = "ranking-table";
    for (const row of rows) {
      const tr = document.createElement("tr");
      tr.draggable = true;
      tr.dataset.id = row.id;
      const arrow = arrows.get(row.id) ?? "flat";
      tr.innerHTML =
        `<td class="rank">${row.rank}</td>` +
        `<td class="arrow ${arrow}">${ARROW_GLYPH[arrow]}</td>` +
        `<td class="label">${row.id}</td>` +
        `<td class="score">${row.score.toFixed(4)}</td>`;
      tr.appendChild(this.contributionCell(row.id));
      tr.addEventListener("dragstart", () => {
        this.draggedId = row.id;
      });
      tr.addEventListener("dragover", (ev) => ev.preventDefault());
      tr.addEventListener("drop", (ev) => {
        ev.preventDefault();
        this.completeDrag(row.id);
      });
      table.appendChild(tr);
    }
    this.root.appendChild(table);
  }

  private contributionCell(id: string): HTMLTableCellElement {
    const td = document.createElement("td");
    td.className = "contribution";
    const parts = this.options.contributions?.get(id) ?? [];
    const bar = document.createElement("div");
    bar.className = "stacked-bar";
    for (const [j, value] of parts.entries()) {
      const seg = document.createElement("span");
      seg.className = `seg seg-${j}`;
      seg.style.width = `${Math.max(value, 0) * 100}px`;
      bar.appendChild(seg);
    }
    td.appendChild(bar);
    return td;
  }

  /** Reorder after a drop onto `targetId` and report the marked window. */
  completeDrag(targetId: string): void {
    if (this.draggedId === null || this.draggedId === targetId) return;
    const next = reorderOnDrop(this.order, this.draggedId, targetId);
    const marked = markedWindow(next, this.draggedId);
    this.order = next;
    this.draggedId = null;
    this.options.onRerank(marked);
  }

  /** Test hook: simulate a full drag of one row onto another. */
  simulateDrag(draggedId: string, targetId: string): void {
    this.draggedId = draggedId;
    this.completeDrag(targetId);
  }
}

/** Remove the dragged row and re-insert it at the target's position. */
export function reorderOnDrop(
  order: readonly string[],
  draggedId: string,
  targetId: string,
): string[] {
  const without = order.filter((id) => id !== draggedId);
  const at = without.indexOf(targetId);
  if (at < 0) throw new Error(`drop target ${targetId} not in table`);
  const insertAt = order.indexOf(draggedId) < order.indexOf(targetId) ? at + 1 : at;
  return [...without.slice(0, insertAt), draggedId, ...without.slice(insertAt)];
}
