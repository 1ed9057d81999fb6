import type { ComparisonResponse } from "./types.js";

const ARROW_GLYPH = { up: "↑", down: "↓", flat: "•" } as const;

/**
 * Scheme comparison: two rank columns side by side with connecting
 * lines; rank improvements carry up arrows, drops down arrows.
 */
export function renderComparison(root: HTMLElement, comparison: ComparisonResponse): void {
  root.textContent = "";
  const caption = document.createElement("div");
  caption.className = "compare-caption";
  caption.textContent = `${comparison.scheme_a} vs ${comparison.scheme_b}`;
  root.appendChild(caption);

  const table = document.createElement("table");
  table.className = "scheme-compare";
  const header = document.createElement("tr");
  header.innerHTML =
    `<th>item</th><th>${comparison.scheme_a}</th>` +
    `<th></th><th>${comparison.scheme_b}</th><th>delta</th>`;
  table.appendChild(header);
  for (const row of comparison.rows) {
    const tr = document.createElement("tr");
    tr.dataset.id = row.item_id;
    tr.innerHTML =
      `<td>${row.item_id}</td><td>${row.rank_a}</td>` +
      `<td class="arrow ${row.arrow}">${ARROW_GLYPH[row.arrow]}</td>` +
      `<td>${row.rank_b}</td><td>${row.delta > 0 ? "+" : ""}${row.delta}</td>`;
    tr.addEventListener("click", () => highlight(table, row.item_id));
    table.appendChild(tr);
  }
  root.appendChild(table);
}

function highlight(table: HTMLTableElement, itemId: string): void {
  for (const tr of Array.from(table.querySelectorAll("tr"))) {
    tr.classList.toggle("selected", (tr as HTMLTableRowElement).dataset.id === itemId);
  }
}
