/**
 * The drag-to-rerank contract: the marked rows sent to the rerank
 * endpoint are the dragged item plus its new neighbors, a window of k
 * rows centered on the drop position and clipped to the table bounds,
 * listed in post-drag table order. This mirrors the engine's canonical
 * rule exactly; the server re-derives constraints from this list.
 */
export const MARKED_WINDOW_SIZE = 6;

export function markedWindow(
  orderAfterDrag: readonly string[],
  draggedId: string,
  k: number = MARKED_WINDOW_SIZE,
): string[] {
  const p = orderAfterDrag.indexOf(draggedId);
  if (p < 0) {
    throw new Error(`dragged id ${draggedId} not present in table order`);
  }
  if (orderAfterDrag.length < k) {
    throw new Error(`need at least ${k} rows to infer weights`);
  }
  const start = Math.min(Math.max(p - Math.floor((k - 1) / 2), 0), orderAfterDrag.length - k);
  return orderAfterDrag.slice(start, start + k);
}
