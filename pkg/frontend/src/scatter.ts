import type { PolylineResponse, ProjectionResponse } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ScatterOptions {
  width?: number;
  height?: number;
  /** Fired when the user closes a lasso; regions accumulate in
   * selection order until `clearLassos`. */
  onLassoClosed?: (regions: [number, number][][]) => void;
  /** Darkness of each glyph's center encodes the ranking score. */
  scores?: Map<string, number>;
  /** Petal sizes encode per-attribute contributions. */
  contributions?: Map<string, number[]>;
}

interface ViewBox {
  x: number;
  y: number;
  w: number;
  h: number;
}

/**
 * Projection scatter: coxcomb-style glyph per observation (center dot
 * shaded by ranking score, one wedge per attribute contribution),
 * pan/zoom via the viewBox, lasso polygons collected in selection
 * order, and overlay polylines for the sequence/rating lines.
 */
export class ProjectionScatter {
  private readonly svg: SVGSVGElement;
  private view: ViewBox = { x: 0, y: 0, w: 1, h: 1 };
  private lassos: [number, number][][] = [];
  private activeLasso: [number, number][] | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly options: ScatterOptions = {},
  ) {
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("width", String(options.width ?? 640));
    this.svg.setAttribute("height", String(options.height ?? 480));
    this.svg.classList.add("projection-scatter");
    root.appendChild(this.svg);
  }

  render(projection: ProjectionResponse, polyline?: PolylineResponse): void {
    this.svg.textContent = "";
    const xs = projection.coords.map((c) => c.x);
    const ys = projection.coords.map((c) => c.y);
    const pad = 0.05 * Math.max(Math.max(...xs) - Math.min(...xs), Math.max(...ys) - Math.min(...ys), 1e-9);
    this.view = {
      x: Math.min(...xs) - pad,
      y: Math.min(...ys) - pad,
      w: Math.max(...xs) - Math.min(...xs) + 2 * pad,
      h: Math.max(...ys) - Math.min(...ys) + 2 * pad,
    };
    this.applyView();

    if (polyline) this.drawPolyline(polyline);
    const scores = this.options.scores;
    const maxScore = scores ? Math.max(...scores.values(), 1e-9) : 1;
    for (const coord of projection.coords) {
      this.svg.appendChild(this.glyph(coord.id, coord.x, coord.y, (scores?.get(coord.id) ?? 0) / maxScore));
    }
  }

  private glyph(id: string, x: number, y: number, shade: number): SVGGElement {
    const g = document.createElementNS(SVG_NS, "g");
    g.classList.add("glyph");
    g.dataset.id = id;
    const r = 0.012 * Math.max(this.view.w, this.view.h);
    const parts = this.options.contributions?.get(id) ?? [];
    const total = parts.reduce((a, b) => a + Math.max(b, 0), 0);
    if (total > 0) {
      let angle = -Math.PI / 2;
      const step = (2 * Math.PI) / parts.length;
      for (const [j, value] of parts.entries()) {
        const petal = document.createElementNS(SVG_NS, "path");
        const rr = r * (0.6 + 1.2 * Math.max(value, 0) / Math.max(total, 1e-9));
        const a2 = angle + step;
        petal.setAttribute(
          "d",
          `M ${x} ${y} L ${x + rr * Math.cos(angle)} ${y + rr * Math.sin(angle)} ` +
            `A ${rr} ${rr} 0 0 1 ${x + rr * Math.cos(a2)} ${y + rr * Math.sin(a2)} Z`,
        );
        petal.classList.add(`petal-${j}`);
        petal.setAttribute("fill-opacity", "0.45");
        g.appendChild(petal);
        angle = a2;
      }
    }
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(x));
    dot.setAttribute("cy", String(y));
    dot.setAttribute("r", String(r * 0.5));
    const tone = Math.round(220 - 160 * Math.min(Math.max(shade, 0), 1));
    dot.setAttribute("fill", `rgb(${tone}, ${tone}, ${tone})`);
    g.appendChild(dot);
    g.addEventListener("mouseenter", () => g.setAttribute("transform", zoomAbout(x, y, 2)));
    g.addEventListener("mouseleave", () => g.removeAttribute("transform"));
    return g;
  }

  private drawPolyline(polyline: PolylineResponse): void {
    const path = document.createElementNS(SVG_NS, "polyline");
    path.setAttribute(
      "points",
      polyline.anchors.map((a) => `${a.x},${a.y}`).join(" "),
    );
    path.classList.add("rating-polyline", `kind-${polyline.kind}`);
    path.setAttribute("fill", "none");
    this.svg.appendChild(path);
    for (const anchor of polyline.anchors) {
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(anchor.x));
      dot.setAttribute("cy", String(anchor.y));
      dot.setAttribute("r", String(0.008 * Math.max(this.view.w, this.view.h)));
      dot.setAttribute("fill", "#c23728");
      dot.classList.add("polyline-anchor");
      const label = document.createElementNS(SVG_NS, "title");
      label.textContent = String(anchor.label);
      dot.appendChild(label);
      this.svg.appendChild(dot);
    }
  }

  pan(dx: number, dy: number): void {
    this.view.x += dx;
    this.view.y += dy;
    this.applyView();
  }

  zoom(factor: number): void {
    const cx = this.view.x + this.view.w / 2;
    const cy = this.view.y + this.view.h / 2;
    this.view.w /= factor;
    this.view.h /= factor;
    this.view.x = cx - this.view.w / 2;
    this.view.y = cy - this.view.h / 2;
    this.applyView();
  }

  private applyView(): void {
    this.svg.setAttribute(
      "viewBox",
      `${this.view.x} ${this.view.y} ${this.view.w} ${this.view.h}`,
    );
  }

  /** Lasso interaction: begin, extend, close. Regions keep selection order. */
  beginLasso(x: number, y: number): void {
    this.activeLasso = [[x, y]];
  }

  extendLasso(x: number, y: number): void {
    this.activeLasso?.push([x, y]);
  }

  closeLasso(): void {
    if (this.activeLasso && this.activeLasso.length >= 3) {
      this.lassos.push(this.activeLasso);
      this.options.onLassoClosed?.(this.lassoRegions());
    }
    this.activeLasso = null;
  }

  lassoRegions(): [number, number][][] {
    return this.lassos.map((poly) => poly.map(([x, y]) => [x, y] as [number, number]));
  }

  clearLassos(): void {
    this.lassos = [];
  }
}

function zoomAbout(x: number, y: number, factor: number): string {
  return `translate(${x * (1 - factor)}, ${y * (1 - factor)}) scale(${factor})`;
}
