import { ApiClient, ApiError } from "./api.js";
import { AxisView } from "./axisView.js";
import { contributions, type ContributionSeries } from "./contributions.js";
import { RankingTable } from "./rankingTable.js";
import { renderComparison } from "./schemeCompare.js";
import { ProjectionScatter } from "./scatter.js";
import type { PolylineKind, RankedRow } from "./types.js";

/**
 * Single-page wiring of the four views against one analysis session.
 * The app keeps no derived data beyond the latest service responses:
 * after every mutating call it re-fetches whatever the affected views
 * display.
 */
export class App {
  private readonly api: ApiClient;
  private scatter!: ProjectionScatter;
  private axis!: AxisView;
  private ranking: RankedRow[] = [];
  private weights: Record<string, number> = {};
  private normalized: Map<string, Record<string, number>> = new Map();
  private nItems = 0;
  private lineKind: PolylineKind = "rating";

  constructor(
    private readonly root: HTMLElement,
    baseUrl = "",
  ) {
    this.api = new ApiClient(baseUrl);
  }

  async start(csv: string): Promise<void> {
    const summary = await this.api.createSession(csv);
    this.nItems = summary.n_items;
    this.root.innerHTML = `
      <div class="toolbar">
        <label>ratings <input id="rating-slider" type="range" min="2" max="9" value="5"></label>
        <select id="line-kind">
          <option value="rating" selected>rating line</option>
          <option value="sequence">sequence line</option>
          <option value="self_defined">self-defined line</option>
        </select>
        <button id="save-scheme">save scheme</button>
        <span id="status"></span>
      </div>
      <div id="ranking-table"></div>
      <div id="scatter"></div>
      <div id="axis-view"></div>
      <div id="scheme-compare"></div>
    `;
    this.scatter = new ProjectionScatter(this.byId("scatter"), {
      onLassoClosed: (regions) => void this.selfDefinedLine(regions),
    });
    this.axis = new AxisView(this.byId("axis-view"), {
      onAlign: (item) => void this.align(item),
    });

    this.byId("rating-slider").addEventListener("change", (ev) => {
      const n = Number((ev.target as HTMLInputElement).value);
      void this.guard(async () => {
        await this.api.setRatings(n);
        await this.refreshViews();
      });
    });
    this.byId("line-kind").addEventListener("change", (ev) => {
      this.lineKind = (ev.target as HTMLSelectElement).value as PolylineKind;
      void this.guard(() => this.refreshViews());
    });
    this.byId("save-scheme").addEventListener("click", () => {
      void this.guard(async () => {
        await this.api.saveScheme(`scheme-${Date.now()}`);
        await this.refreshSchemes();
      });
    });

    this.status(`loaded ${summary.n_items} items, ${summary.attributes.length} attributes`);
    await this.guard(async () => {
      await this.pullSessionState();
      await this.refreshViews();
    });
  }

  private byId(id: string): HTMLElement {
    const el = this.root.querySelector(`#${id}`);
    if (!el) throw new Error(`missing element #${id}`);
    return el as HTMLElement;
  }

  private status(text: string): void {
    this.byId("status").textContent = text;
  }

  private async guard(fn: () => Promise<void>): Promise<void> {
    try {
      await fn();
      this.status("");
    } catch (err) {
      this.status(err instanceof ApiError ? err.message : String(err));
    }
  }

  private async pullSessionState(): Promise<void> {
    const detail = await this.api.getSession();
    this.ranking = detail.ranking;
    this.weights = detail.weights;
    this.normalized = new Map(Object.entries(detail.normalized));
  }

  private async rerank(marked: string[]): Promise<void> {
    await this.guard(async () => {
      const response = await this.api.rerank(marked);
      this.ranking = response.ranking;
      this.weights = response.weights;
      await this.refreshViews();
    });
  }

  private async selfDefinedLine(regions: [number, number][][]): Promise<void> {
    if (regions.length < 2) return;
    this.lineKind = "self_defined";
    await this.guard(async () => {
      await this.api.buildPolyline("self_defined", regions);
      await this.refreshAxis();
    });
  }

  private async align(item: string): Promise<void> {
    await this.guard(async () => {
      const { order } = await this.api.align(item);
      this.axis.applyAlignment(order);
    });
  }

  private contributionSeries(): ContributionSeries {
    const rows = this.ranking.map((r) => this.normalized.get(r.id) ?? {});
    return contributions(this.weights, rows);
  }

  private async refreshViews(): Promise<void> {
    const series = this.contributionSeries();
    const table = new RankingTable(this.byId("ranking-table"), {
      onRerank: (marked) => void this.rerank(marked),
      contributions: new Map(this.ranking.map((r, i) => [r.id, series.values[i] ?? []])),
    });
    table.render(this.ranking);

    const projection = await this.api.project({
      method: "tsne",
      seed: 0,
      perplexity: Math.min(15, Math.max(2, this.nItems - 1)),
    });
    const polyline =
      this.lineKind === "self_defined"
        ? undefined
        : await this.api.buildPolyline(this.lineKind);
    this.scatter.render(projection, polyline);
    if (this.lineKind !== "sequence") await this.refreshAxis();
  }

  private async refreshAxis(): Promise<void> {
    const { placements } = await this.api.buildAxis();
    this.axis.render(placements, this.ranking, this.contributionSeries(), this.normalized);
  }

  private async refreshSchemes(): Promise<void> {
    const { schemes } = await this.api.listSchemes();
    if (schemes.length >= 2) {
      const a = schemes[schemes.length - 2]!;
      const b = schemes[schemes.length - 1]!;
      renderComparison(this.byId("scheme-compare"), await this.api.compareSchemes(a, b));
    }
  }
}

export function bootstrap(root: HTMLElement, baseUrl = ""): void {
  const input = document.createElement("input");
  input.type = "file";
  input.accept = ".csv,text/csv";
  input.addEventListener("change", async () => {
    const file = input.files?.[0];
    if (!file) return;
    const app = new App(root, baseUrl);
    await app.start(await file.text());
  });
  root.appendChild(input);
}
