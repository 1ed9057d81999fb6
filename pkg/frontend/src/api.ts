import type {
  AxisPlacement,
  ComparisonResponse,
  InconsistencyRow,
  Partition,
  PolylineKind,
  PolylineResponse,
  ProjectionConfigBody,
  ProjectionResponse,
  RerankResponse,
  SessionDetail,
  SessionSummary,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/**
 * Typed client for the analysis-session API. Mutating calls are
 * queued so at most one is in flight per session; reads go straight
 * through. The client keeps no derived data: every view re-fetches.
 */
export class ApiClient {
  private sessionId: string | null = null;
  private mutationTail: Promise<unknown> = Promise.resolve();

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  get session(): string {
    if (!this.sessionId) throw new Error("no session created yet");
    return this.sessionId;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      if (typeof body === "string") {
        init.body = body;
        init.headers = { "content-type": "text/csv" };
      } else {
        init.body = JSON.stringify(body);
        init.headers = { "content-type": "application/json" };
      }
    }
    const resp = await this.fetchImpl(this.baseUrl + path, init);
    const payload = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, String(payload.detail ?? resp.status));
    }
    return payload as T;
  }

  /** Serialize mutating requests: each waits for the previous one. */
  private enqueue<T>(fn: () => Promise<T>): Promise<T> {
    const next = this.mutationTail.then(fn, fn);
    this.mutationTail = next.catch(() => undefined);
    return next;
  }

  async createSession(csv: string): Promise<SessionSummary> {
    const summary = await this.enqueue(() =>
      this.request<SessionSummary>("POST", "/sessions", csv),
    );
    this.sessionId = summary.session_id;
    return summary;
  }

  getSession(): Promise<SessionDetail> {
    return this.request("GET", `/sessions/${this.session}`);
  }

  rerank(marked: string[]): Promise<RerankResponse> {
    return this.enqueue(() =>
      this.request<RerankResponse>("POST", `/sessions/${this.session}/rerank`, { marked }),
    );
  }

  setRatings(n: number): Promise<{ partition: Partition }> {
    return this.enqueue(() =>
      this.request<{ partition: Partition }>("POST", `/sessions/${this.session}/ratings`, { n }),
    );
  }

  project(config: ProjectionConfigBody): Promise<ProjectionResponse> {
    return this.enqueue(() =>
      this.request<ProjectionResponse>("POST", `/sessions/${this.session}/projection`, config),
    );
  }

  buildPolyline(kind: PolylineKind, regions?: [number, number][][]): Promise<PolylineResponse> {
    const body = regions === undefined ? { kind } : { kind, regions };
    return this.enqueue(() =>
      this.request<PolylineResponse>("POST", `/sessions/${this.session}/polyline`, body),
    );
  }

  buildAxis(): Promise<{ placements: AxisPlacement[] }> {
    return this.enqueue(() =>
      this.request<{ placements: AxisPlacement[] }>("POST", `/sessions/${this.session}/axis`),
    );
  }

  inconsistencies(budget = 50): Promise<{ inconsistencies: InconsistencyRow[] }> {
    return this.request("GET", `/sessions/${this.session}/inconsistencies?budget=${budget}`);
  }

  saveScheme(name: string): Promise<{ name: string; created_at: string }> {
    return this.enqueue(() =>
      this.request<{ name: string; created_at: string }>(
        "POST",
        `/sessions/${this.session}/schemes`,
        { name },
      ),
    );
  }

  listSchemes(): Promise<{ schemes: string[] }> {
    return this.request("GET", `/sessions/${this.session}/schemes`);
  }

  compareSchemes(a: string, b: string): Promise<ComparisonResponse> {
    const params = new URLSearchParams({ a, b });
    return this.request("GET", `/sessions/${this.session}/schemes/compare?${params}`);
  }

  schemeProjections(): Promise<{ projections: ({ scheme: string } & ProjectionResponse)[] }> {
    return this.request("GET", `/sessions/${this.session}/schemes/projections`);
  }

  align(item: string): Promise<{ order: string[] }> {
    const params = new URLSearchParams({ item });
    return this.request("GET", `/sessions/${this.session}/align?${params}`);
  }

  cancelProjection(): Promise<{ cancelled: boolean }> {
    return this.request("DELETE", `/sessions/${this.session}/projection/pending`);
  }
}
