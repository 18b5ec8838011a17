/**
 * Thin typed client for the curation service JSON API.
 *
 * Every response body passes through its zod schema, so a payload drift
 * fails loudly here instead of rendering garbage. Errors carry the HTTP
 * status and the server's own message verbatim; 409 (stale content hash)
 * is distinguished so forms can offer a refresh.
 */

import {
  DecisionInput,
  DecisionResponse,
  FindingView,
  ObjectDetail,
  QueueFilters,
  QueuePage,
  Stats,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string
  ) {
    super(message);
    this.name = "ApiError";
  }

  get isStale(): boolean {
    return this.status === 409;
  }
}

async function readError(response: Response): Promise<never> {
  let message = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") message = body.error;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, message);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private curator: string = ""
  ) {}

  setCurator(name: string): void {
    this.curator = name;
  }

  getCurator(): string {
    return this.curator;
  }

  private async get<T>(path: string, parse: (data: unknown) => T): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) await readError(response);
    return parse(await response.json());
  }

  listFindings(filters: QueueFilters = {}): Promise<QueuePage> {
    const params = new URLSearchParams();
    if (filters.type) params.set("type", filters.type);
    if (filters.state) params.set("state", filters.state);
    if (filters.limit !== undefined) params.set("limit", String(filters.limit));
    if (filters.offset !== undefined) params.set("offset", String(filters.offset));
    const query = params.toString();
    return this.get(
      `/api/v1/findings${query ? "?" + query : ""}`,
      (d) => QueuePage.parse(d)
    );
  }

  getFinding(id: string): Promise<FindingView> {
    return this.get(`/api/v1/findings/${encodeURIComponent(id)}`, (d) =>
      FindingView.parse(d)
    );
  }

  getObject(id: string): Promise<ObjectDetail> {
    return this.get(`/api/v1/objects/${encodeURIComponent(id)}`, (d) =>
      ObjectDetail.parse(d)
    );
  }

  getStats(): Promise<Stats> {
    return this.get("/api/v1/stats", (d) => Stats.parse(d));
  }

  async submitDecision(
    findingId: string,
    decision: DecisionInput
  ): Promise<DecisionResponse> {
    const response = await fetch(
      `${this.baseUrl}/api/v1/findings/${encodeURIComponent(findingId)}/decision`,
      {
        method: "POST",
        headers: {
          "Content-Type": "application/json",
          "X-Curator": this.curator,
        },
        body: JSON.stringify(decision),
      }
    );
    if (!response.ok) await readError(response);
    return DecisionResponse.parse(await response.json());
  }
}
