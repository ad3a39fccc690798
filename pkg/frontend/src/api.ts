/**
 * Typed client for the review service HTTP API.
 *
 * The fetch implementation is injectable so tests can run against an
 * in-memory stub of the service.
 */

export interface CandidateJson {
  lemma: string;
  pos: string;
  disambiguator: string | null;
  language: string | null;
  label: string;
}

export interface KwicJson {
  left: string;
  keyword: string;
  right: string;
}

export interface QueueItemJson {
  doc_id: string;
  char_offset: number;
  form_key: string;
  candidates: CandidateJson[];
  kwic: KwicJson;
}

export interface ProgressJson {
  total: number;
  pending: number;
  resolved: number;
}

export interface QueuePageJson {
  items: QueueItemJson[];
  total: number;
  offset: number;
  progress: ProgressJson;
}

export interface DecisionRequest {
  form_key: string;
  scope: "global" | "occurrence";
  occurrence?: { doc_id: string; char_offset: number };
  lemma: string;
  pos: string;
  disambiguator?: string | null;
  language?: string | null;
  annotator?: string;
  client_token?: string;
}

export interface DecisionResponse {
  status: string;
  duplicate: boolean;
  progress: ProgressJson;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export class ReviewApi {
  constructor(
    private readonly fetchImpl: FetchLike,
    private readonly base = "",
  ) {}

  private async get<T>(path: string, params: Record<string, string>): Promise<T> {
    const query = new URLSearchParams(params).toString();
    const url = this.base + path + (query ? `?${query}` : "");
    const resp = await this.fetchImpl(url);
    if (!resp.ok) throw new ApiError(resp.status, `GET ${path} failed`);
    return (await resp.json()) as T;
  }

  async queue(opts: {
    limit?: number;
    offset?: number;
    form?: string;
    unknownOnly?: boolean;
  } = {}): Promise<QueuePageJson> {
    const params: Record<string, string> = {};
    if (opts.limit !== undefined) params.limit = String(opts.limit);
    if (opts.offset !== undefined) params.offset = String(opts.offset);
    if (opts.form) params.form = opts.form;
    if (opts.unknownOnly) params.unknown_only = "true";
    return this.get<QueuePageJson>("/api/queue", params);
  }

  async kwic(form: string, width = 5): Promise<{ occurrences: KwicJson[] }> {
    return this.get("/api/kwic", { form, width: String(width) });
  }

  async progress(): Promise<ProgressJson> {
    return this.get<ProgressJson>("/api/progress", {});
  }

  async decide(body: DecisionRequest): Promise<DecisionResponse> {
    const resp = await this.fetchImpl(this.base + "/api/decision", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) throw new ApiError(resp.status, "decision rejected");
    return (await resp.json()) as DecisionResponse;
  }

  async rerun(): Promise<{ status: string; progress: ProgressJson }> {
    const resp = await this.fetchImpl(this.base + "/api/rerun", {
      method: "POST",
    });
    if (!resp.ok) throw new ApiError(resp.status, "rerun failed");
    return (await resp.json()) as { status: string; progress: ProgressJson };
  }
}
