/** Thin typed client for the summary-graph service; the only backend. */

import type {
  ApiErrorBody,
  DatasetJson,
  EdgeDetailsJson,
  HAGraphJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(body.message ?? body.code ?? `HTTP ${status}`);
  }
}

export interface ZoomRequest {
  ha_id: string;
  mode: "edge" | "subset";
  edge?: [number, number];
  vertices?: number[];
  overrides?: Record<string, unknown>;
}

async function unwrap<T>(res: Response): Promise<T> {
  if (res.ok) return (await res.json()) as T;
  let body: ApiErrorBody = { code: `http_${res.status}` };
  try {
    const parsed = (await res.json()) as { detail?: ApiErrorBody };
    if (parsed.detail && typeof parsed.detail === "object") body = parsed.detail;
  } catch {
    /* non-JSON error body: keep the status-code stub */
  }
  throw new ApiError(res.status, body);
}

export class Client {
  constructor(
    private readonly base: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, "") + path;
  }

  health(): Promise<{ status: string }> {
    return this.fetchFn(this.url("/healthz")).then((r) => unwrap(r));
  }

  datasets(): Promise<DatasetJson[]> {
    return this.fetchFn(this.url("/datasets")).then((r) => unwrap(r));
  }

  query(text: string, dataset?: string): Promise<HAGraphJson> {
    return this.fetchFn(this.url("/query"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text, dataset: dataset ?? null }),
    }).then((r) => unwrap(r));
  }

  zoom(req: ZoomRequest): Promise<HAGraphJson> {
    return this.fetchFn(this.url("/zoom"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    }).then((r) => unwrap(r));
  }

  haGraph(id: string): Promise<HAGraphJson> {
    return this.fetchFn(this.url(`/ha/${id}`)).then((r) => unwrap(r));
  }

  /** subgraph_ref is server-relative, e.g. "/ha/ha-1/edge/0/3/details". */
  edgeDetails(ref: string): Promise<EdgeDetailsJson> {
    return this.fetchFn(this.url(ref)).then((r) => unwrap(r));
  }
}
