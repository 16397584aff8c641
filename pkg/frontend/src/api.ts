/** Typed client for the analysis server's JSON API.
 *
 * Every number the UI displays comes from these responses; the client never
 * re-derives values (the view layer is allowed affine plot transforms only).
 */

export interface EmbeddingPayload {
  ids: string[];
  coords: number[][];
}

export interface MetaPayload {
  n: number;
  p: number;
  k: number;
  columns: string[];
  ids: string[];
  distance: { kind: string; params: Record<string, unknown> };
  eigenvalues: number[];
  inertia: { positive: number; negative: number; discarded: number };
  modes: string[];
  variable_groups: Record<string, number[]>;
  sample_group: number[] | null;
  tree_digest: string | null;
}

export interface LbRequest {
  sample?: string;
  point?: number[];
  mode: string;
  epsilon: number | null;
}

export interface LbPayload {
  point: number[];
  mode: string;
  epsilon: number | null;
  axes: number[][];
  f: number[];
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function parseJson(resp: Response): Promise<unknown> {
  const text = await resp.text();
  let body: unknown;
  try {
    body = JSON.parse(text);
  } catch {
    throw new ApiError(`invalid JSON from server (status ${resp.status})`, resp.status);
  }
  if (!resp.ok) {
    const message =
      typeof body === "object" && body !== null && "error" in body
        ? String((body as { error: unknown }).error)
        : `HTTP ${resp.status}`;
    throw new ApiError(message, resp.status);
  }
  return body;
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  async embedding(): Promise<EmbeddingPayload> {
    const resp = await fetch(`${this.base}/api/embedding`);
    return (await parseJson(resp)) as EmbeddingPayload;
  }

  async meta(): Promise<MetaPayload> {
    const resp = await fetch(`${this.base}/api/meta`);
    return (await parseJson(resp)) as MetaPayload;
  }

  async correlation(): Promise<{ matrix: number[][]; constant_columns: number[] }> {
    const resp = await fetch(`${this.base}/api/correlation`);
    return (await parseJson(resp)) as { matrix: number[][]; constant_columns: number[] };
  }

  async lb(request: LbRequest, signal?: AbortSignal): Promise<LbPayload> {
    const resp = await fetch(`${this.base}/api/lb`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
      signal,
    });
    return (await parseJson(resp)) as LbPayload;
  }
}
