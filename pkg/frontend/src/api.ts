/** Thin client for the JSON API. Every mutation returns the refreshed
 * state; the UI never holds authoritative state of its own. */

import { Side, StateView, isStateView } from "./types.js";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
  }
}

export class DependencyConflict extends ApiError {
  constructor(
    status: number,
    detail: unknown,
    public dependsOn: number,
    public userMessage: string,
  ) {
    super(status, detail);
  }
}

async function parseResponse(response: Response): Promise<StateView> {
  const body: unknown = await response.json();
  if (!response.ok) {
    const detail = (body as { detail?: unknown }).detail;
    if (
      response.status === 409 &&
      typeof detail === "object" &&
      detail !== null &&
      typeof (detail as { dependsOn?: unknown }).dependsOn === "number"
    ) {
      const d = detail as { dependsOn: number; message?: string };
      throw new DependencyConflict(
        response.status,
        detail,
        d.dependsOn,
        d.message ?? `depends on #${d.dependsOn}`,
      );
    }
    throw new ApiError(response.status, detail ?? body);
  }
  if (!isStateView(body)) {
    throw new ApiError(response.status, "payload schema mismatch");
  }
  return body;
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private post(path: string, payload: unknown): Promise<StateView> {
    return this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    }).then(parseResponse);
  }

  getState(): Promise<StateView> {
    return this.fetchFn(this.baseUrl + "/state").then(parseResponse);
  }

  edit(side: Side, editText: string): Promise<StateView> {
    return this.post("/edit", { side, editText });
  }

  migrate(side: Side, index: number, withDeps = false): Promise<StateView> {
    return this.post("/migrate", { side, index, withDeps });
  }

  merge(side: Side, policy = "historical", seed = 0): Promise<StateView> {
    return this.post("/merge", { side, policy, seed });
  }
}
