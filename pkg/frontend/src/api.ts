/** Thin typed client over the service HTTP API. Every non-2xx response is
 * surfaced as an ApiError carrying the service's {code, message} body. */

import type {
  InsightPayload,
  InterfaceTag,
  ReportRow,
  SceneDoc,
  SessionDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function expectJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let code = "http_error";
    let message = resp.statusText;
    try {
      const body = (await resp.json()) as { code?: string; message?: string };
      code = body.code ?? code;
      message = body.message ?? message;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, code, message);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  listScenes(): Promise<Array<{ id: string }>> {
    return fetch(this.url("/api/scenes")).then((r) => expectJson(r));
  }

  getScene(sceneId: string): Promise<SceneDoc> {
    return fetch(this.url(`/api/scenes/${sceneId}`)).then((r) => expectJson(r));
  }

  createSession(sceneId: string, tag: InterfaceTag): Promise<SessionDoc> {
    return fetch(this.url("/api/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ scene_id: sceneId, interface: tag }),
    }).then((r) => expectJson(r));
  }

  putInsight(sessionId: string, objectId: string, payload: InsightPayload): Promise<InsightPayload> {
    return fetch(this.url(`/api/sessions/${sessionId}/insight/${objectId}`), {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    }).then((r) => expectJson(r));
  }

  getInsight(sessionId: string, objectId: string): Promise<InsightPayload> {
    return fetch(this.url(`/api/sessions/${sessionId}/insight/${objectId}`)).then((r) =>
      expectJson(r),
    );
  }

  submit(sessionId: string): Promise<SessionDoc> {
    return fetch(this.url(`/api/sessions/${sessionId}/submit`), { method: "POST" }).then((r) =>
      expectJson(r),
    );
  }

  simulate(sessionId: string, truthId: string, nSims = 50, seed = 0): Promise<ReportRow> {
    return fetch(this.url("/api/simulate"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ session_id: sessionId, truth_id: truthId, n_sims: nSims, seed }),
    }).then((r) => expectJson(r));
  }

  getReports(): Promise<ReportRow[]> {
    return fetch(this.url("/api/reports")).then((r) => expectJson(r));
  }
}
