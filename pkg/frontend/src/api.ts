/** Typed client for the registry service. All RDF text comes from the server. */

import type {
  EntryInfo,
  RegisteredInfo,
  SensorInstanceJson,
  SensorTypeJson,
  Violation,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: Violation[] = [],
  ) {
    super(message);
  }
}

/** The server could not be reached at all (offline, refused, aborted by timeout). */
export class NetworkError extends Error {
  readonly cause: unknown;

  constructor(cause: unknown) {
    super("could not reach the registry service");
    this.cause = cause;
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let code = "UNKNOWN";
  let message = `${response.status} ${response.statusText}`;
  let details: Violation[] = [];
  try {
    const body = await response.json();
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
    if (Array.isArray(body.details)) details = body.details;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, code, message, details);
}

export class Client {
  constructor(readonly base: string = "") {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await fetch(this.base + path, init);
    } catch (err) {
      throw new NetworkError(err);
    }
    await raiseForStatus(response);
    return response;
  }

  private async postJson(path: string, payload: unknown, signal?: AbortSignal): Promise<Response> {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
      signal,
    });
  }

  async health(): Promise<{ status: string; types: number; instances: number }> {
    return (await this.request("/health")).json();
  }

  async listTypes(): Promise<EntryInfo[]> {
    return (await this.request("/api/types", { headers: { accept: "application/json" } })).json();
  }

  async listInstances(): Promise<EntryInfo[]> {
    return (await this.request("/api/instances", { headers: { accept: "application/json" } })).json();
  }

  async getTurtle(kind: "types" | "instances", id: string): Promise<string> {
    const response = await this.request(`/api/${kind}/${encodeURIComponent(id)}`, {
      headers: { accept: "text/turtle" },
    });
    return response.text();
  }

  async registerType(payload: SensorTypeJson): Promise<RegisteredInfo> {
    return (await this.postJson("/api/types", payload)).json();
  }

  async updateType(payload: SensorTypeJson): Promise<RegisteredInfo> {
    const response = await this.request(`/api/types/${encodeURIComponent(payload.id)}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
    return response.json();
  }

  async registerInstance(payload: SensorInstanceJson): Promise<RegisteredInfo> {
    return (await this.postJson("/api/instances", payload)).json();
  }

  async previewType(payload: SensorTypeJson, signal?: AbortSignal): Promise<string> {
    return (await this.postJson("/api/preview/type", payload, signal)).text();
  }

  async previewInstance(payload: SensorInstanceJson, signal?: AbortSignal): Promise<string> {
    return (await this.postJson("/api/preview/instance", payload, signal)).text();
  }

  async metadata(instanceId: string): Promise<string> {
    const response = await this.request(`/api/instances/${encodeURIComponent(instanceId)}/metadata`);
    return response.text();
  }
}
