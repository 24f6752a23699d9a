/**
 * Typed client for the session service.
 *
 * Every method is one HTTP request; the UI holds no state the server
 * does not also hold. The fetch function is injectable so tests can
 * drive the client without a network.
 */

import type { SessionResource } from "./state.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface OpRequest {
  op: string;
  params: Record<string, string | number>;
}

export interface ExportResult {
  file: string;
  format: string;
  quality: number;
  data_b64: string;
  journal: string;
}

export interface ApiError {
  status: number;
  code: string;
  message: string;
  seq?: number;
}

async function throwIfError(resp: Response): Promise<void> {
  if (resp.ok) return;
  let code = `HTTP ${resp.status}`;
  let message = resp.statusText;
  let seq: number | undefined;
  try {
    const body = await resp.json();
    code = body.code ?? code;
    message = body.message ?? message;
    seq = body.seq;
  } catch {
    // non-JSON error body; keep the status text
  }
  const err: ApiError = { status: resp.status, code, message, seq };
  throw err;
}

export class SessionApi {
  constructor(private base: string = "", private fetcher: FetchLike = fetch.bind(globalThis)) {}

  async createSession(file: Blob, name: string): Promise<SessionResource> {
    const form = new FormData();
    form.append("file", file, name);
    const resp = await this.fetcher(`${this.base}/sessions`, {
      method: "POST",
      body: form,
    });
    await throwIfError(resp);
    return resp.json();
  }

  async applyOp(id: string, req: OpRequest): Promise<SessionResource> {
    const resp = await this.fetcher(`${this.base}/sessions/${id}/ops`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(req),
    });
    await throwIfError(resp);
    return resp.json();
  }

  async undo(id: string): Promise<SessionResource> {
    const resp = await this.fetcher(`${this.base}/sessions/${id}/undo`, { method: "POST" });
    await throwIfError(resp);
    return resp.json();
  }

  async redo(id: string): Promise<SessionResource> {
    const resp = await this.fetcher(`${this.base}/sessions/${id}/redo`, { method: "POST" });
    await throwIfError(resp);
    return resp.json();
  }

  /** The canonical journal text, exactly as the server serializes it. */
  async journalText(id: string): Promise<string> {
    const resp = await this.fetcher(`${this.base}/sessions/${id}/journal`);
    await throwIfError(resp);
    return resp.text();
  }

  /** URL of the server-rendered PNG for a given journal step; stable per
   *  step, so the browser cache is a feature, not a bug. */
  imageUrl(id: string, step: number): string {
    return `${this.base}/sessions/${id}/image?state=${step}`;
  }

  async exportImage(id: string, format: string, quality: number,
                    file: string): Promise<ExportResult> {
    const resp = await this.fetcher(`${this.base}/sessions/${id}/export`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ format, quality, file }),
    });
    await throwIfError(resp);
    return resp.json();
  }
}

export function decodeBase64(b64: string): Uint8Array {
  const bin = atob(b64);
  const out = new Uint8Array(bin.length);
  for (let i = 0; i < bin.length; i++) out[i] = bin.charCodeAt(i);
  return out;
}

export function encodeBase64(data: Uint8Array): string {
  let bin = "";
  for (let i = 0; i < data.length; i++) bin += String.fromCharCode(data[i]);
  return btoa(bin);
}
