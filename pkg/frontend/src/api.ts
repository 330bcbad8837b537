/** Typed client for the spellkit /v1 HTTP API.
 *
 * The UI talks to the service exclusively through this module; no engine
 * logic lives client-side.  Errors from the service arrive as a uniform
 * envelope {"error": {"code", "message"}} and are rethrown as ApiError.
 */

export type ErrorClass = "NonWord" | "RealWord";

export interface CandidateRow {
  word: string;
  score: number;
  perto_match: boolean;
  distance: number;
}

export interface Detection {
  token_index: number;
  error_class: ErrorClass;
}

export interface Correction {
  token_index: number;
  original: string;
  suggested: string;
  used_perto: boolean;
  candidates: CandidateRow[];
}

export interface SentenceResult {
  text: string;
  detections: Detection[];
  corrections: Correction[];
  corrected_text: string;
  error?: string;
}

export interface CheckResponse {
  text: string;
  corrected_text: string;
  sentences: SentenceResult[];
}

export interface CheckOptions {
  max_dist?: number;
  margin?: number;
  top_k?: number;
  perto?: boolean;
}

export interface ApplyCorrection {
  sentence_index: number;
  token_index: number;
  replacement: string;
}

export interface HealthResponse {
  status: string;
  lexicon_entries: number;
  scorer_backend: string;
  distance_backend: string;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (cause) {
    throw new ApiError("unreachable", `service unreachable: ${String(cause)}`, 0);
  }
  const body = await response.text();
  let parsed: unknown;
  try {
    parsed = JSON.parse(body);
  } catch {
    throw new ApiError("bad_response", `non-JSON response (HTTP ${response.status})`, response.status);
  }
  if (!response.ok) {
    const envelope = parsed as { error?: { code?: string; message?: string } };
    throw new ApiError(
      envelope.error?.code ?? "unknown",
      envelope.error?.message ?? `HTTP ${response.status}`,
      response.status,
    );
  }
  return parsed as T;
}

export class SpellkitClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/+$/, "") + path;
  }

  check(text: string, options?: CheckOptions): Promise<CheckResponse> {
    const payload: Record<string, unknown> = { text };
    if (options && Object.keys(options).length > 0) payload.options = options;
    return request<CheckResponse>(this.url("/v1/check"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  apply(text: string, corrections: ApplyCorrection[]): Promise<{ text: string }> {
    return request<{ text: string }>(this.url("/v1/apply"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text, corrections }),
    });
  }

  health(): Promise<HealthResponse> {
    return request<HealthResponse>(this.url("/v1/health"));
  }
}

/** Debounced, single-in-flight scheduler for check requests.
 *
 * Rapid calls collapse into one request after the delay; a call arriving
 * while a request is running is remembered and issued once it finishes,
 * so at most one check is in flight and the newest text always wins.
 */
export class CheckScheduler {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inFlight = false;
  private pending: string | null = null;

  constructor(
    private readonly run: (text: string) => Promise<void>,
    private readonly delayMs = 400,
  ) {}

  request(text: string): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(text);
    }, this.delayMs);
  }

  /** Skip the debounce delay (explicit button press). */
  flush(text: string): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
    void this.fire(text);
  }

  private async fire(text: string): Promise<void> {
    if (this.inFlight) {
      this.pending = text;
      return;
    }
    this.inFlight = true;
    try {
      await this.run(text);
    } finally {
      this.inFlight = false;
      if (this.pending !== null) {
        const next = this.pending;
        this.pending = null;
        void this.fire(next);
      }
    }
  }
}
