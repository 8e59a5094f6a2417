// Thin client for the suggestion service; fetch is injectable so tests
// can run against a stub.

export interface Suggestion {
  fingering: string;
  score: number;
  playability: number;
  unplayable: boolean;
  pitch_f1: number;
  chord_change_ease?: number;
}

export interface ApiError {
  code: string;
  message: string;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = await resp.json();
    if (!resp.ok) {
      const err = payload as ApiError;
      throw new Error(err.message ?? `request failed (${resp.status})`);
    }
    return payload as T;
  }

  async suggest(label: string, prevFingering: string | null, k = 5): Promise<Suggestion[]> {
    const body: Record<string, unknown> = { label, k };
    if (prevFingering !== null) body.prev_fingering = prevFingering;
    const resp = await this.post<{ suggestions: Suggestion[] }>("/api/suggest", body);
    return resp.suggestions;
  }

  async health(): Promise<{ status: string; model_topology: string }> {
    const resp = await this.fetchFn(this.baseUrl + "/api/health");
    if (!resp.ok) throw new Error(`service unavailable (${resp.status})`);
    return resp.json();
  }
}
