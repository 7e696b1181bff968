/** Typed client for the elicitation service. One method per endpoint;
 * engine errors surface as ApiError with the server's code and message. */

import type {
  ApiErrorBody,
  FeedbackBundle,
  MeanSummary,
  QuantilePair,
  SessionDocument,
  SessionView,
  TransformTag,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly details: Record<string, unknown>;

  constructor(status: number, body: ApiErrorBody["error"]) {
    super(body.message);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code;
    this.details = body.details ?? {};
  }
}

export interface FeedbackQuery {
  k?: number;
  j?: number;
  seed?: number;
  band_level?: number;
  interval_level?: number;
  alphas?: string;
}

export class ElicitClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const parsed = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const error = (parsed as ApiErrorBody)?.error ?? {
        code: "unknown-error",
        message: `HTTP ${response.status}`,
        details: {},
      };
      throw new ApiError(response.status, error);
    }
    return parsed as T;
  }

  createSession(context: Record<string, string>, transform: TransformTag): Promise<SessionView> {
    return this.request("POST", "/sessions", { context, transform });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  submitBounds(id: string, lower: number, upper: number): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/bounds`, { lower, upper });
  }

  submitMeanQuantiles(
    id: string,
    quantiles: QuantilePair[],
    family?: string,
  ): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/mean-quantiles`, {
      quantiles,
      family: family ?? null,
    });
  }

  submitProportion(
    id: string,
    thetaLo: number,
    thetaHi: number,
    width?: number,
  ): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/proportion`, {
      theta_lo: thetaLo,
      theta_hi: thetaHi,
      width: width ?? null,
    });
  }

  reviseMean(id: string, quantiles: QuantilePair[], family?: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/revise`, {
      target: "mean",
      quantiles,
      family: family ?? null,
    });
  }

  reviseProportion(
    id: string,
    thetaLo: number,
    thetaHi: number,
    width?: number,
  ): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/revise`, {
      target: "proportion",
      theta_lo: thetaLo,
      theta_hi: thetaHi,
      width: width ?? null,
    });
  }

  meanSummary(id: string, levels = "0.01,0.99"): Promise<MeanSummary> {
    return this.request("GET", `/sessions/${id}/mean-summary?levels=${levels}`);
  }

  getFeedback(id: string, query: FeedbackQuery = {}): Promise<FeedbackBundle> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(query)) {
      if (value !== undefined) params.set(key, String(value));
    }
    const suffix = params.size > 0 ? `?${params.toString()}` : "";
    return this.request("GET", `/sessions/${id}/feedback${suffix}`);
  }

  markFeedbackShown(id: string, summary: Record<string, unknown> = {}): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/feedback-shown`, { summary });
  }

  conclude(id: string, note = ""): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/conclude`, { note });
  }

  exportSession(id: string): Promise<SessionDocument> {
    return this.request("GET", `/sessions/${id}/export`);
  }
}
