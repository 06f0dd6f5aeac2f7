// Typed client for the service API. The console talks to the server through
// this module only; it holds no business rules of its own.

import type {
  AdviceJson,
  ApiErrorBody,
  FacilityCollection,
  OrderJson,
  ReviewJson,
  ReviewSubmission,
  WomanDetailJson,
  WomanJson,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, body: ApiErrorBody) {
    super(body.detail || body.error);
    this.status = status;
    this.code = body.error;
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let body: ApiErrorBody = { error: `HTTP ${response.status}`, detail: "" };
    try {
      body = (await response.json()) as ApiErrorBody;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, body);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private url(path: string): string {
    return this.base + path;
  }

  async listWomen(): Promise<WomanJson[]> {
    return unwrap(await fetch(this.url("/women")));
  }

  async womanDetail(phone: string): Promise<WomanDetailJson> {
    return unwrap(await fetch(this.url(`/women/${encodeURIComponent(phone)}`)));
  }

  async submitReview(phone: string, body: ReviewSubmission): Promise<ReviewJson> {
    return unwrap(
      await fetch(this.url(`/reviews/${encodeURIComponent(phone)}`), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      }),
    );
  }

  async sendAdvice(who: "MD" | "Admin", target: string, text: string): Promise<{ sent: number }> {
    return unwrap(
      await fetch(this.url("/advice"), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ who, target, text }),
      }),
    );
  }

  async adviceLedger(): Promise<AdviceJson[]> {
    return unwrap(await fetch(this.url("/advice")));
  }

  async dispatchBoard(): Promise<OrderJson[]> {
    return unwrap(await fetch(this.url("/dispatch")));
  }

  async closeOrder(orderId: number, outcome: string): Promise<OrderJson> {
    return unwrap(
      await fetch(this.url(`/dispatch/${orderId}/close`), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ outcome }),
      }),
    );
  }

  async facilities(): Promise<FacilityCollection> {
    return unwrap(await fetch(this.url("/facilities.geojson")));
  }

  async postInbound(line: string): Promise<{ queued: number }> {
    return unwrap(
      await fetch(this.url("/gateway/inbound"), { method: "POST", body: line }),
    );
  }

  async drainOutbox(max: number): Promise<{ lines: string[] }> {
    return unwrap(await fetch(this.url(`/outbox?max=${max}`)));
  }

  async clock(): Promise<{ now: string; mode: string }> {
    return unwrap(await fetch(this.url("/clock")));
  }

  async tick(advanceMinutes: number): Promise<{ now: string; sent: number }> {
    return unwrap(
      await fetch(this.url("/clock/tick"), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ advance_minutes: advanceMinutes }),
      }),
    );
  }
}
