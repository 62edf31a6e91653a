// Typed client for the auth service HTTP API. Every payload the page ever
// sees goes through here, which keeps the no-secrets audit in one place.

export interface Alternative {
  label: string;
  value: string;
}

export interface ChallengeItem {
  question: number;
  text: string;
  hint: string | null;
  alternatives: Alternative[];
}

export interface Challenge {
  username: string;
  items: ChallengeItem[];
}

export interface CatalogQuestion {
  id: number;
  text: string;
  kind: "b_question" | "fixed_choice" | "numeric_range";
  labels?: string[];
  lo?: number;
  hi?: number;
  index?: string;
}

export interface SchemeParams {
  q: number;
  d: number;
  k: number;
  lam: number;
}

export interface Catalog {
  questions: CatalogQuestion[];
  params: SchemeParams;
}

export interface AlarmRow {
  time_ms: number;
  username: string;
}

export interface AnswerPayload {
  question: number;
  answer: string;
}

export type LoginResult = "ALLOW" | "DENY";

export interface ErrorDetail {
  error: string;
  question?: number | null;
  message?: string;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: ErrorDetail,
  ) {
    super(detail.message ?? detail.error);
  }
}

async function parseError(response: Response): Promise<never> {
  let detail: ErrorDetail = { error: `http_${response.status}` };
  try {
    const body = (await response.json()) as { detail?: ErrorDetail | string };
    if (typeof body.detail === "string") {
      detail = { error: body.detail };
    } else if (body.detail) {
      detail = body.detail;
    }
  } catch {
    // non-JSON error body; keep the status-based detail
  }
  throw new ApiError(response.status, detail);
}

export class AuthApi {
  constructor(public readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async catalog(): Promise<Catalog> {
    const response = await fetch(this.url("/catalog"));
    if (!response.ok) await parseError(response);
    return (await response.json()) as Catalog;
  }

  async register(username: string, answers: AnswerPayload[]): Promise<void> {
    const response = await fetch(this.url("/register"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ username, answers }),
    });
    if (!response.ok) await parseError(response);
    await response.json();
  }

  async challenge(username: string): Promise<Challenge> {
    const response = await fetch(this.url(`/challenge/${encodeURIComponent(username)}`));
    if (!response.ok) await parseError(response);
    return (await response.json()) as Challenge;
  }

  async login(username: string, sequence: string): Promise<LoginResult> {
    const response = await fetch(this.url("/login"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ username, sequence }),
    });
    if (!response.ok) await parseError(response);
    const body = (await response.json()) as { result: LoginResult };
    return body.result;
  }

  async alarms(): Promise<AlarmRow[]> {
    const response = await fetch(this.url("/admin/alarms"));
    if (!response.ok) await parseError(response);
    const body = (await response.json()) as { alarms: AlarmRow[] };
    return body.alarms;
  }
}
