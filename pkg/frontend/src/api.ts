/**
 * Thin client for the navigator HTTP API.
 *
 * Every call resolves to the parsed JSON body or throws ApiError with
 * the status code and the server's error message, so the app layer can
 * surface 4xx responses inline without string-matching on fetch errors.
 */

export interface Question {
  variable: string;
  options: string[];
}

export interface Result {
  product_id: number;
  label: string;
}

export interface TrailStep {
  variable: string;
  value: number;
  label: string;
}

export interface SessionState {
  status: 'question' | 'resolved' | 'no_match';
  question?: Question;
  result?: Result;
  trail: TrailStep[];
}

export interface CatalogVariable {
  name: string;
  labels: string[];
}

export interface CatalogProduct {
  id: number;
  label: string;
}

export interface CatalogInfo {
  name: string;
  variables: CatalogVariable[];
  products: CatalogProduct[];
}

export interface CreatedSession {
  session_id: string;
  state: SessionState;
}

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = 'ApiError';
    this.status = status;
  }
}

async function call<T>(
  baseUrl: string,
  method: string,
  path: string,
  body?: unknown,
): Promise<T> {
  const init: RequestInit = { method };
  if (body !== undefined) {
    init.headers = { 'Content-Type': 'application/json' };
    init.body = JSON.stringify(body);
  }
  const response = await fetch(baseUrl + path, init);
  let payload: unknown = null;
  try {
    payload = await response.json();
  } catch {
    payload = null;
  }
  if (!response.ok) {
    const detail = (payload as { error?: string } | null)?.error;
    throw new ApiError(response.status, detail || `request failed (${response.status})`);
  }
  return payload as T;
}

interface StateEnvelope {
  state: SessionState;
}

export class NavigatorApi {
  constructor(private readonly baseUrl: string = '') {}

  catalog(): Promise<CatalogInfo> {
    return call(this.baseUrl, 'GET', '/api/catalog');
  }

  createSession(): Promise<CreatedSession> {
    return call(this.baseUrl, 'POST', '/api/sessions');
  }

  async getSession(sessionId: string): Promise<SessionState> {
    const doc = await call<StateEnvelope>(this.baseUrl, 'GET', `/api/sessions/${sessionId}`);
    return doc.state;
  }

  async answer(sessionId: string, value: number): Promise<SessionState> {
    const doc = await call<StateEnvelope>(
      this.baseUrl, 'POST', `/api/sessions/${sessionId}/answer`, { value },
    );
    return doc.state;
  }

  async undo(sessionId: string): Promise<SessionState> {
    const doc = await call<StateEnvelope>(
      this.baseUrl, 'POST', `/api/sessions/${sessionId}/undo`,
    );
    return doc.state;
  }
}
