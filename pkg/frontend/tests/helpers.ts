/** Shared test scaffolding: fake storage, scripted fetch, DOM waiting. */

import type { SessionState } from '../src/api';

export function memoryStorage(): Storage {
  const data = new Map<string, string>();
  return {
    get length() {
      return data.size;
    },
    clear: () => data.clear(),
    getItem: (key: string) => (data.has(key) ? (data.get(key) as string) : null),
    key: (index: number) => Array.from(data.keys())[index] ?? null,
    removeItem: (key: string) => {
      data.delete(key);
    },
    setItem: (key: string, value: string) => {
      data.set(key, value);
    },
  };
}

export function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

export interface RouteResult {
  status: number;
  body: unknown;
}

type RouteHandler =
  | RouteResult
  | ((body: unknown) => RouteResult | Promise<RouteResult>);

export interface FetchCall {
  method: string;
  path: string;
  body: unknown;
}

/**
 * Scripted fetch replacement. Routes are keyed "METHOD /path"; each
 * handler is a static result or a function of the parsed request body.
 * Every call is recorded for assertions.
 */
export class FakeFetch {
  readonly calls: FetchCall[] = [];
  private readonly routes = new Map<string, RouteHandler>();

  on(method: string, path: string, handler: RouteHandler): this {
    this.routes.set(`${method} ${path}`, handler);
    return this;
  }

  countOf(method: string, path: string): number {
    return this.calls.filter((c) => c.method === method && c.path === path).length;
  }

  install(): void {
    const self = this;
    globalThis.fetch = async function fake(
      input: RequestInfo | URL,
      init?: RequestInit,
    ): Promise<Response> {
      const path = String(input);
      const method = init?.method ?? 'GET';
      const body = init?.body ? JSON.parse(String(init.body)) : undefined;
      self.calls.push({ method, path, body });
      const handler = self.routes.get(`${method} ${path}`);
      if (!handler) throw new TypeError(`no route for ${method} ${path}`);
      const result = typeof handler === 'function' ? await handler(body) : handler;
      return jsonResponse(result.status, result.body);
    } as typeof fetch;
  }
}

/** Let queued promise callbacks and timers run. */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

/** Poll until the predicate holds or the deadline passes. */
export async function until(
  predicate: () => boolean,
  timeoutMs = 5000,
  label = 'condition',
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (predicate()) return;
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
  throw new Error(`timed out waiting for ${label}`);
}

export function questionState(
  variable: string,
  options: string[],
  trail: SessionState['trail'] = [],
): SessionState {
  return { status: 'question', question: { variable, options }, trail };
}

export function resolvedState(
  productId: number,
  label: string,
  trail: SessionState['trail'] = [],
): SessionState {
  return { status: 'resolved', result: { product_id: productId, label }, trail };
}

export function noMatchState(trail: SessionState['trail'] = []): SessionState {
  return { status: 'no_match', trail };
}

export const CARS_CATALOG = {
  name: 'cars',
  variables: [
    {
      name: 'price',
      labels: ['less than 20,000', '20,000 to 25,000', '25,000 to 30,000', 'greater than 30,000'],
    },
    { name: 'gear', labels: ['manual', 'automatic'] },
  ],
  products: [{ id: 7, label: 'Nissan Primera 2.0SLX' }],
};
