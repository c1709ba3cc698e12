/**
 * Application controller.
 *
 * Holds the last server state plus a busy flag and an inline error
 * message, and re-renders the screen after every transition. The app
 * never walks the diagram itself; every move is a round trip to the
 * API, so the screen mirrors the server verbatim.
 *
 * Concurrency: one API request in flight at a time. While a request is
 * pending all buttons are disabled and further clicks are ignored.
 */

import { ApiError, NavigatorApi } from './api';
import type { SessionState } from './api';
import { renderFailure, renderScreen } from './views';

export const STORAGE_KEY = 'infodd.session';

export interface AppOptions {
  baseUrl?: string;
  storage?: Storage;
}

export class ShopApp {
  private readonly api: NavigatorApi;
  private readonly storage: Storage;
  private readonly root: HTMLElement;
  private sessionId: string | null = null;
  private state: SessionState | null = null;
  private catalogName = 'product';
  private busy = false;
  private error: string | null = null;

  constructor(root: HTMLElement, options: AppOptions = {}) {
    this.root = root;
    this.api = new NavigatorApi(options.baseUrl ?? '');
    this.storage = options.storage ?? window.localStorage;
  }

  /** Create a session, or resume the one in browser storage. */
  async boot(): Promise<void> {
    try {
      const catalog = await this.api.catalog();
      this.catalogName = catalog.name;
      const stored = this.storage.getItem(STORAGE_KEY);
      if (stored) {
        try {
          this.state = await this.api.getSession(stored);
          this.sessionId = stored;
        } catch (err) {
          // Stale id (expired or server restarted): fall through to a
          // fresh session. Anything else is a real failure.
          if (!(err instanceof ApiError && err.status === 404)) throw err;
        }
      }
      if (!this.sessionId) {
        await this.openFreshSession();
      }
      this.error = null;
      this.render();
    } catch (err) {
      const detail = err instanceof Error ? err.message : String(err);
      renderFailure(this.root, `Cannot reach the shop service (${detail}).`, () => {
        void this.boot();
      });
    }
  }

  get currentState(): SessionState | null {
    return this.state;
  }

  get currentSessionId(): string | null {
    return this.sessionId;
  }

  private async openFreshSession(): Promise<void> {
    const created = await this.api.createSession();
    this.sessionId = created.session_id;
    this.state = created.state;
    this.storage.setItem(STORAGE_KEY, created.session_id);
  }

  private render(): void {
    if (!this.state) return;
    renderScreen(
      this.root,
      {
        catalogName: this.catalogName,
        state: this.state,
        busy: this.busy,
        error: this.error,
      },
      {
        onChoose: (value) => void this.choose(value),
        onUndo: () => void this.undoStep(),
        onRestart: () => void this.restart(),
      },
    );
  }

  private setControlsDisabled(disabled: boolean): void {
    this.root.querySelectorAll('button').forEach((btn) => {
      btn.disabled = disabled;
    });
  }

  /**
   * Run one API transition under the in-flight guard. A 4xx answer is
   * shown inline and the authoritative state is re-fetched; a network
   * failure keeps the last state with a retry hint.
   */
  private async transition(action: () => Promise<SessionState>): Promise<void> {
    if (this.busy || !this.sessionId) return;
    this.busy = true;
    this.setControlsDisabled(true);
    try {
      this.state = await action();
      this.error = null;
    } catch (err) {
      if (err instanceof ApiError) {
        this.error = err.message;
        try {
          this.state = await this.api.getSession(this.sessionId);
        } catch {
          // keep the last known state if the re-fetch fails too
        }
      } else {
        this.error = 'Network problem, please try again.';
      }
    } finally {
      this.busy = false;
      this.render();
    }
  }

  async choose(value: number): Promise<void> {
    await this.transition(() => this.api.answer(this.sessionId as string, value));
  }

  async undoStep(): Promise<void> {
    await this.transition(() => this.api.undo(this.sessionId as string));
  }

  /** Drop the stored session and start a new dialogue from the root. */
  async restart(): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.setControlsDisabled(true);
    this.storage.removeItem(STORAGE_KEY);
    this.sessionId = null;
    try {
      await this.openFreshSession();
      this.error = null;
    } catch (err) {
      const detail = err instanceof Error ? err.message : String(err);
      this.error = `Could not start a new session (${detail}).`;
    } finally {
      this.busy = false;
      this.render();
    }
  }
}
