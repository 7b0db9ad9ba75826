import { ApiClient, ApiRequestError } from "./api.js";
import type { InvariantPayload, StatePayload } from "./types.js";
import { vertexKey } from "./types.js";

export interface HistoryEntry {
  action: string;
  hash: string;
  version: number;
}

export type StoreListener = (store: ExplorerStore) => void;

/** Client state mirror.  All actions are funneled through a single promise
 * queue, so an in-flight request blocks further board input and rapid
 * clicks become serialized mutations. */
export class ExplorerStore {
  state: StatePayload | null = null;
  selection: { u: string | null; v: string | null } = { u: null, v: null };
  invariants: InvariantPayload | null = null;
  exchange: InvariantPayload | null = null;
  greenOverlay = true;
  lastError: string | null = null;
  log: HistoryEntry[] = [];
  cursor = 0; // number of live (not undone) mutate actions

  private queue: Promise<void> = Promise.resolve();
  private pending = 0;

  constructor(private readonly api: ApiClient, private readonly listener?: StoreListener) {}

  get busy(): boolean {
    return this.pending > 0;
  }

  private notify(): void {
    if (this.listener) this.listener(this);
  }

  /** Serialize an action onto the queue; errors land in lastError. */
  private enqueue(label: string, fn: () => Promise<void>): Promise<void> {
    this.pending += 1;
    this.queue = this.queue
      .then(fn)
      .catch((err) => {
        this.lastError = err instanceof ApiRequestError ? err.message : String(err);
      })
      .finally(() => {
        this.pending -= 1;
        this.notify();
      });
    return this.queue;
  }

  private record(action: string, st: StatePayload): void {
    this.log.push({ action, hash: st.hash, version: st.version });
  }

  build(fixture: string, framed: boolean): Promise<void> {
    return this.enqueue("build", async () => {
      const st = await this.api.build(fixture, framed);
      this.state = st;
      this.selection = { u: null, v: null };
      this.invariants = null;
      this.exchange = null;
      this.lastError = null;
      this.log = [{ action: `build ${fixture}`, hash: st.hash, version: st.version }];
      this.cursor = 0;
    });
  }

  /** Board click: frozen vertices are non-interactive (no request is sent). */
  clickVertex(id: unknown): Promise<void> {
    const key = vertexKey(id);
    const frozen = this.state?.quiver.vertices.some(
      (v) => vertexKey(v.id) === key && v.frozen,
    );
    if (frozen) return Promise.resolve();
    return this.enqueue("mutate", async () => {
      const st = await this.api.mutate(id);
      this.state = st;
      this.exchange = st.exchange ?? null;
      this.lastError = null;
      this.record(`mutate ${key}`, st);
      this.cursor += 1;
      await this.refreshInvariants();
    });
  }

  undo(): Promise<void> {
    return this.enqueue("undo", async () => {
      const st = await this.api.undo();
      this.state = st;
      this.exchange = null;
      this.lastError = null;
      this.cursor -= 1;
      // the restored board must hash exactly to the recorded state
      const expected = this.log[this.cursor]?.hash;
      if (expected !== undefined && expected !== st.hash) {
        throw new Error(`undo hash mismatch: ${st.hash} != ${expected}`);
      }
      this.log.push({ action: "undo", hash: st.hash, version: st.version });
      await this.refreshInvariants();
    });
  }

  reset(): Promise<void> {
    return this.enqueue("reset", async () => {
      const st = await this.api.reset();
      this.state = st;
      this.exchange = null;
      this.cursor = 0;
      this.record("reset", st);
      await this.refreshInvariants();
    });
  }

  /** Select a vertex for the invariant panel (first u, then v). */
  select(id: unknown): Promise<void> {
    const key = vertexKey(id);
    if (this.selection.u === null || this.selection.v !== null) {
      this.selection = { u: key, v: null };
      this.invariants = null;
      this.notify();
      return Promise.resolve();
    }
    this.selection = { u: this.selection.u, v: key };
    return this.enqueue("invariants", async () => {
      await this.refreshInvariants();
    });
  }

  toggleGreen(): void {
    if (!this.state?.framed) return;
    this.greenOverlay = !this.greenOverlay;
    this.notify();
  }

  private async refreshInvariants(): Promise<void> {
    const { u, v } = this.selection;
    if (u === null || v === null) {
      this.invariants = null;
      return;
    }
    try {
      this.invariants = await this.api.invariants(`pos:${u}`, `pos:${v}`);
    } catch (err) {
      this.invariants = null;
      this.lastError = err instanceof ApiRequestError ? err.message : String(err);
    }
  }

  /** The log cursor must stay consistent with the server's undo depth:
   * cursor = live mutations = server trail length. */
  checkCursor(): boolean {
    return this.state !== null && this.cursor === this.state.trail.length;
  }
}
