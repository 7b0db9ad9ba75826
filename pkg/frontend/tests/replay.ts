import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

interface Recorded {
  method: string;
  path: string;
  body: Record<string, unknown> | null;
  params: Record<string, string> | null;
  status: number;
  response: unknown;
}

const here = dirname(fileURLToPath(import.meta.url));

export function loadFlows(): Recorded[] {
  return JSON.parse(readFileSync(join(here, "fixtures", "flows.json"), "utf8"));
}

/** A fetch stub that replays payloads recorded from the live session API.
 * Requests must arrive in the recorded order with matching method, path
 * and body, which is exactly what the store's single queue guarantees. */
export function replayFetch(entries: Recorded[]): FetchLike & { remaining(): number } {
  const queue = [...entries];
  const impl = (async (url: string, init?: RequestInit) => {
    const next = queue.shift();
    if (!next) throw new Error(`unexpected request ${url}`);
    const method = init?.method ?? "GET";
    const [path, query] = url.split("?");
    if (method !== next.method || path !== next.path) {
      throw new Error(`expected ${next.method} ${next.path}, got ${method} ${path}`);
    }
    if (next.body) {
      const got = JSON.parse(String(init?.body ?? "{}"));
      for (const [k, v] of Object.entries(next.body)) {
        if (JSON.stringify(got[k]) !== JSON.stringify(v)) {
          throw new Error(`body mismatch on ${path}: ${k}=${JSON.stringify(got[k])}`);
        }
      }
    }
    if (next.params) {
      const got = new URLSearchParams(query ?? "");
      for (const [k, v] of Object.entries(next.params)) {
        if (got.get(k) !== v) {
          throw new Error(`param mismatch on ${path}: ${k}=${got.get(k)}`);
        }
      }
    }
    return {
      ok: next.status < 400,
      status: next.status,
      json: async () => next.response,
    } as Response;
  }) as FetchLike & { remaining(): number };
  impl.remaining = () => queue.length;
  return impl;
}
