import type { ExplorerStore } from "./store.js";
import type { InvariantPayload, MatrixJson, StatePayload } from "./types.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function matrixTable(m: MatrixJson, title: string): string {
  const rows: string[] = [];
  for (let i = 0; i < m.rows; i++) {
    const cells = [];
    for (let j = 0; j < m.cols; j++) {
      cells.push(`<td>${m.entries[i * m.cols + j]}</td>`);
    }
    rows.push(`<tr>${cells.join("")}</tr>`);
  }
  return `<div class="matrix"><h4>${title}</h4><table>${rows.join("")}</table></div>`;
}

function invariantRows(inv: InvariantPayload): string {
  const lambdaRow =
    inv.lambda_entry === null || inv.lambda_entry === undefined
      ? ""
      : `<tr><td>&Lambda; entry</td><td class="num">${inv.lambda_entry}</td></tr>`;
  return (
    `<tr><td>&lt;u,v&gt;<sub>trop</sub></td><td class="num">${inv.tropical_uv}</td></tr>` +
    `<tr><td>&lt;v,u&gt;<sub>trop</sub></td><td class="num">${inv.tropical_vu}</td></tr>` +
    `<tr><td>(u||v)<sub>F</sub></td><td class="num" data-role="f-invariant">${inv.f_invariant}</td></tr>` +
    `<tr><td>&#120537; = F/2</td><td class="num">${inv.d_invariant}</td></tr>` +
    lambdaRow
  );
}

/** The pair panel: selected pair first, then the exchange pair produced by
 * the last mutation.  A zero F-invariant gets the "same seed" badge. */
export function renderInvariantPanel(store: ExplorerStore): string {
  const bits: string[] = ['<h3>invariants</h3>'];
  const { u, v } = store.selection;
  if (u === null || v === null) {
    bits.push('<p class="dim">select two vertices to compare</p>');
  } else if (store.invariants) {
    const inv = store.invariants;
    const badge =
      inv.f_invariant === 0 ? ' <span class="badge">same seed</span>' : "";
    bits.push(`<p>pair (${esc(u)}, ${esc(v)})${badge}</p>`);
    bits.push(`<table class="inv">${invariantRows(inv)}</table>`);
  } else {
    bits.push(`<p>pair (${esc(u)}, ${esc(v)})</p><p class="dim">no data</p>`);
  }
  if (store.exchange) {
    bits.push('<h4>exchange pair (new vs old)</h4>');
    bits.push(`<table class="inv" data-role="exchange">${invariantRows(store.exchange)}</table>`);
  }
  return bits.join("\n");
}

export function renderMatrixPanel(state: StatePayload): string {
  return (
    matrixTable(state.lambda, "&Lambda;") +
    matrixTable(state.bhat, "B&#770;") +
    `<p class="dim">type scalar d = ${state.d}</p>`
  );
}

export function renderGVectors(state: StatePayload): string {
  const rows = state.order
    .map((vid) => {
      const key = String(vid);
      const g = state.g_vectors[key] ?? [];
      const x = state.cluster[key] ?? "";
      return `<tr><td>${esc(key)}</td><td>(${g.join(", ")})</td><td class="poly">${esc(x)}</td></tr>`;
    })
    .join("");
  return `<h3>cluster</h3><table class="gvec"><tr><th>pos</th><th>g-vector</th><th>variable</th></tr>${rows}</table>`;
}

export function renderHistory(store: ExplorerStore): string {
  const items = store.log
    .map((e, k) => {
      const cls = k === store.log.length - 1 ? "cur" : "";
      return `<li class="${cls}">${esc(e.action)} <code>${e.hash.slice(0, 8)}</code></li>`;
    })
    .join("");
  const depth = store.state ? store.state.trail.length : 0;
  return `<h3>history</h3><ol class="log">${items}</ol><p class="dim">undo depth ${depth}</p>`;
}
