import type { LayoutCell, StatePayload } from "./types.js";
import { vertexKey } from "./types.js";

const CELL_W = 110;
const CELL_H = 80;
const R = 18;

interface Placed {
  key: string;
  x: number;
  y: number;
  frozen: boolean;
  shadow: boolean;
}

function place(layout: LayoutCell[]): Map<string, Placed> {
  const out = new Map<string, Placed>();
  for (const cell of layout) {
    const key = vertexKey(cell.id);
    const dx = cell.shadow ? 28 : 0;
    const dy = cell.shadow ? -26 : 0;
    out.set(key, {
      key,
      x: cell.col * CELL_W + dx,
      y: cell.row * CELL_H + dy,
      frozen: false,
      shadow: Boolean(cell.shadow),
    });
  }
  return out;
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

/** Render the board as an SVG string.  Rows are semantic (Dynkin index),
 * columns are interval positions; no force layout.  Vertices carry
 * data-vertex attributes so a single delegated listener handles clicks. */
export function renderBoard(
  state: StatePayload,
  selection: { u: string | null; v: string | null },
  greenOverlay: boolean,
): string {
  const cells = place(state.layout);
  for (const v of state.quiver.vertices) {
    const key = vertexKey(v.id);
    const cell = cells.get(key);
    if (cell) cell.frozen = v.frozen;
  }
  const width = Math.max(...[...cells.values()].map((c) => c.x)) + CELL_W;
  const height = Math.max(...[...cells.values()].map((c) => c.y)) + CELL_H;

  const lines: string[] = [];
  lines.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="board">`,
  );
  lines.push(`<defs><marker id="tip" markerWidth="8" markerHeight="8" refX="7" refY="3" orient="auto"><path d="M0,0 L7,3 L0,6 z"/></marker></defs>`);

  // arrows first so the discs overlay them
  const multiplicity = new Map<string, number>();
  for (const a of state.quiver.arrows) {
    const s = cells.get(vertexKey(a.src));
    const t = cells.get(vertexKey(a.dst));
    if (!s || !t) continue;
    const pairKey = `${vertexKey(a.src)}->${vertexKey(a.dst)}`;
    const seen = multiplicity.get(pairKey) ?? 0;
    multiplicity.set(pairKey, seen + 1);
    const dx = t.x - s.x;
    const dy = t.y - s.y;
    const len = Math.hypot(dx, dy) || 1;
    const ux = dx / len;
    const uy = dy / len;
    // parallel arrows bow outwards
    const bow = seen === 0 ? 0 : (seen % 2 === 1 ? 1 : -1) * 14 * Math.ceil(seen / 2);
    const mx = (s.x + t.x) / 2 - uy * bow;
    const my = (s.y + t.y) / 2 + ux * bow;
    const x1 = s.x + ux * (R + 2);
    const y1 = s.y + uy * (R + 2);
    const x2 = t.x - ux * (R + 4);
    const y2 = t.y - uy * (R + 4);
    const cls = a.frozen ? "arrow frozen" : "arrow";
    lines.push(
      `<path class="${cls}" d="M ${x1} ${y1} Q ${mx} ${my} ${x2} ${y2}" fill="none" marker-end="url(#tip)"/>`,
    );
  }

  for (const cell of cells.values()) {
    const color = state.colors[cell.key];
    const classes = ["vertex"];
    if (cell.frozen) classes.push("frozen");
    if (greenOverlay && color) classes.push(color);
    if (selection.u === cell.key) classes.push("sel-u");
    if (selection.v === cell.key) classes.push("sel-v");
    const shape = cell.frozen
      ? `<rect x="${cell.x - R}" y="${cell.y - R}" width="${2 * R}" height="${2 * R}"/>`
      : `<circle cx="${cell.x}" cy="${cell.y}" r="${R}"/>`;
    lines.push(
      `<g class="${classes.join(" ")}" data-vertex="${esc(cell.key)}" data-frozen="${cell.frozen}">` +
        shape +
        `<text x="${cell.x}" y="${cell.y + 4}">${esc(cell.key)}</text></g>`,
    );
  }
  lines.push("</svg>");
  return lines.join("\n");
}

export function boardBanner(state: StatePayload): string {
  if (!state.framed || !state.all_red) return "";
  const sigma = state.sigma
    ? Object.entries(state.sigma)
        .map(([k, v]) => `${k} &rarr; ${vertexKey(v)}`)
        .join(", ")
    : "?";
  return `<div class="banner">maximal green sequence complete; &sigma;: ${sigma}</div>`;
}
