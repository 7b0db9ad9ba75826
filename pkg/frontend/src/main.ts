import { ApiClient } from "./api.js";
import { boardBanner, renderBoard } from "./board.js";
import { renderGVectors, renderHistory, renderInvariantPanel, renderMatrixPanel } from "./panels.js";
import { ExplorerStore } from "./store.js";
import { vertexKey } from "./types.js";

const FIXTURES = [
  "u-to-f",
  "a1-interval",
  "a1-interval-3",
  "a1-interval-4",
  "a2-free",
  "a2-interval",
  "a3-example",
  "a3-adapted",
];

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

export function mount(): void {
  const store = new ExplorerStore(new ApiClient(), render);
  const board = el("board");
  const picker = el("fixture") as HTMLSelectElement;
  const framedBox = el("framed") as HTMLInputElement;

  for (const name of FIXTURES) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    picker.appendChild(opt);
  }

  function render(): void {
    if (!store.state) return;
    board.innerHTML =
      boardBanner(store.state) + renderBoard(store.state, store.selection, store.greenOverlay);
    el("invariants").innerHTML = renderInvariantPanel(store);
    el("matrices").innerHTML = renderMatrixPanel(store.state);
    el("gvectors").innerHTML = renderGVectors(store.state);
    el("history").innerHTML = renderHistory(store);
    el("error").textContent = store.lastError ?? "";
    (el("green-toggle") as HTMLInputElement).disabled = !store.state.framed;
    board.classList.toggle("busy", store.busy);
  }

  // one delegated listener: plain click mutates, shift-click selects
  board.addEventListener("click", (ev) => {
    const g = (ev.target as Element).closest("[data-vertex]");
    if (!g) return;
    const key = g.getAttribute("data-vertex")!;
    const frozen = g.getAttribute("data-frozen") === "true";
    if (ev.shiftKey) {
      void store.select(key);
      return;
    }
    if (frozen) return; // frozen vertices are non-interactive
    void store.clickVertex(parseKey(key));
  });

  el("build").addEventListener("click", () => {
    void store.build(picker.value, framedBox.checked);
  });
  el("undo").addEventListener("click", () => void store.undo());
  el("reset").addEventListener("click", () => void store.reset());
  el("green-toggle").addEventListener("change", () => store.toggleGreen());

  void store.build(FIXTURES[0], false);
}

/** Board keys are rendered from vertex ids; integers round-trip, anything
 * else is passed back verbatim (the server resolves by string match). */
function parseKey(key: string): unknown {
  const n = Number(key);
  return Number.isInteger(n) && key.trim() !== "" ? n : key;
}

declare global {
  interface Window {
    quiverlabMount?: typeof mount;
  }
}

if (typeof window !== "undefined") {
  window.quiverlabMount = mount;
  if (document.readyState !== "loading") mount();
  else document.addEventListener("DOMContentLoaded", () => mount());
}

export { parseKey, vertexKey };
