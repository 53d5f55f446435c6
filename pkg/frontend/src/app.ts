// Application wiring: new-game form, board interaction, pass/hint
// controls, and the hover what-if previews.

import { ApiClient } from "./api.js";
import { renderBoard } from "./board.js";
import { GameSession, statusLine, type Mode } from "./state.js";
import type { GameConfig, Outcome, VariantName } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const api = new ApiClient("");
let session = new GameSession(api, "engine-first");
const previews = new Map<number, Outcome | "too-large">();
let hintCell: number | null = null;

const boardHost = el<HTMLDivElement>("board");
const statusNode = el<HTMLParagraphElement>("status");
const bannerNode = el<HTMLParagraphElement>("banner");
const previewNode = el<HTMLParagraphElement>("preview");

function redraw(): void {
  const snap = session.snapshot();
  bannerNode.textContent = snap.banner ?? "";
  bannerNode.hidden = !snap.banner;
  if (!snap.game) {
    statusNode.textContent = "No game yet";
    boardHost.replaceChildren();
    return;
  }
  const thinking = snap.engineThinking ? " — engine thinking…" : "";
  statusNode.textContent = statusLine(snap.game) + thinking;
  renderBoard(
    boardHost,
    snap.game,
    {
      onCellClick: (cell) => {
        if (session.humanToMove()) void session.submitMove(cell);
      },
      onCellHover: (cell) => void showPreview(cell),
    },
    { hintCell, previews },
  );
}

async function showPreview(cell: number | null): Promise<void> {
  if (cell === null) {
    previewNode.textContent = "";
    return;
  }
  if (!session.humanToMove()) return;
  if (!previews.has(cell)) {
    const outcome = await session.preview(cell);
    if (outcome) previews.set(cell, outcome);
  }
  const outcome = previews.get(cell);
  previewNode.textContent =
    outcome === undefined
      ? ""
      : outcome === "too-large"
        ? `cell ${cell}: too large to solve`
        : `after cell ${cell}: ${outcome}`;
  redraw();
}

function currentConfig(): GameConfig {
  return {
    m: Number(el<HTMLInputElement>("cfg-m").value),
    p: Number(el<HTMLInputElement>("cfg-p").value),
    q: Number(el<HTMLInputElement>("cfg-q").value),
    k: Number(el<HTMLSelectElement>("cfg-k").value),
    variant: el<HTMLSelectElement>("cfg-variant").value as VariantName,
  };
}

function resetSession(): void {
  const mode = el<HTMLSelectElement>("cfg-mode").value as Mode;
  session = new GameSession(api, mode);
  session.subscribe(() => {
    hintCell = null;
    redraw();
  });
  previews.clear();
  void session.start(currentConfig());
}

el<HTMLButtonElement>("new-game").addEventListener("click", resetSession);
el<HTMLButtonElement>("pass").addEventListener("click", () => {
  if (session.humanToMove()) void session.submitMove("pass");
});
el<HTMLButtonElement>("hint").addEventListener("click", async () => {
  const hint = await session.requestHint();
  if (hint && hint.move.type === "mark") {
    hintCell = hint.move.cell;
    previewNode.textContent = `hint: cell ${hint.move.cell} (${hint.outcome})`;
  } else if (hint) {
    previewNode.textContent = `hint: pass (${hint.outcome})`;
  }
  redraw();
});

resetSession();
