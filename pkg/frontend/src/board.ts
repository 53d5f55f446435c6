// SVG board rendering: rows top-down, marks in two colors, witness and
// hint highlights, what-if overlays, and direction badges for the
// rotation variant.  Pure DOM construction; all game data comes from the
// service payload.

import { boardGeometry, cellCentroid, directionAnchors } from "./layout.js";
import { witnessPositions } from "./state.js";
import type { GamePayload, Outcome } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface BoardHandlers {
  onCellClick: (cellIndex: number) => void;
  onCellHover?: (cellIndex: number | null) => void;
}

export interface BoardOptions {
  hintCell?: number | null;
  previews?: Map<number, Outcome | "too-large">;
}

function svg<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

const PREVIEW_LABEL: Record<Outcome | "too-large", string> = {
  FirstPlayerWin: "P1 wins",
  SecondPlayerWin: "P2 wins",
  DrawValue: "draw",
  "too-large": "too large to solve",
};

export function renderBoard(
  container: HTMLElement,
  game: GamePayload,
  handlers: BoardHandlers,
  options: BoardOptions = {},
): void {
  const { config, owner } = game.state;
  const geometry = boardGeometry(config.m);
  const root = svg("svg", {
    viewBox: `0 0 ${geometry.width} ${geometry.height + 30}`,
    width: geometry.width,
    height: geometry.height + 30,
    class: "board",
  });

  const [top, left, right] = geometry.outline;
  root.appendChild(
    svg("polygon", {
      points: `${top.x},${top.y} ${left.x},${left.y} ${right.x},${right.y}`,
      class: "board-outline",
    }),
  );

  const witness = new Set(witnessPositions(game));
  const cellOfPosition = new Map<number, number>();
  if (config.k === 1) {
    game.cells.forEach(([position], index) => cellOfPosition.set(position, index));
  } else {
    // k > 1: translucent sub-triangle overlays are the clickable cells
    game.cells.forEach((cell, index) => {
      const points = cell
        .map((id) => geometry.positions.get(id)!)
        .map((pt) => `${pt.x},${pt.y}`)
        .join(" ");
      const overlay = svg("polygon", {
        points,
        class: `cell-overlay owner-${owner[index]}`,
        "data-cell": index,
      });
      overlay.addEventListener("click", () => handlers.onCellClick(index));
      overlay.addEventListener("mouseenter", () => handlers.onCellHover?.(index));
      overlay.addEventListener("mouseleave", () => handlers.onCellHover?.(null));
      const centroid = cellCentroid(cell, geometry);
      overlay.appendChild(svg("title", {})).textContent =
        `cell ${index}: positions ${cell.join(", ")}`;
      root.appendChild(overlay);
      root.appendChild(
        svg("circle", { cx: centroid.x, cy: centroid.y, r: 3, class: "cell-anchor" }),
      );
    });
  }

  for (const [id, point] of geometry.positions) {
    const cellIndex = config.k === 1 ? cellOfPosition.get(id) : undefined;
    const owned = cellIndex !== undefined ? owner[cellIndex] : 0;
    const group = svg("g", { class: "position-group" });
    const classes = ["position", `owner-${owned}`];
    if (witness.has(id)) classes.push("witness");
    if (cellIndex !== undefined && options.hintCell === cellIndex) classes.push("hint");
    const circle = svg("circle", {
      cx: point.x,
      cy: point.y,
      r: 20,
      class: classes.join(" "),
    });
    if (cellIndex !== undefined) {
      circle.addEventListener("click", () => handlers.onCellClick(cellIndex));
      circle.addEventListener("mouseenter", () => handlers.onCellHover?.(cellIndex));
      circle.addEventListener("mouseleave", () => handlers.onCellHover?.(null));
      const preview = options.previews?.get(cellIndex);
      if (preview) {
        circle.appendChild(svg("title", {})).textContent = PREVIEW_LABEL[preview];
      }
    }
    group.appendChild(circle);
    const label = svg("text", {
      x: point.x,
      y: point.y + 5,
      class: "position-label",
      "text-anchor": "middle",
    });
    label.textContent = String(id);
    group.appendChild(label);
    const mark = owned === 1 ? "X" : owned === 2 ? "Y" : "";
    if (mark) {
      const markNode = svg("text", {
        x: point.x + 24,
        y: point.y - 14,
        class: `mark mark-${owned}`,
        "text-anchor": "middle",
      });
      markNode.textContent = mark;
      group.appendChild(markNode);
    }
    root.appendChild(group);
  }

  if (config.variant === "directional") {
    const anchors = directionAnchors(geometry);
    const wins = game.directionalWins ?? { "1": [], "2": [] };
    ([1, 2, 3] as const).forEach((d) => {
      const anchor = anchors[d];
      const byP1 = wins["1"].includes(d);
      const byP2 = wins["2"].includes(d);
      const badge = svg("g", { class: "direction-badge" });
      const state = byP1 ? "badge-p1" : byP2 ? "badge-p2" : "badge-open";
      badge.appendChild(
        svg("circle", { cx: anchor.x, cy: anchor.y, r: 13, class: `badge ${state}` }),
      );
      const text = svg("text", {
        x: anchor.x,
        y: anchor.y + 4,
        class: "badge-label",
        "text-anchor": "middle",
      });
      text.textContent = `D${d}`;
      badge.appendChild(text);
      root.appendChild(badge);
    });
  }

  container.replaceChildren(root);
}
