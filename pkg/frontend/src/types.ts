// Wire types for the triramsey HTTP/JSON service.

export type VariantName = "standard" | "directional";

export interface GameConfig {
  m: number;
  p: number;
  q: number;
  k: number;
  variant: VariantName;
}

export type Move
  = { type: "mark"; cell: number; expectedTurn?: number }
  | { type: "pass"; expectedTurn?: number };

export interface HistoryEntry {
  player: 1 | 2;
  type: "mark" | "pass";
  cell?: number;
}

export type StatusPayload =
  | { state: "ongoing" }
  | {
      state: "won";
      player: 1 | 2;
      witness: number[] | null;
      moveIndex: number;
      directions?: Record<string, number[]>;
    }
  | { state: "draw"; reason: "board_full" | "double_pass" };

export interface StatePayload {
  config: GameConfig;
  owner: number[];
  history: HistoryEntry[];
  toMove: 1 | 2;
  turn: number;
  status: StatusPayload;
}

export interface GamePayload {
  id: string;
  state: StatePayload;
  cells: number[][];
  board: string;
  directionalWins?: Record<"1" | "2", number[]>;
  createdAt?: string;
  updatedAt?: string;
}

export interface HintPayload {
  move: { type: "mark"; cell: number } | { type: "pass" };
  outcome: Outcome;
  nodesExplored: number;
}

export type Outcome = "FirstPlayerWin" | "SecondPlayerWin" | "DrawValue";

export interface WhatIfPayload {
  move: string;
  resultingOutcome: Outcome;
  nodesExplored: number;
}

export interface BracketPayload {
  n: number;
  k: number;
  value: string;
}
