// Game-session state machine.  The UI never mutates game state locally:
// every transition round-trips the service, and move submissions carry
// the turn number we believe the game is at, so a stale tab gets a
// conflict instead of corrupting the session.

import { ApiError, type GameApi } from "./api.js";
import type { GameConfig, GamePayload, HintPayload, Move, Outcome } from "./types.js";

export type Mode = "two-player" | "engine-first" | "engine-second";

export interface SessionSnapshot {
  game: GamePayload | null;
  busy: boolean;
  banner: string | null;
  lastHint: HintPayload | null;
  engineThinking: boolean;
}

type Listener = (snapshot: SessionSnapshot) => void;

export class GameSession {
  private game: GamePayload | null = null;
  private busy = false;
  private banner: string | null = null;
  private lastHint: HintPayload | null = null;
  private engineThinking = false;
  private listeners: Listener[] = [];

  constructor(
    private readonly api: GameApi,
    public readonly mode: Mode = "two-player",
  ) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  snapshot(): SessionSnapshot {
    return {
      game: this.game,
      busy: this.busy,
      banner: this.banner,
      lastHint: this.lastHint,
      engineThinking: this.engineThinking,
    };
  }

  private emit(): void {
    const snap = this.snapshot();
    for (const listener of this.listeners) {
      listener(snap);
    }
  }

  private engineSeat(): 1 | 2 | null {
    if (this.mode === "engine-first") return 1;
    if (this.mode === "engine-second") return 2;
    return null;
  }

  humanSeat(): 1 | 2 | null {
    const engine = this.engineSeat();
    if (engine === null) return null;
    return engine === 1 ? 2 : 1;
  }

  get id(): string | null {
    return this.game?.id ?? null;
  }

  turn(): number {
    return this.game?.state.turn ?? 0;
  }

  isOngoing(): boolean {
    return this.game?.state.status.state === "ongoing";
  }

  humanToMove(): boolean {
    if (!this.game || !this.isOngoing()) return false;
    const engine = this.engineSeat();
    return engine === null || this.game.state.toMove !== engine;
  }

  async start(config: GameConfig): Promise<void> {
    this.busy = true;
    this.banner = null;
    this.lastHint = null;
    this.emit();
    try {
      this.game = await this.api.createGame(config);
      this.banner = null;
    } catch (err) {
      this.banner = describeError(err);
    } finally {
      this.busy = false;
      this.emit();
    }
    await this.engineTurnIfDue();
  }

  /** Submit the human's move (cell index, or "pass"). */
  async submitMove(cell: number | "pass"): Promise<void> {
    if (!this.game) return;
    const move: Move =
      cell === "pass"
        ? { type: "pass", expectedTurn: this.turn() }
        : { type: "mark", cell, expectedTurn: this.turn() };
    await this.applyMove(move);
    await this.engineTurnIfDue();
  }

  private async applyMove(move: Move): Promise<boolean> {
    if (!this.game) return false;
    this.busy = true;
    this.emit();
    try {
      this.game = await this.api.postMove(this.game.id, move);
      this.banner = null;
      this.lastHint = null;
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.code === 409) {
        // stale turn or illegal move: refresh and surface inline
        this.banner = err.message;
        try {
          this.game = await this.api.getGame(this.game.id);
        } catch {
          // keep the stale view; the banner already explains
        }
      } else {
        this.banner = describeError(err);
      }
      return false;
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  /** When the engine owns the current seat, fetch a hint and play it. */
  async engineTurnIfDue(): Promise<void> {
    const engine = this.engineSeat();
    while (
      engine !== null &&
      this.game &&
      this.isOngoing() &&
      this.game.state.toMove === engine
    ) {
      this.engineThinking = true;
      this.emit();
      try {
        const hint = await this.api.hint(this.game.id);
        const move: Move =
          hint.move.type === "pass"
            ? { type: "pass", expectedTurn: this.turn() }
            : { type: "mark", cell: hint.move.cell, expectedTurn: this.turn() };
        const applied = await this.applyMove(move);
        if (!applied) break;
      } catch (err) {
        this.banner = describeError(err);
        break;
      } finally {
        this.engineThinking = false;
        this.emit();
      }
    }
  }

  async requestHint(): Promise<HintPayload | null> {
    if (!this.game || !this.isOngoing()) return null;
    try {
      this.lastHint = await this.api.hint(this.game.id);
      this.emit();
      return this.lastHint;
    } catch (err) {
      this.banner = describeError(err);
      this.emit();
      return null;
    }
  }

  /** Solved outcome after a hypothetical move; null when out of budget. */
  async preview(cell: number | "pass"): Promise<Outcome | "too-large" | null> {
    if (!this.game || !this.isOngoing()) return null;
    try {
      const result = await this.api.whatIf(this.game.id, cell);
      return result.resultingOutcome;
    } catch (err) {
      if (err instanceof ApiError && err.code === 503) {
        return "too-large";
      }
      return null;
    }
  }
}

export function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    return err.code === 0 ? `network failure: ${err.message}` : err.message;
  }
  return String(err);
}

/** Human-readable status line for a game payload. */
export function statusLine(game: GamePayload): string {
  const status = game.state.status;
  if (status.state === "ongoing") {
    return `Player ${game.state.toMove} to move`;
  }
  if (status.state === "won") {
    return `Player ${status.player} wins`;
  }
  return status.reason === "double_pass"
    ? "Draw (both players passed)"
    : "Draw (board full)";
}

/** Positions to highlight as the winning witness, if any. */
export function witnessPositions(game: GamePayload): number[] {
  const status = game.state.status;
  if (status.state !== "won") return [];
  if (status.witness && status.witness.length) return status.witness;
  if (status.directions) {
    const all = new Set<number>();
    for (const positions of Object.values(status.directions)) {
      for (const p of positions) all.add(p);
    }
    return [...all].sort((a, b) => a - b);
  }
  return [];
}
