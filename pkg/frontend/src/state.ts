// Game state and play flows, free of DOM concerns so they are directly
// testable. Local validation runs synchronously on every toggle; the
// server's verdict arrives debounced and must agree (the UI surfaces a
// mismatch as a bug banner rather than hiding it).

import { PartitiClient } from "./api.js";
import type {
  DifficultyName,
  Hint,
  PuzzleDocument,
  Violation,
} from "./types.js";
import { flaggedCells, validateMarks } from "./validate.js";

export type GamePhase = "idle" | "playing" | "solved";

export interface HintHighlight {
  cell: [number, number];
  digits: number[];
  rule: string;
  explanation: string;
}

export interface StateListener {
  (state: GameState): void;
}

export class GameState {
  puzzle: PuzzleDocument | null = null;
  marks: number[][][] = [];
  selected: [number, number] | null = null;
  violations: Violation[] = [];
  flagged = new Set<string>();
  highlight: HintHighlight | null = null;
  phase: GamePhase = "idle";
  elapsed = 0;
  banner: string | null = null;

  private readonly client: PartitiClient;
  private readonly listeners: StateListener[] = [];
  private validateTimer: ReturnType<typeof setTimeout> | null = null;
  private readonly debounceMs: number;

  constructor(client: PartitiClient, debounceMs = 150) {
    this.client = client;
    this.debounceMs = debounceMs;
  }

  onChange(listener: StateListener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this);
  }

  loadPuzzle(doc: PuzzleDocument): void {
    this.puzzle = doc;
    this.marks = Array.from({ length: doc.rows }, () =>
      Array.from({ length: doc.cols }, () => [] as number[]),
    );
    this.selected = [0, 0];
    this.violations = [];
    this.flagged = new Set();
    this.highlight = null;
    this.phase = "playing";
    this.elapsed = 0;
    this.banner = null;
    this.emit();
  }

  async newGame(difficulty: DifficultyName, seed?: number): Promise<void> {
    try {
      const doc = await this.client.getPuzzle(difficulty, seed);
      this.loadPuzzle(doc);
    } catch (err) {
      this.banner = `could not fetch a puzzle: ${(err as Error).message}`;
      this.emit();
    }
  }

  select(r: number, c: number): void {
    if (!this.puzzle) return;
    this.selected = [r, c];
    this.emit();
  }

  moveSelection(dr: number, dc: number): void {
    if (!this.puzzle || !this.selected) return;
    const [r, c] = this.selected;
    const nr = Math.min(Math.max(r + dr, 0), this.puzzle.rows - 1);
    const nc = Math.min(Math.max(c + dc, 0), this.puzzle.cols - 1);
    this.selected = [nr, nc];
    this.emit();
  }

  /** Add or remove a digit in a cell; illegal states are shown, not blocked. */
  toggleDigit(r: number, c: number, digit: number): void {
    if (!this.puzzle || digit < 1 || digit > 9) return;
    const cell = this.marks[r]![c]!;
    const at = cell.indexOf(digit);
    if (at >= 0) cell.splice(at, 1);
    else {
      cell.push(digit);
      cell.sort((a, b) => a - b);
    }
    this.highlight = null;
    if (this.phase === "solved") this.phase = "playing";
    this.revalidateLocal();
    this.scheduleServerValidate();
    this.emit();
  }

  toggleSelected(digit: number): void {
    if (this.selected) {
      this.toggleDigit(this.selected[0], this.selected[1], digit);
    }
  }

  clearCell(r: number, c: number): void {
    if (!this.puzzle) return;
    this.marks[r]![c] = [];
    this.revalidateLocal();
    this.scheduleServerValidate();
    this.emit();
  }

  revalidateLocal(): void {
    if (!this.puzzle) return;
    this.violations = validateMarks(this.puzzle.clues, this.marks, false);
    this.flagged = flaggedCells(this.violations);
  }

  private stateBody() {
    if (!this.puzzle) throw new Error("no puzzle loaded");
    return {
      puzzle: this.puzzle,
      marks: this.marks,
      elapsed: this.elapsed,
    };
  }

  private scheduleServerValidate(): void {
    if (this.validateTimer !== null) clearTimeout(this.validateTimer);
    this.validateTimer = setTimeout(() => {
      this.validateTimer = null;
      void this.serverValidate();
    }, this.debounceMs);
  }

  /** Ask the server for its verdict and surface any disagreement. */
  async serverValidate(): Promise<void> {
    if (!this.puzzle) return;
    try {
      const server = await this.client.validate(this.stateBody());
      if (server === null) return; // superseded by a newer request
      const local = JSON.stringify(this.violations);
      if (JSON.stringify(server) !== local) {
        this.banner = "local and server validation disagree (bug)";
        this.violations = server;
        this.flagged = flaggedCells(server);
      }
      this.emit();
    } catch (err) {
      this.banner = `validation failed: ${(err as Error).message}`;
      this.emit();
    }
  }

  async requestHint(): Promise<HintHighlight | null> {
    if (!this.puzzle) return null;
    try {
      const hint: Hint | null = await this.client.hint(this.stateBody());
      this.highlight = hint
        ? {
            cell: hint.cell,
            digits: hint.digits,
            rule: hint.rule,
            explanation: hint.explanation,
          }
        : null;
      this.banner = hint ? null : "no forced move here; search required";
      if (hint) this.selected = hint.cell;
      this.emit();
      return this.highlight;
    } catch (err) {
      this.banner = `hint unavailable: ${(err as Error).message}`;
      this.emit();
      return null;
    }
  }

  async checkSolution(): Promise<boolean> {
    if (!this.puzzle) return false;
    try {
      const result = await this.client.check(this.stateBody());
      this.phase = result.solved ? "solved" : "playing";
      this.banner = result.solved
        ? "solved!"
        : `not yet: ${result.violations.length} issue(s)`;
      if (!result.solved) {
        this.violations = result.violations.filter(
          (v) => v.kind !== "EmptyCell",
        );
        this.flagged = flaggedCells(this.violations);
      }
      this.emit();
      return result.solved;
    } catch (err) {
      this.banner = `check failed: ${(err as Error).message}`;
      this.emit();
      return false;
    }
  }

  tick(): void {
    if (this.phase === "playing") {
      this.elapsed += 1;
      this.emit();
    }
  }

  dismissBanner(): void {
    this.banner = null;
    this.emit();
  }
}
