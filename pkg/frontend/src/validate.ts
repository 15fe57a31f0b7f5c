// Local mirror of the server's rule validation, used for instant feedback.
// Must produce byte-for-byte the violations the server returns: same kinds,
// same payload fields, same deterministic ordering. The server stays
// authoritative; agreement is enforced by the replay test suite.

import type { Violation, ViolationKind } from "./types.js";

const KIND_RANK: Record<ViolationKind, number> = {
  WrongSum: 0,
  NeighborOverlap: 1,
  EmptyCell: 2,
};

export function cellSum(digits: number[]): number {
  return digits.reduce((a, b) => a + b, 0);
}

/** In-bounds Moore neighbors (Chebyshev distance exactly 1), row-major. */
export function neighbors(
  rows: number,
  cols: number,
  r: number,
  c: number,
): [number, number][] {
  const out: [number, number][] = [];
  for (let dr = -1; dr <= 1; dr++) {
    for (let dc = -1; dc <= 1; dc++) {
      if (dr === 0 && dc === 0) continue;
      const nr = r + dr;
      const nc = c + dc;
      if (nr >= 0 && nr < rows && nc >= 0 && nc < cols) out.push([nr, nc]);
    }
  }
  return out;
}

function sortViolations(violations: Violation[]): Violation[] {
  return violations.sort((a, b) => {
    const [ar, ac] = a.cells[0]!;
    const [br, bc] = b.cells[0]!;
    if (ar !== br) return ar - br;
    if (ac !== bc) return ac - bc;
    const rank = KIND_RANK[a.kind] - KIND_RANK[b.kind];
    if (rank !== 0) return rank;
    const [alr, alc] = a.cells[a.cells.length - 1]!;
    const [blr, blc] = b.cells[b.cells.length - 1]!;
    if (alr !== blr) return alr - blr;
    return alc - blc;
  });
}

/**
 * All rule violations of the marks against the clues. Empty cells are
 * ignored unless requireComplete; each overlapping neighbor pair is
 * reported once with its cells in row-major order.
 */
export function validateMarks(
  clues: number[][],
  marks: number[][][],
  requireComplete = false,
): Violation[] {
  const rows = clues.length;
  const cols = clues[0]!.length;
  const out: Violation[] = [];

  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      const digits = marks[r]![c]!;
      if (digits.length === 0) {
        if (requireComplete) out.push({ kind: "EmptyCell", cells: [[r, c]] });
        continue;
      }
      const actual = cellSum(digits);
      const expected = clues[r]![c]!;
      if (actual !== expected) {
        out.push({ kind: "WrongSum", cells: [[r, c]], expected, actual });
      }
    }
  }

  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      const digits = marks[r]![c]!;
      if (digits.length === 0) continue;
      const mine = new Set(digits);
      for (const [nr, nc] of neighbors(rows, cols, r, c)) {
        if (nr < r || (nr === r && nc <= c)) continue;
        const shared = marks[nr]![nc]!.filter((d) => mine.has(d));
        if (shared.length > 0) {
          out.push({
            kind: "NeighborOverlap",
            cells: [
              [r, c],
              [nr, nc],
            ],
            digits: shared.slice().sort((a, b) => a - b),
          });
        }
      }
    }
  }
  return sortViolations(out);
}

/** Cells referenced by any violation, as "r,c" keys (for highlighting). */
export function flaggedCells(violations: Violation[]): Set<string> {
  const out = new Set<string>();
  for (const v of violations) {
    for (const [r, c] of v.cells) out.add(`${r},${c}`);
  }
  return out;
}
