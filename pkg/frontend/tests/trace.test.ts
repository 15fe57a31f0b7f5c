// Integration against the real service: replayed interaction traces must
// produce identical local and server verdicts, and the hint flow must
// highlight the forced cell of the corner fixture.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { PartitiClient } from "../src/api.js";
import { GameState } from "../src/state.js";
import type { PuzzleDocument, Violation } from "../src/types.js";
import { validateMarks } from "../src/validate.js";

let server: ChildProcess;
let base = "";

function startServer(): Promise<string> {
  return new Promise((resolve, reject) => {
    server = spawn("python3", ["-m", "partiti", "serve", "--port", "0"], {
      env: { ...process.env, PARTITI_BACKEND: "numpy" },
      stdio: ["ignore", "pipe", "pipe"],
    });
    let out = "";
    const onData = (chunk: Buffer) => {
      out += chunk.toString();
      const match = out.match(/listening on (http:\/\/[^/]+)\//);
      if (match) resolve(match[1]!);
    };
    server.stdout!.on("data", onData);
    server.stderr!.on("data", () => {});
    server.on("error", reject);
    server.on("exit", (code) =>
      reject(new Error(`service exited early (${code}): ${out}`)),
    );
    setTimeout(() => reject(new Error(`service start timeout: ${out}`)), 30_000);
  });
}

beforeAll(async () => {
  base = await startServer();
}, 40_000);

afterAll(() => {
  server?.kill();
});

/** Deterministic 32-bit LCG so the trace is reproducible. */
function lcg(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (Math.imul(state, 1664525) + 1013904223) >>> 0;
    return state;
  };
}

const FIG1: PuzzleDocument = {
  version: 1,
  rows: 2,
  cols: 2,
  clues: [
    [2, 3],
    [22, 18],
  ],
};

describe("local/server agreement", () => {
  it(
    "100 replayed random toggles produce identical violation verdicts",
    { timeout: 120_000 },
    async () => {
      const client = new PartitiClient(base);
      const puzzle = await client.getPuzzle("any", 11);
      expect(puzzle.rows).toBe(6);

      const next = lcg(0xdecafbad);
      const marks: number[][][] = Array.from({ length: puzzle.rows }, () =>
        Array.from({ length: puzzle.cols }, () => [] as number[]),
      );

      for (let step = 0; step < 100; step++) {
        const r = next() % puzzle.rows;
        const c = next() % puzzle.cols;
        const digit = (next() % 9) + 1;
        const cell = marks[r]![c]!;
        const at = cell.indexOf(digit);
        if (at >= 0) cell.splice(at, 1);
        else {
          cell.push(digit);
          cell.sort((a, b) => a - b);
        }

        const local = validateMarks(puzzle.clues, marks, false);
        const server = (await client.validate({
          puzzle,
          marks,
          elapsed: step,
        })) as Violation[];
        expect(server).toEqual(local);
      }
    },
  );

  it("check endpoint agrees with a locally complete grid", async () => {
    const client = new PartitiClient(base);
    const solved = [
      [[2], [3]],
      [
        [1, 5, 7, 9],
        [4, 6, 8],
      ],
    ];
    const result = await client.check({
      puzzle: FIG1,
      marks: solved,
      elapsed: 1,
    });
    expect(result).toEqual({ solved: true, violations: [] });
  });
});

describe("hint flow", () => {
  it(
    "highlights the forced clue-2 cell on the corner fixture",
    { timeout: 30_000 },
    async () => {
      const state = new GameState(new PartitiClient(base));
      state.loadPuzzle(FIG1);
      const highlight = await state.requestHint();
      expect(highlight).not.toBeNull();
      expect(highlight!.cell).toEqual([0, 0]);
      expect(highlight!.digits).toEqual([2]);
      expect(highlight!.rule).toBe("OnlyCandidate");
      expect(highlight!.explanation.length).toBeGreaterThan(0);
      expect(state.selected).toEqual([0, 0]);
    },
  );

  it("returns null on a solved grid", async () => {
    const client = new PartitiClient(base);
    const hint = await client.hint({
      puzzle: FIG1,
      marks: [
        [[2], [3]],
        [
          [1, 5, 7, 9],
          [4, 6, 8],
        ],
      ],
      elapsed: 0,
    });
    expect(hint).toBeNull();
  });
});
