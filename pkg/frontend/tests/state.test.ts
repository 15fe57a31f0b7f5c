import { describe, expect, it } from "vitest";

import { PartitiClient } from "../src/api.js";
import { GameState } from "../src/state.js";
import type { PuzzleDocument } from "../src/types.js";

const FIG1: PuzzleDocument = {
  version: 1,
  rows: 2,
  cols: 2,
  clues: [
    [2, 3],
    [22, 18],
  ],
};

function freshState(): GameState {
  // client is never hit in these tests; server calls are debounced away
  const state = new GameState(new PartitiClient("http://127.0.0.1:1"), 10_000);
  state.loadPuzzle(FIG1);
  return state;
}

describe("GameState", () => {
  it("starts empty with a selection", () => {
    const state = freshState();
    expect(state.marks).toEqual([
      [[], []],
      [[], []],
    ]);
    expect(state.selected).toEqual([0, 0]);
    expect(state.phase).toBe("playing");
  });

  it("toggling twice restores the original state", () => {
    const state = freshState();
    const before = JSON.stringify(state.marks);
    state.toggleDigit(1, 0, 5);
    expect(state.marks[1]![0]).toEqual([5]);
    state.toggleDigit(1, 0, 5);
    expect(JSON.stringify(state.marks)).toBe(before);
  });

  it("keeps digits sorted", () => {
    const state = freshState();
    state.toggleDigit(1, 0, 9);
    state.toggleDigit(1, 0, 1);
    state.toggleDigit(1, 0, 5);
    expect(state.marks[1]![0]).toEqual([1, 5, 9]);
  });

  it("completing a clue leaves no violations", () => {
    const state = freshState();
    state.toggleDigit(0, 0, 2);
    expect(state.violations).toEqual([]);
    expect(state.flagged.size).toBe(0);
  });

  it("flags both cells of a neighbor overlap immediately", () => {
    const state = freshState();
    state.toggleDigit(0, 0, 2);
    state.toggleDigit(0, 1, 2);
    expect(state.flagged.has("0,0")).toBe(true);
    expect(state.flagged.has("0,1")).toBe(true);
  });

  it("moves the selection within bounds", () => {
    const state = freshState();
    state.moveSelection(1, 1);
    expect(state.selected).toEqual([1, 1]);
    state.moveSelection(1, 1);
    expect(state.selected).toEqual([1, 1]);
    state.moveSelection(-1, 0);
    expect(state.selected).toEqual([0, 1]);
  });

  it("toggling through the digit pad uses the selection", () => {
    const state = freshState();
    state.select(1, 1);
    state.toggleSelected(4);
    expect(state.marks[1]![1]).toEqual([4]);
  });

  it("clearCell empties one cell only", () => {
    const state = freshState();
    state.toggleDigit(0, 0, 2);
    state.toggleDigit(0, 1, 3);
    state.clearCell(0, 0);
    expect(state.marks[0]![0]).toEqual([]);
    expect(state.marks[0]![1]).toEqual([3]);
  });

  it("notifies listeners on change", () => {
    const state = freshState();
    let calls = 0;
    state.onChange(() => calls++);
    state.toggleDigit(0, 0, 2);
    state.select(1, 0);
    expect(calls).toBeGreaterThanOrEqual(2);
  });
});
