// DOM rendering: board, cells, digit pad, toolbar and status bar.

import type { GameState } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function formatTime(seconds: number): string {
  const m = Math.floor(seconds / 60);
  const s = seconds % 60;
  return `${m}:${String(s).padStart(2, "0")}`;
}

export class BoardView {
  private readonly root: HTMLElement;
  private readonly state: GameState;
  private boardEl: HTMLElement;
  private padEl: HTMLElement;
  private statusEl: HTMLElement;
  private bannerEl: HTMLElement;
  private hintEl: HTMLElement;

  constructor(root: HTMLElement, state: GameState) {
    this.root = root;
    this.state = state;

    const toolbar = el("div", "toolbar");
    const difficulty = el("select", "difficulty") as HTMLSelectElement;
    for (const name of ["easy", "medium", "hard", "any"]) {
      const option = el("option", undefined, name) as HTMLOptionElement;
      option.value = name;
      difficulty.appendChild(option);
    }
    difficulty.value = "any";
    const newGame = el("button", "new-game", "new game");
    newGame.addEventListener("click", () => {
      void this.state.newGame(
        difficulty.value as "easy" | "medium" | "hard" | "any",
      );
    });
    const hintBtn = el("button", "hint", "hint");
    hintBtn.addEventListener("click", () => void this.state.requestHint());
    const checkBtn = el("button", "check", "check");
    checkBtn.addEventListener("click", () => void this.state.checkSolution());
    toolbar.append(difficulty, newGame, hintBtn, checkBtn);

    this.bannerEl = el("div", "banner hidden");
    this.bannerEl.addEventListener("click", () => this.state.dismissBanner());
    this.boardEl = el("div", "board");
    this.hintEl = el("div", "hint-text");
    this.padEl = el("div", "digit-pad");
    for (let d = 1; d <= 9; d++) {
      const chip = el("button", "chip", String(d));
      chip.dataset.digit = String(d);
      chip.addEventListener("click", () => this.state.toggleSelected(d));
      this.padEl.appendChild(chip);
    }
    this.statusEl = el("div", "status-bar");

    this.root.append(toolbar, this.bannerEl, this.boardEl, this.hintEl,
                     this.padEl, this.statusEl);

    document.addEventListener("keydown", (event) => this.onKey(event));
    state.onChange(() => this.render());
    this.render();
  }

  private onKey(event: KeyboardEvent): void {
    if (event.key >= "1" && event.key <= "9") {
      this.state.toggleSelected(Number(event.key));
    } else if (event.key === "ArrowUp") {
      this.state.moveSelection(-1, 0);
    } else if (event.key === "ArrowDown") {
      this.state.moveSelection(1, 0);
    } else if (event.key === "ArrowLeft") {
      this.state.moveSelection(0, -1);
    } else if (event.key === "ArrowRight") {
      this.state.moveSelection(0, 1);
    } else if (event.key === "Backspace" && this.state.selected) {
      const [r, c] = this.state.selected;
      this.state.clearCell(r, c);
    } else {
      return;
    }
    event.preventDefault();
  }

  private render(): void {
    const state = this.state;
    const puzzle = state.puzzle;

    this.bannerEl.textContent = state.banner ?? "";
    this.bannerEl.classList.toggle("hidden", state.banner === null);

    this.boardEl.replaceChildren();
    if (!puzzle) {
      this.statusEl.textContent = "press “new game” to start";
      return;
    }
    this.boardEl.style.gridTemplateColumns = `repeat(${puzzle.cols}, 1fr)`;
    for (let r = 0; r < puzzle.rows; r++) {
      for (let c = 0; c < puzzle.cols; c++) {
        const cell = el("div", "cell");
        const clue = el("div", "clue", String(puzzle.clues[r]![c]!));
        const digits = el(
          "div",
          "digits",
          state.marks[r]![c]!.join(""),
        );
        cell.append(clue, digits);
        if (state.selected && state.selected[0] === r && state.selected[1] === c) {
          cell.classList.add("selected");
        }
        if (state.flagged.has(`${r},${c}`)) cell.classList.add("violation");
        if (state.highlight) {
          const [hr, hc] = state.highlight.cell;
          if (hr === r && hc === c) cell.classList.add("hinted");
        }
        const sum = state.marks[r]![c]!.reduce((a, b) => a + b, 0);
        if (sum === puzzle.clues[r]![c] && !state.flagged.has(`${r},${c}`)) {
          cell.classList.add("complete");
        }
        cell.addEventListener("click", () => state.select(r, c));
        this.boardEl.appendChild(cell);
      }
    }

    this.hintEl.textContent = state.highlight
      ? `${state.highlight.rule}: ${state.highlight.explanation}`
      : "";

    const seed = puzzle.meta?.seed;
    const parts = [
      state.phase === "solved" ? "solved" : "playing",
      `time ${formatTime(state.elapsed)}`,
    ];
    if (seed !== undefined) parts.push(`seed ${seed}`);
    if (puzzle.meta?.difficulty) parts.push(puzzle.meta.difficulty);
    this.statusEl.textContent = parts.join(" · ");
  }
}
