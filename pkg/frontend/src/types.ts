// Wire types mirroring the service's JSON bodies.

export type DifficultyName = "easy" | "medium" | "hard" | "any";

export interface DocumentMeta {
  seed?: number;
  difficulty?: string;
  id?: string;
}

export interface PuzzleDocument {
  version: number;
  rows: number;
  cols: number;
  clues: number[][];
  solution?: number[][][];
  meta?: DocumentMeta;
}

export type ViolationKind = "WrongSum" | "NeighborOverlap" | "EmptyCell";

export interface Violation {
  kind: ViolationKind;
  cells: [number, number][];
  expected?: number;
  actual?: number;
  digits?: number[];
}

export type HintRule = "OnlyCandidate" | "RequiredDigitExclusion" | "SumCover";

export interface Hint {
  cell: [number, number];
  digits: number[];
  rule: HintRule;
  explanation: string;
}

export interface CheckResponse {
  solved: boolean;
  violations: Violation[];
}

export interface PlayerStateBody {
  puzzle: PuzzleDocument;
  marks: number[][][];
  elapsed: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  locus?: [number, number];
}
