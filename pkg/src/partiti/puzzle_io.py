"""Puzzle interchange format: strict parsing and canonical serialization.

One JSON document shape carries a puzzle: top-level keys in the pinned
order (version, rows, cols, clues, solution, meta), two-space indentation,
newline-terminated.  Serialization is byte-stable across platforms, so
golden files and puzzle-id regeneration tests can compare raw bytes.
Unknown fields are rejected: format evolution happens through explicit
version bumps, not silent tolerance.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass

from .errors import ParseError
from .generator import Difficulty, Puzzle
from .grid import AssignmentGrid, ClueGrid, DigitSet, GridDims
from .solver import Hint
from .grid import Violation, ViolationKind

FORMAT_VERSION = 1

_TOP_KEYS = ("version", "rows", "cols", "clues", "solution", "meta")
_META_KEYS = ("seed", "difficulty", "id")
_DIFFICULTY_NAMES = tuple(d.value for d in Difficulty)


@dataclass(frozen=True)
class DocumentMeta:
    seed: int | None = None
    difficulty: str | None = None
    id: str | None = None


@dataclass(frozen=True)
class PuzzleDocument:
    rows: int
    cols: int
    clues: tuple[tuple[int, ...], ...]
    solution: tuple[tuple[tuple[int, ...], ...], ...] | None = None
    meta: DocumentMeta | None = None
    version: int = FORMAT_VERSION


@dataclass(frozen=True)
class PlayerState:
    """A player's in-progress grid: inline puzzle or puzzle id, plus marks."""

    marks: tuple[tuple[tuple[int, ...], ...], ...]
    puzzle: PuzzleDocument | None = None
    puzzle_id: str | None = None
    elapsed: float = 0.0


def _require_int(value, what: str, locus=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer", locus)
    return value


def _parse_digit_cell(value, r: int, c: int) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise ParseError("cell digits must be an array", (r, c))
    digits = []
    for d in value:
        d = _require_int(d, "digit", (r, c))
        if not 1 <= d <= 9:
            raise ParseError(f"digit out of range: {d}", (r, c))
        digits.append(d)
    for a, b in zip(digits, digits[1:]):
        if b <= a:
            raise ParseError("digits must be strictly increasing", (r, c))
    return tuple(digits)


def _parse_digit_matrix(value, rows: int, cols: int, what: str):
    if not isinstance(value, list) or len(value) != rows:
        raise ParseError(f"{what} must be a {rows}x{cols} matrix")
    out = []
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"{what} row has wrong length", (r, 0))
        out.append(tuple(_parse_digit_cell(cell, r, c) for c, cell in enumerate(row)))
    return tuple(out)


def _check_keys(obj: dict, allowed: tuple[str, ...], what: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ParseError(f"unknown {what} field: {key!r}")


def parse_puzzle_payload(payload) -> PuzzleDocument:
    """Strictly validate an already-decoded JSON object."""
    if not isinstance(payload, dict):
        raise ParseError("puzzle document must be a JSON object")
    _check_keys(payload, _TOP_KEYS, "document")
    for key in ("version", "rows", "cols", "clues"):
        if key not in payload:
            raise ParseError(f"missing required field: {key!r}")

    version = _require_int(payload["version"], "version")
    if version != FORMAT_VERSION:
        raise ParseError(
            f"unsupported document version {version}; this build reads "
            f"version {FORMAT_VERSION}"
        )
    rows = _require_int(payload["rows"], "rows")
    cols = _require_int(payload["cols"], "cols")
    try:
        GridDims(rows, cols)
    except Exception as exc:
        raise ParseError(str(exc)) from exc

    clues_raw = payload["clues"]
    if not isinstance(clues_raw, list) or len(clues_raw) != rows:
        raise ParseError(f"clues must be a {rows}x{cols} matrix")
    clues = []
    for r, row in enumerate(clues_raw):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError("clues row has wrong length", (r, 0))
        parsed_row = []
        for c, v in enumerate(row):
            v = _require_int(v, "clue", (r, c))
            if not 1 <= v <= 45:
                raise ParseError(f"clue out of range: {v}", (r, c))
            parsed_row.append(v)
        clues.append(tuple(parsed_row))

    solution = None
    if payload.get("solution") is not None:
        solution = _parse_digit_matrix(payload["solution"], rows, cols, "solution")
        for r, row in enumerate(solution):
            for c, digits in enumerate(row):
                if not digits:
                    raise ParseError("solution cells must be non-empty", (r, c))

    meta = None
    if payload.get("meta") is not None:
        meta_raw = payload["meta"]
        if not isinstance(meta_raw, dict):
            raise ParseError("meta must be an object")
        _check_keys(meta_raw, _META_KEYS, "meta")
        seed = meta_raw.get("seed")
        if seed is not None:
            seed = _require_int(seed, "meta.seed")
        difficulty = meta_raw.get("difficulty")
        if difficulty is not None and difficulty not in _DIFFICULTY_NAMES:
            raise ParseError(f"unknown difficulty: {difficulty!r}")
        doc_id = meta_raw.get("id")
        if doc_id is not None and not isinstance(doc_id, str):
            raise ParseError("meta.id must be a string")
        meta = DocumentMeta(seed=seed, difficulty=difficulty, id=doc_id)

    return PuzzleDocument(
        rows=rows, cols=cols, clues=tuple(clues), solution=solution, meta=meta,
        version=version,
    )


def parse_puzzle(text: str) -> PuzzleDocument:
    """Parse and validate a puzzle document from JSON text."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg} (line {exc.lineno})") from exc
    return parse_puzzle_payload(payload)


def _document_payload(doc: PuzzleDocument) -> dict:
    payload: dict = {
        "version": doc.version,
        "rows": doc.rows,
        "cols": doc.cols,
        "clues": [list(row) for row in doc.clues],
    }
    if doc.solution is not None:
        payload["solution"] = [[list(cell) for cell in row] for row in doc.solution]
    if doc.meta is not None:
        meta: dict = {}
        if doc.meta.seed is not None:
            meta["seed"] = doc.meta.seed
        if doc.meta.difficulty is not None:
            meta["difficulty"] = doc.meta.difficulty
        if doc.meta.id is not None:
            meta["id"] = doc.meta.id
        payload["meta"] = meta
    return payload


def canonical_json(payload) -> str:
    """Two-space indented JSON with pinned key order, newline-terminated."""
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def serialize_puzzle(doc: PuzzleDocument) -> str:
    return canonical_json(_document_payload(doc))


def document_from_puzzle(puzzle: Puzzle, include_solution: bool = True) -> PuzzleDocument:
    dims = puzzle.clues.dims
    solution = None
    if include_solution:
        solution = tuple(
            tuple(ds.digits() for ds in row) for row in puzzle.solution.cells
        )
    return PuzzleDocument(
        rows=dims.rows,
        cols=dims.cols,
        clues=puzzle.clues.clues,
        solution=solution,
        meta=DocumentMeta(
            seed=puzzle.seed, difficulty=puzzle.difficulty.value, id=puzzle.id
        ),
    )


def clue_grid(doc: PuzzleDocument) -> ClueGrid:
    return ClueGrid(GridDims(doc.rows, doc.cols), doc.clues)


def _digit_matrix_grid(matrix, rows: int, cols: int) -> AssignmentGrid:
    return AssignmentGrid(
        GridDims(rows, cols),
        tuple(
            tuple(DigitSet.from_digits(cell) for cell in row) for row in matrix
        ),
    )


def solution_grid(doc: PuzzleDocument) -> AssignmentGrid | None:
    if doc.solution is None:
        return None
    return _digit_matrix_grid(doc.solution, doc.rows, doc.cols)


def assignment_document(
    clues: ClueGrid, assignment: AssignmentGrid, meta: DocumentMeta | None = None
) -> PuzzleDocument:
    return PuzzleDocument(
        rows=clues.dims.rows,
        cols=clues.dims.cols,
        clues=clues.clues,
        solution=tuple(tuple(ds.digits() for ds in row) for row in assignment.cells),
        meta=meta,
    )


_STATE_KEYS = ("puzzle", "puzzle_id", "marks", "elapsed")


def parse_player_state_payload(payload) -> PlayerState:
    if not isinstance(payload, dict):
        raise ParseError("player state must be a JSON object")
    _check_keys(payload, _STATE_KEYS, "player state")
    puzzle = None
    if payload.get("puzzle") is not None:
        puzzle = parse_puzzle_payload(payload["puzzle"])
    puzzle_ref = payload.get("puzzle_id")
    if puzzle_ref is not None and not isinstance(puzzle_ref, str):
        raise ParseError("puzzle_id must be a string")
    if (puzzle is None) == (puzzle_ref is None):
        raise ParseError("exactly one of 'puzzle' or 'puzzle_id' is required")
    if "marks" not in payload:
        raise ParseError("missing required field: 'marks'")
    marks_raw = payload["marks"]
    if not isinstance(marks_raw, list) or not marks_raw:
        raise ParseError("marks must be a non-empty matrix")
    rows = len(marks_raw)
    cols = len(marks_raw[0]) if isinstance(marks_raw[0], list) else 0
    if puzzle is not None:
        rows, cols = puzzle.rows, puzzle.cols
    marks = _parse_digit_matrix(marks_raw, rows, cols, "marks")
    elapsed = payload.get("elapsed", 0)
    if isinstance(elapsed, bool) or not isinstance(elapsed, (int, float)):
        raise ParseError("elapsed must be a number")
    if elapsed < 0:
        raise ParseError("elapsed must be >= 0")
    return PlayerState(
        marks=marks, puzzle=puzzle, puzzle_id=puzzle_ref, elapsed=float(elapsed)
    )


def parse_player_state(text: str) -> PlayerState:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg} (line {exc.lineno})") from exc
    return parse_player_state_payload(payload)


def marks_grid(state: PlayerState, dims: GridDims) -> AssignmentGrid:
    if len(state.marks) != dims.rows or any(
        len(row) != dims.cols for row in state.marks
    ):
        raise ParseError(
            f"marks must be a {dims.rows}x{dims.cols} matrix to match the puzzle"
        )
    return _digit_matrix_grid(state.marks, dims.rows, dims.cols)


def violation_payload(v: Violation) -> dict:
    payload: dict = {
        "kind": v.kind.value,
        "cells": [[cell.row, cell.col] for cell in v.cells],
    }
    if v.kind is ViolationKind.WRONG_SUM:
        payload["expected"] = v.expected
        payload["actual"] = v.actual
    elif v.kind is ViolationKind.NEIGHBOR_OVERLAP:
        payload["digits"] = list(v.digits.digits())
    return payload


def hint_payload(h: Hint) -> dict:
    return {
        "cell": [h.cell.row, h.cell.col],
        "digits": list(h.forced_set.digits()),
        "rule": h.rule.value,
        "explanation": h.explanation,
    }


def write_text_atomic(path: str, text: str) -> None:
    """Write via a temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
