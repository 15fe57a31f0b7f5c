"""Partiti domain model: digit sets, grids, adjacency and rule checking.

A cell's content is a set of distinct digits 1..9 encoded as a 9-bit mask
(bit d-1 set means digit d present).  Two cells are neighbors when they are
at Chebyshev distance exactly 1, i.e. edge- or corner-adjacent.  A complete
assignment is valid when every cell's digits sum to its clue and every pair
of neighboring cells uses disjoint digit sets.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum

from .errors import InputRangeError, ShapeError
from .partitions import enumerate_bounded_distinct_partitions

FULL_MASK = 0x1FF  # all nine digits
MAX_GRID_DIM = 32

#: Sum of the digits encoded by each of the 512 possible masks.
DIGIT_SUMS = tuple(
    sum(d for d in range(1, 10) if m >> (d - 1) & 1) for m in range(512)
)


@functools.total_ordering
@dataclass(frozen=True)
class DigitSet:
    """An immutable subset of {1..9}.  Ordering is lexicographic on the
    increasing digit sequence, matching enumeration order."""

    mask: int = 0

    def __post_init__(self):
        if not 0 <= self.mask <= FULL_MASK:
            raise InputRangeError(f"digit mask out of range: {self.mask}")

    @classmethod
    def of(cls, *digits: int) -> "DigitSet":
        return cls.from_digits(digits)

    @classmethod
    def from_digits(cls, digits) -> "DigitSet":
        mask = 0
        for d in digits:
            if not 1 <= d <= 9:
                raise InputRangeError(f"digit out of range: {d}")
            mask |= 1 << (d - 1)
        return cls(mask)

    def digits(self) -> tuple[int, ...]:
        return tuple(d for d in range(1, 10) if self.mask >> (d - 1) & 1)

    @property
    def total(self) -> int:
        return DIGIT_SUMS[self.mask]

    def disjoint(self, other: "DigitSet") -> bool:
        return self.mask & other.mask == 0

    def __contains__(self, digit: int) -> bool:
        return 1 <= digit <= 9 and bool(self.mask >> (digit - 1) & 1)

    def __iter__(self):
        return iter(self.digits())

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __and__(self, other: "DigitSet") -> "DigitSet":
        return DigitSet(self.mask & other.mask)

    def __or__(self, other: "DigitSet") -> "DigitSet":
        return DigitSet(self.mask | other.mask)

    def __sub__(self, other: "DigitSet") -> "DigitSet":
        return DigitSet(self.mask & ~other.mask & FULL_MASK)

    def __lt__(self, other: "DigitSet") -> bool:
        return self.digits() < other.digits()

    def __repr__(self) -> str:
        return f"DigitSet{self.digits()}"


EMPTY_SET = DigitSet(0)


@dataclass(frozen=True)
class GridDims:
    rows: int
    cols: int

    def __post_init__(self):
        for name, v in (("rows", self.rows), ("cols", self.cols)):
            if not 1 <= v <= MAX_GRID_DIM:
                raise InputRangeError(
                    f"{name} must be in [1, {MAX_GRID_DIM}], got {v}"
                )

    @property
    def cell_count(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class CellIndex:
    row: int
    col: int

    def in_bounds(self, dims: GridDims) -> bool:
        return 0 <= self.row < dims.rows and 0 <= self.col < dims.cols


@dataclass(frozen=True)
class ClueGrid:
    """The puzzle statement: one positive clue per cell."""

    dims: GridDims
    clues: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.clues) != self.dims.rows or any(
            len(row) != self.dims.cols for row in self.clues
        ):
            raise ShapeError("clue matrix shape does not match dims")
        for r, row in enumerate(self.clues):
            for c, clue in enumerate(row):
                if not 1 <= clue <= 45:
                    raise InputRangeError(
                        f"clue must be in [1, 45], got {clue} at ({r},{c})"
                    )

    @classmethod
    def from_rows(cls, rows) -> "ClueGrid":
        clues = tuple(tuple(int(v) for v in row) for row in rows)
        if not clues or not clues[0]:
            raise ShapeError("clue matrix must be non-empty")
        return cls(GridDims(len(clues), len(clues[0])), clues)

    def clue(self, cell: CellIndex) -> int:
        return self.clues[cell.row][cell.col]


@dataclass(frozen=True)
class AssignmentGrid:
    """A (possibly partial) placement of digit sets; empty set = untouched."""

    dims: GridDims
    cells: tuple[tuple[DigitSet, ...], ...]

    def __post_init__(self):
        if len(self.cells) != self.dims.rows or any(
            len(row) != self.dims.cols for row in self.cells
        ):
            raise ShapeError("assignment shape does not match dims")

    @classmethod
    def from_rows(cls, rows) -> "AssignmentGrid":
        cells = tuple(
            tuple(
                ds if isinstance(ds, DigitSet) else DigitSet.from_digits(ds)
                for ds in row
            )
            for row in rows
        )
        if not cells or not cells[0]:
            raise ShapeError("assignment matrix must be non-empty")
        return cls(GridDims(len(cells), len(cells[0])), cells)

    @classmethod
    def empty(cls, dims: GridDims) -> "AssignmentGrid":
        return cls(dims, tuple(tuple(EMPTY_SET for _ in range(dims.cols))
                               for _ in range(dims.rows)))

    def cell(self, cell: CellIndex) -> DigitSet:
        return self.cells[cell.row][cell.col]

    def with_cell(self, cell: CellIndex, value: DigitSet) -> "AssignmentGrid":
        rows = [list(row) for row in self.cells]
        rows[cell.row][cell.col] = value
        return AssignmentGrid(self.dims, tuple(tuple(row) for row in rows))

    def is_complete(self) -> bool:
        return all(ds for row in self.cells for ds in row)


class ViolationKind(Enum):
    WRONG_SUM = "WrongSum"
    NEIGHBOR_OVERLAP = "NeighborOverlap"
    EMPTY_CELL = "EmptyCell"


_KIND_RANK = {
    ViolationKind.WRONG_SUM: 0,
    ViolationKind.NEIGHBOR_OVERLAP: 1,
    ViolationKind.EMPTY_CELL: 2,
}


@dataclass(frozen=True)
class Violation:
    """One broken rule clause.

    WRONG_SUM carries expected/actual sums for one cell, NEIGHBOR_OVERLAP
    carries the shared digits of exactly two adjacent cells (listed in
    row-major order), EMPTY_CELL carries just the cell.
    """

    kind: ViolationKind
    cells: tuple[CellIndex, ...]
    expected: int | None = None
    actual: int | None = None
    digits: DigitSet | None = None


def neighbors(dims: GridDims, cell: CellIndex) -> list[CellIndex]:
    """In-bounds cells at Chebyshev distance exactly 1, in row-major order."""
    if not cell.in_bounds(dims):
        raise InputRangeError(
            f"cell ({cell.row},{cell.col}) out of bounds for "
            f"{dims.rows}x{dims.cols}"
        )
    out = []
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            nb = CellIndex(cell.row + dr, cell.col + dc)
            if nb.in_bounds(dims):
                out.append(nb)
    return out


def _sort_key(v: Violation):
    first = v.cells[0]
    last = v.cells[-1]
    return (first.row, first.col, _KIND_RANK[v.kind], last.row, last.col)


def validate_assignment(
    clues: ClueGrid,
    assignment: AssignmentGrid,
    require_complete: bool = False,
) -> list[Violation]:
    """All rule violations of ``assignment`` against ``clues``.

    Empty cells are ignored unless ``require_complete``; each overlapping
    neighbor pair is reported once, with its cells in row-major order.
    The result is sorted by (first cell, kind, second cell) so output is
    stable across runs and implementations.
    """
    if clues.dims != assignment.dims:
        raise ShapeError(
            f"clue grid is {clues.dims.rows}x{clues.dims.cols} but assignment "
            f"is {assignment.dims.rows}x{assignment.dims.cols}"
        )
    dims = clues.dims
    out: list[Violation] = []
    for r in range(dims.rows):
        for c in range(dims.cols):
            cell = CellIndex(r, c)
            ds = assignment.cell(cell)
            if not ds:
                if require_complete:
                    out.append(Violation(ViolationKind.EMPTY_CELL, (cell,)))
                continue
            if ds.total != clues.clue(cell):
                out.append(
                    Violation(
                        ViolationKind.WRONG_SUM,
                        (cell,),
                        expected=clues.clue(cell),
                        actual=ds.total,
                    )
                )
    for r in range(dims.rows):
        for c in range(dims.cols):
            cell = CellIndex(r, c)
            ds = assignment.cell(cell)
            if not ds:
                continue
            for nb in neighbors(dims, cell):
                if (nb.row, nb.col) <= (r, c):
                    continue
                shared = ds & assignment.cell(nb)
                if shared:
                    out.append(
                        Violation(
                            ViolationKind.NEIGHBOR_OVERLAP,
                            (cell, nb),
                            digits=shared,
                        )
                    )
    out.sort(key=_sort_key)
    return out


def max_clue_bound(dims: GridDims) -> int:
    """Largest clue any cell of a solvable grid of these dims can carry.

    A lone cell may use all nine digits (45).  In a single row or column a
    cell must leave at least one digit for a non-empty neighbor (44).  When
    both dims are >= 2 every cell sits in a 2x2 block of four mutually
    adjacent cells whose other three sets consume at least 1+2+3 = 6, so 39
    is the ceiling.  Note 39 is *not* restricted to corner cells; see
    :func:`clue_value_feasible` for a constructive check at any position.
    """
    if dims.rows == 1 and dims.cols == 1:
        return 45
    if dims.rows == 1 or dims.cols == 1:
        return 44
    return 39


def _greedy_digit(used_mask: int) -> int | None:
    for d in range(1, 10):
        if not used_mask >> (d - 1) & 1:
            return d
    return None


def find_assignment_with_clue(
    dims: GridDims, cell: CellIndex, value: int
) -> AssignmentGrid | None:
    """Search for a complete valid assignment whose ``cell`` sums to ``value``.

    Strategy: pick a candidate digit set for the target cell, place single
    digits on the target's neighbors by backtracking (they are the only
    constrained cells), then fill everything else greedily.  Any remaining
    cell has at most eight already-assigned neighbors, all singletons, so a
    ninth digit is always free and the greedy phase cannot fail.
    """
    if not cell.in_bounds(dims):
        raise InputRangeError(
            f"cell ({cell.row},{cell.col}) out of bounds for "
            f"{dims.rows}x{dims.cols}"
        )
    if not 1 <= value <= 45:
        return None

    ring = neighbors(dims, cell)
    ring_adj = [
        [j for j in range(len(ring)) if j != i
         and max(abs(ring[i].row - ring[j].row),
                 abs(ring[i].col - ring[j].col)) == 1]
        for i in range(len(ring))
    ]

    for parts in enumerate_bounded_distinct_partitions(value, 9):
        target_mask = 0
        for d in parts:
            target_mask |= 1 << (d - 1)

        ring_digits: list[int] = [0] * len(ring)

        def place(i: int) -> bool:
            if i == len(ring):
                return True
            blocked = target_mask
            for j in ring_adj[i]:
                if ring_digits[j]:
                    blocked |= 1 << (ring_digits[j] - 1)
            for d in range(1, 10):
                if blocked >> (d - 1) & 1:
                    continue
                ring_digits[i] = d
                if place(i + 1):
                    return True
                ring_digits[i] = 0
            return False

        if not place(0):
            continue

        masks = [[0] * dims.cols for _ in range(dims.rows)]
        masks[cell.row][cell.col] = target_mask
        for i, nb in enumerate(ring):
            masks[nb.row][nb.col] = 1 << (ring_digits[i] - 1)
        ok = True
        for r in range(dims.rows):
            for c in range(dims.cols):
                if masks[r][c]:
                    continue
                used = 0
                for nb in neighbors(dims, CellIndex(r, c)):
                    used |= masks[nb.row][nb.col]
                d = _greedy_digit(used)
                if d is None:
                    ok = False
                    break
                masks[r][c] = 1 << (d - 1)
            if not ok:
                break
        if ok:
            return AssignmentGrid(
                dims,
                tuple(tuple(DigitSet(m) for m in row) for row in masks),
            )
    return None


def clue_value_feasible(dims: GridDims, cell: CellIndex, value: int) -> bool:
    """Whether some complete valid assignment gives ``cell`` the sum ``value``.

    Search-based, so it makes no assumption about which positions admit the
    extreme values; in particular 39 is achievable away from corners too
    (an interior cell's eight neighbors form an even cycle that two
    singleton digits can cover alternately).
    """
    return find_assignment_with_clue(dims, cell, value) is not None
