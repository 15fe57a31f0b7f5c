"""Constraint propagation and backtracking search over candidate digit sets.

Candidates for a cell are exactly the distinct-digit decompositions of its
clue.  Three propagation rules shrink the table:

R1 (required-digit exclusion): a digit present in every candidate of a cell
    cannot be used by any neighbor.
R2 (forbidden filter): a candidate that touches its cell's forbidden digits
    is dead.
R3 (sum cover, adjacent pairs): when two neighbors' clues add up to the sum
    of every digit still available to the pair, each solution must split
    those digits exactly between the two cells, so a candidate without an
    exact complement on the other side is dead.

Search is depth-first with minimum-remaining-values cell choice (ties by
row-major position) and candidates tried in lexicographic order, which makes
results and statistics reproducible.  The hot path runs in
:mod:`partiti._kernels`; this module owns the Python-facing types, a
readable reference implementation of propagation used for hints, and the
independent brute-force oracle.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import InputRangeError, PreconditionError, SizeGuardError
from .grid import (
    DIGIT_SUMS,
    AssignmentGrid,
    CellIndex,
    ClueGrid,
    DigitSet,
    GridDims,
    neighbors,
    validate_assignment,
)
from .partitions import enumerate_bounded_distinct_partitions

DEFAULT_NODE_LIMIT = 10_000_000
#: Practically-unbounded solution cap for exhaustive solves.
UNCAPPED = 1 << 62

_NODE_LIMIT_ENV = "PARTITI_NODE_LIMIT"

#: Candidate masks for each possible clue value, in lexicographic order of
#: the increasing digit sequence.  Immutable after import.
CANDIDATE_MASKS_BY_CLUE: tuple[tuple[int, ...], ...] = ((),) + tuple(
    tuple(
        sum(1 << (d - 1) for d in parts)
        for parts in enumerate_bounded_distinct_partitions(clue, 9)
    )
    for clue in range(1, 46)
)

_DIGIT_SUM_LUT = np.array(DIGIT_SUMS, dtype=np.int64)


def node_limit_from_env(default: int = DEFAULT_NODE_LIMIT) -> int:
    """Solver node budget, overridable through PARTITI_NODE_LIMIT."""
    raw = os.environ.get(_NODE_LIMIT_ENV)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputRangeError(f"{_NODE_LIMIT_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InputRangeError(f"{_NODE_LIMIT_ENV} must be >= 1, got {value}")
    return value


class SolveStatus(Enum):
    EXHAUSTED = "Exhausted"
    CAP_REACHED = "CapReached"
    NODE_LIMIT = "NodeLimit"
    CONTRADICTION = "Contradiction"


_STATUS_BY_CODE = {
    _kernels.STATUS_EXHAUSTED: SolveStatus.EXHAUSTED,
    _kernels.STATUS_CAP_REACHED: SolveStatus.CAP_REACHED,
    _kernels.STATUS_NODE_LIMIT: SolveStatus.NODE_LIMIT,
    _kernels.STATUS_CONTRADICTION: SolveStatus.CONTRADICTION,
}


@dataclass(frozen=True)
class SolverConfig:
    solution_cap: int = 2
    node_limit: int = DEFAULT_NODE_LIMIT
    enable_sum_cover: bool = True

    def __post_init__(self):
        if self.solution_cap < 1:
            raise InputRangeError(f"solution_cap must be >= 1, got {self.solution_cap}")
        if self.node_limit < 1:
            raise InputRangeError(f"node_limit must be >= 1, got {self.node_limit}")


@dataclass(frozen=True)
class SolveStats:
    """Deterministic search counters.

    ``nodes`` counts expanded search nodes (each runs propagation to a
    fixpoint), ``branch_nodes`` the subset that picked a cell and branched.
    Rule counters tally individual events: forbidden-set extensions for R1,
    candidate deletions for R2 and R3.
    """

    nodes: int
    propagation_passes: int
    branch_nodes: int
    required_digit_exclusions: int
    forbidden_filters: int
    sum_cover_eliminations: int


@dataclass(frozen=True)
class SolveResult:
    solutions: tuple[AssignmentGrid, ...]
    count_capped: int
    status: SolveStatus
    stats: SolveStats


@dataclass(frozen=True)
class CandidateTable:
    """Per-cell feasible digit sets plus per-cell neighbor-banned digits."""

    dims: GridDims
    candidates: tuple[tuple[DigitSet, ...], ...]
    forbidden: tuple[DigitSet, ...]

    @property
    def has_contradiction(self) -> bool:
        return any(len(c) == 0 for c in self.candidates)

    def cell_candidates(self, cell: CellIndex) -> tuple[DigitSet, ...]:
        return self.candidates[cell.row * self.dims.cols + cell.col]


class HintRule(Enum):
    ONLY_CANDIDATE = "OnlyCandidate"
    REQUIRED_DIGIT_EXCLUSION = "RequiredDigitExclusion"
    SUM_COVER = "SumCover"


@dataclass(frozen=True)
class Hint:
    """A forced deduction: ``cell`` must hold exactly ``forced_set``."""

    cell: CellIndex
    forced_set: DigitSet
    rule: HintRule
    explanation: str


def _row_major_cells(dims: GridDims) -> list[CellIndex]:
    return [CellIndex(r, c) for r in range(dims.rows) for c in range(dims.cols)]


def _neighbor_table(dims: GridDims) -> list[list[int]]:
    cols = dims.cols
    return [
        [nb.row * cols + nb.col for nb in neighbors(dims, cell)]
        for cell in _row_major_cells(dims)
    ]


def _adjacent_pairs(dims: GridDims) -> list[tuple[int, int]]:
    pairs = []
    for i, nbs in enumerate(_neighbor_table(dims)):
        for j in nbs:
            if j > i:
                pairs.append((i, j))
    return pairs


def initial_candidates(clues: ClueGrid) -> CandidateTable:
    """Candidate table before any deduction: every decomposition of each
    clue into distinct digits 1..9, nothing forbidden."""
    cand = tuple(
        tuple(DigitSet(m) for m in CANDIDATE_MASKS_BY_CLUE[clue])
        for row in clues.clues
        for clue in row
    )
    empty = tuple(DigitSet(0) for _ in cand)
    return CandidateTable(clues.dims, cand, empty)


def _propagate_masks(
    cand: list[list[int]],
    forb: list[int],
    clue_sums: list[int],
    nbr: list[list[int]],
    pairs: list[tuple[int, int]],
    enable_sum_cover: bool,
) -> bool:
    """Run R1/R2/R3 sweeps to a fixpoint, mutating ``cand``/``forb``.

    Returns True when a contradiction (empty cell) was reached; mirrors the
    kernel's sweep order exactly.
    """
    n = len(cand)
    while True:
        changed = False

        for c in range(n):
            if not cand[c]:
                return True
            req = cand[c][0]
            for m in cand[c][1:]:
                req &= m
            if req:
                for j in nbr[c]:
                    merged = forb[j] | req
                    if merged != forb[j]:
                        forb[j] = merged
                        changed = True

        for c in range(n):
            if forb[c]:
                kept = [m for m in cand[c] if m & forb[c] == 0]
                if len(kept) != len(cand[c]):
                    cand[c] = kept
                    changed = True
                if not kept:
                    return True

        if enable_sum_cover:
            for a, b in pairs:
                union_a = 0
                for m in cand[a]:
                    union_a |= m
                union_b = 0
                for m in cand[b]:
                    union_b |= m
                if union_a == 0 or union_b == 0:
                    return True
                u = union_a | union_b
                if clue_sums[a] + clue_sums[b] != DIGIT_SUMS[u]:
                    continue
                others = set(cand[b])
                kept = [m for m in cand[a] if (u & ~m) in others]
                if len(kept) != len(cand[a]):
                    cand[a] = kept
                    changed = True
                if not kept:
                    return True
                mine = set(cand[a])
                kept = [m for m in cand[b] if (u & ~m) in mine]
                if len(kept) != len(cand[b]):
                    cand[b] = kept
                    changed = True
                if not kept:
                    return True

        if not changed:
            return False


def propagate(table: CandidateTable) -> CandidateTable:
    """Deduction fixpoint of a candidate table (pure; input unchanged).

    A cell left with no candidates marks a contradiction state on the
    returned table rather than raising: search treats it as a signal.
    """
    dims = table.dims
    cand = [[ds.mask for ds in cell] for cell in table.candidates]
    forb = [ds.mask for ds in table.forbidden]
    clue_sums = [
        DIGIT_SUMS[cell[0].mask] if cell else 0 for cell in table.candidates
    ]
    _propagate_masks(
        cand, forb, clue_sums, _neighbor_table(dims), _adjacent_pairs(dims), True
    )
    return CandidateTable(
        dims,
        tuple(tuple(DigitSet(m) for m in cell) for cell in cand),
        tuple(DigitSet(m) for m in forb),
    )


def _grid_arrays(clues: ClueGrid):
    dims = clues.dims
    flat_clues = [clue for row in clues.clues for clue in row]
    n = len(flat_clues)

    masks: list[int] = []
    off = np.zeros(n + 1, dtype=np.int64)
    for i, clue in enumerate(flat_clues):
        masks.extend(CANDIDATE_MASKS_BY_CLUE[clue])
        off[i + 1] = len(masks)

    nbr = _neighbor_table(dims)
    nbr_off = np.zeros(n + 1, dtype=np.int64)
    flat_nbr: list[int] = []
    for i, ns in enumerate(nbr):
        flat_nbr.extend(ns)
        nbr_off[i + 1] = len(flat_nbr)

    pairs = _adjacent_pairs(dims)
    pair_a = np.array([a for a, _ in pairs], dtype=np.int64)
    pair_b = np.array([b for _, b in pairs], dtype=np.int64)

    return (
        np.array(masks, dtype=np.int64),
        off,
        np.array(flat_nbr, dtype=np.int64),
        nbr_off,
        pair_a,
        pair_b,
        np.array(flat_clues, dtype=np.int64),
    )


def _assignment_from_indices(
    dims: GridDims, cand_masks: np.ndarray, chosen: np.ndarray
) -> AssignmentGrid:
    cells = []
    for r in range(dims.rows):
        row = []
        for c in range(dims.cols):
            row.append(DigitSet(int(cand_masks[chosen[r * dims.cols + c]])))
        cells.append(tuple(row))
    return AssignmentGrid(dims, tuple(cells))


def solve(
    clues: ClueGrid,
    config: SolverConfig | None = None,
    *,
    backend: str | None = None,
) -> SolveResult:
    """Count and collect solutions up to the configured cap.

    Deterministic for fixed inputs and config, including statistics; the
    ``backend`` override exists for benchmarking and cross-checking the
    compiled and interpreted kernel modes.
    """
    cfg = config or SolverConfig()
    cand_masks, off, nbr_idx, nbr_off, pair_a, pair_b, clue_sums = _grid_arrays(clues)
    search = _kernels.get_search(backend)
    status_code, count, chosen, nodes, passes, branch, r1, r2, r3 = search(
        cand_masks,
        off,
        nbr_idx,
        nbr_off,
        pair_a,
        pair_b,
        clue_sums,
        _DIGIT_SUM_LUT,
        min(cfg.solution_cap, UNCAPPED),
        cfg.node_limit,
        cfg.enable_sum_cover,
    )
    solutions = tuple(
        _assignment_from_indices(clues.dims, cand_masks, chosen[i])
        for i in range(count)
    )
    return SolveResult(
        solutions=solutions,
        count_capped=int(count),
        status=_STATUS_BY_CODE[int(status_code)],
        stats=SolveStats(
            nodes=int(nodes),
            propagation_passes=int(passes),
            branch_nodes=int(branch),
            required_digit_exclusions=int(r1),
            forbidden_filters=int(r2),
            sum_cover_eliminations=int(r3),
        ),
    )


def count_solutions(clues: ClueGrid, cap: int, *, backend: str | None = None) -> int:
    """Number of solutions, capped at ``cap``."""
    result = solve(clues, SolverConfig(solution_cap=cap), backend=backend)
    return result.count_capped


#: Refuse plain enumeration beyond this many candidate combinations.
BRUTE_FORCE_PRODUCT_LIMIT = 10**8

_BRUTE_CHUNK = 1 << 16


def brute_force_solve(clues: ClueGrid) -> list[AssignmentGrid]:
    """Independent oracle: plain Cartesian enumeration with a validity filter.

    No propagation and no pruning -- every combination of per-cell clue
    decompositions is materialized (in chunks) and kept iff all adjacent
    pairs are disjoint.  Output order is row-major-lexicographic: cell (0,0)
    varies slowest, candidates in lexicographic digit order.
    """
    dims = clues.dims
    per_cell = [
        np.array(CANDIDATE_MASKS_BY_CLUE[clue], dtype=np.int64)
        for row in clues.clues
        for clue in row
    ]
    sizes = [len(a) for a in per_cell]
    total = 1
    for s in sizes:
        total *= s
    if total > BRUTE_FORCE_PRODUCT_LIMIT:
        raise SizeGuardError(
            f"candidate product {total} exceeds brute-force limit "
            f"{BRUTE_FORCE_PRODUCT_LIMIT}"
        )
    if total == 0:
        return []

    n = len(per_cell)
    pairs = _adjacent_pairs(dims)
    out: list[AssignmentGrid] = []
    for start in range(0, total, _BRUTE_CHUNK):
        idx = np.arange(start, min(start + _BRUTE_CHUNK, total), dtype=np.int64)
        cell_masks = np.empty((n, idx.shape[0]), dtype=np.int64)
        rem = idx
        for c in range(n - 1, -1, -1):
            cell_masks[c] = per_cell[c][rem % sizes[c]]
            rem = rem // sizes[c]
        ok = np.ones(idx.shape[0], dtype=bool)
        for a, b in pairs:
            ok &= (cell_masks[a] & cell_masks[b]) == 0
        for k in np.nonzero(ok)[0]:
            cells = tuple(
                tuple(
                    DigitSet(int(cell_masks[r * dims.cols + c, k]))
                    for c in range(dims.cols)
                )
                for r in range(dims.rows)
            )
            out.append(AssignmentGrid(dims, cells))
    return out


def _digits_text(mask: int) -> str:
    return "{" + ",".join(str(d) for d in range(1, 10) if mask >> (d - 1) & 1) + "}"


def hint(clues: ClueGrid, partial: AssignmentGrid) -> Hint | None:
    """First forced deduction not already reflected in ``partial``.

    The candidate table is restricted to the player's committed cells, then
    propagation rules run step by step; the first empty cell whose
    candidates collapse to one yields the hint, attributed to the rule that
    caused the collapse.  Returns None when only search-level (non-forced)
    moves remain.
    """
    violations = validate_assignment(clues, partial, require_complete=False)
    if violations:
        raise PreconditionError(
            f"partial assignment violates the rules ({len(violations)} violation(s))",
            violations=violations,
        )

    dims = clues.dims
    cells = _row_major_cells(dims)
    flat_clues = [clue for row in clues.clues for clue in row]
    committed = [partial.cell(cell).mask for cell in cells]
    cand: list[list[int]] = []
    for i, clue in enumerate(flat_clues):
        options = list(CANDIDATE_MASKS_BY_CLUE[clue])
        if committed[i]:
            options = [m for m in options if m & committed[i] == committed[i]]
        cand.append(options)
    undecided = [committed[i] == 0 for i in range(len(cells))]
    nbr = _neighbor_table(dims)
    pairs = _adjacent_pairs(dims)

    def forced(i: int, rule: HintRule, explanation: str) -> Hint:
        return Hint(cells[i], DigitSet(cand[i][0]), rule, explanation)

    for i in range(len(cells)):
        if undecided[i] and len(cand[i]) == 1:
            return forced(
                i,
                HintRule.ONLY_CANDIDATE,
                f"Clue {flat_clues[i]} has a single decomposition into "
                f"distinct digits: {_digits_text(cand[i][0])}.",
            )

    while True:
        changed = False

        for c in range(len(cells)):
            if not cand[c]:
                return None
            req = cand[c][0]
            for m in cand[c][1:]:
                req &= m
            if not req:
                continue
            for j in nbr[c]:
                kept = [m for m in cand[j] if m & req == 0]
                if len(kept) == len(cand[j]):
                    continue
                cand[j] = kept
                changed = True
                if not kept:
                    return None
                if undecided[j] and len(kept) == 1:
                    return forced(
                        j,
                        HintRule.REQUIRED_DIGIT_EXCLUSION,
                        f"A neighbor must use {_digits_text(req)}, leaving "
                        f"{_digits_text(kept[0])} as the only way to reach "
                        f"clue {flat_clues[j]}.",
                    )

        for a, b in pairs:
            union_a = 0
            for m in cand[a]:
                union_a |= m
            union_b = 0
            for m in cand[b]:
                union_b |= m
            if union_a == 0 or union_b == 0:
                return None
            u = union_a | union_b
            if flat_clues[a] + flat_clues[b] != DIGIT_SUMS[u]:
                continue
            for x, y in ((a, b), (b, a)):
                others = set(cand[y])
                kept = [m for m in cand[x] if (u & ~m) in others]
                if len(kept) == len(cand[x]):
                    continue
                cand[x] = kept
                changed = True
                if not kept:
                    return None
                if undecided[x] and len(kept) == 1:
                    return forced(
                        x,
                        HintRule.SUM_COVER,
                        f"Clues {flat_clues[a]} and {flat_clues[b]} together "
                        f"need every digit in {_digits_text(u)}; only "
                        f"{_digits_text(kept[0])} fits this cell.",
                    )

        if not changed:
            return None
