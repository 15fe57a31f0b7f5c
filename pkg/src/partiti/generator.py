"""Seeded puzzle generation with a guaranteed-unique solution.

Rejection sampling: fill a grid with random mutually-disjoint digit sets,
read the clues off the fill, and accept only when the solver proves exactly
one solution (and the difficulty filter, if any, matches).  Every attempt is
a pure function of (seed, attempt), so a config regenerates the same puzzle
byte for byte on any platform.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass
from enum import Enum

from .errors import GenerationError, InputRangeError, PreconditionError
from .grid import (
    AssignmentGrid,
    CellIndex,
    ClueGrid,
    DigitSet,
    GridDims,
    neighbors,
)
from .rng import stream_for
from .solver import SolveStats, SolveStatus, SolverConfig, solve

GENERATOR_VERSION = 1

#: Draw weights for cell set sizes 1..6; small sets keep neighborhoods loose
#: enough that random fills rarely dead-end.
DEFAULT_SET_SIZE_WEIGHTS = (3, 4, 3, 2, 1, 1)

#: Branch-node count separating Medium from Hard ratings.
MEDIUM_BRANCH_NODE_LIMIT = 20

_FILL_BACKTRACK_LIMIT = 128


class Difficulty(Enum):
    EASY = "easy"
    MEDIUM = "medium"
    HARD = "hard"
    ANY = "any"


@dataclass(frozen=True)
class GeneratorConfig:
    dims: GridDims = GridDims(6, 6)
    seed: int = 0
    difficulty: Difficulty = Difficulty.ANY
    max_attempts: int = 10_000
    set_size_weights: tuple[int, ...] = DEFAULT_SET_SIZE_WEIGHTS

    def __post_init__(self):
        if not 0 <= self.seed < 1 << 64:
            raise InputRangeError("seed must fit in 64 unsigned bits")
        if self.max_attempts < 1:
            raise InputRangeError("max_attempts must be >= 1")
        w = self.set_size_weights
        if len(w) != 6 or any(x < 0 for x in w) or sum(w) == 0:
            raise InputRangeError(
                "set_size_weights must be six non-negative integers, not all zero"
            )


@dataclass(frozen=True)
class Puzzle:
    clues: ClueGrid
    solution: AssignmentGrid
    seed: int
    difficulty: Difficulty
    id: str


def puzzle_id(dims: GridDims, seed: int, difficulty: Difficulty) -> str:
    """Stable id embedding everything needed to regenerate the puzzle.

    The digest binds the id to the generator version; the readable prefix
    lets a stateless service rebuild the puzzle from the id alone.
    """
    digest = hashlib.sha256(
        f"partiti:{GENERATOR_VERSION}:{dims.rows}:{dims.cols}:{seed}:"
        f"{difficulty.value}".encode()
    ).hexdigest()[:12]
    return f"pz{GENERATOR_VERSION}-{dims.rows}x{dims.cols}-{seed}-{difficulty.value}-{digest}"


_ID_RE = re.compile(
    r"^pz(\d+)-(\d+)x(\d+)-(\d+)-(easy|medium|hard|any)-([0-9a-f]{12})$"
)


def parse_puzzle_id(puzzle_ref: str) -> GeneratorConfig | None:
    """Recover the generating config from an id; None if the id is not ours
    (wrong shape, wrong version, or a digest that does not match)."""
    m = _ID_RE.match(puzzle_ref)
    if not m:
        return None
    version, rows, cols, seed, diff, _ = m.groups()
    if int(version) != GENERATOR_VERSION:
        return None
    try:
        dims = GridDims(int(rows), int(cols))
        config = GeneratorConfig(
            dims=dims, seed=int(seed), difficulty=Difficulty(diff)
        )
    except InputRangeError:
        return None
    if puzzle_id(dims, config.seed, config.difficulty) != puzzle_ref:
        return None
    return config


def _kth_subset(pool: list[int], size: int, k: int) -> int:
    """Mask of the k-th (lexicographic) size-``size`` subset of ``pool``."""
    mask = 0
    start = 0
    remaining = size
    while remaining > 0:
        for i in range(start, len(pool)):
            block = math.comb(len(pool) - i - 1, remaining - 1)
            if k < block:
                mask |= 1 << (pool[i] - 1)
                start = i + 1
                remaining -= 1
                break
            k -= block
    return mask


def random_assignment(
    config: GeneratorConfig, attempt: int
) -> AssignmentGrid | None:
    """One randomized backtracking fill; None when the backtrack budget runs
    out (callers just move on to the next attempt).

    Cells fill in row-major order: draw a set size from the weights
    (restricted to sizes that still fit), then a uniformly random digit set
    of that size disjoint from every already-filled neighbor.
    """
    dims = config.dims
    rng = stream_for(config.seed, attempt)
    n = dims.cell_count
    cols = dims.cols

    prev_nbrs: list[list[int]] = []
    for i in range(n):
        cell = CellIndex(i // cols, i % cols)
        prev_nbrs.append(
            [nb.row * cols + nb.col for nb in neighbors(dims, cell)
             if nb.row * cols + nb.col < i]
        )

    masks = [0] * n
    backtracks = 0
    i = 0
    while 0 <= i < n:
        used = 0
        for j in prev_nbrs[i]:
            used |= masks[j]
        free = [d for d in range(1, 10) if not used >> (d - 1) & 1]
        weights = [
            w if size <= len(free) else 0
            for size, w in enumerate(config.set_size_weights, start=1)
        ]
        if not free or sum(weights) == 0:
            backtracks += 1
            if backtracks > _FILL_BACKTRACK_LIMIT or i == 0:
                return None
            i -= 1
            masks[i] = 0
            continue
        size = rng.weighted_index(weights) + 1
        masks[i] = _kth_subset(free, size, rng.below(math.comb(len(free), size)))
        i += 1

    cells = tuple(
        tuple(DigitSet(masks[r * cols + c]) for c in range(cols))
        for r in range(dims.rows)
    )
    return AssignmentGrid(dims, cells)


def derive_clues(assignment: AssignmentGrid) -> ClueGrid:
    """Clue grid read off a complete assignment (cell sums)."""
    for r, row in enumerate(assignment.cells):
        for c, ds in enumerate(row):
            if not ds:
                raise PreconditionError(
                    f"cannot derive clues from an incomplete assignment; "
                    f"cell ({r},{c}) is empty"
                )
    return ClueGrid(
        assignment.dims,
        tuple(tuple(ds.total for ds in row) for row in assignment.cells),
    )


def _rating_from_stats(stats: SolveStats, branch_limit: int) -> Difficulty:
    if stats.branch_nodes == 0:
        return Difficulty.EASY
    if stats.branch_nodes <= branch_limit:
        return Difficulty.MEDIUM
    return Difficulty.HARD


def rate_difficulty(
    clues: ClueGrid,
    *,
    branch_limit: int = MEDIUM_BRANCH_NODE_LIMIT,
    enable_sum_cover: bool = True,
    backend: str | None = None,
) -> Difficulty:
    """Difficulty of a unique-solution puzzle from solver behavior.

    Easy: propagation alone solves the grid (no branching).  Medium: the
    uniqueness proof needs at most ``branch_limit`` branch nodes.  Hard:
    anything beyond.  Raises when the puzzle does not have exactly one
    solution.
    """
    result = solve(
        clues,
        SolverConfig(solution_cap=2, enable_sum_cover=enable_sum_cover),
        backend=backend,
    )
    if result.status is SolveStatus.NODE_LIMIT:
        raise PreconditionError("node limit hit before uniqueness was settled")
    if result.count_capped != 1:
        raise PreconditionError(
            f"difficulty is defined only for unique puzzles; "
            f"found {result.count_capped} solution(s)"
        )
    return _rating_from_stats(result.stats, branch_limit)


def generate_puzzle(
    config: GeneratorConfig, *, backend: str | None = None
) -> Puzzle:
    """Generate a puzzle with exactly one solution, deterministically.

    Attempts run in order (0, 1, ...) and the first acceptable one wins, so
    a config maps to one puzzle forever.  Raises GenerationError with
    attempt statistics when the budget is exhausted.
    """
    fill_failures = 0
    non_unique = 0
    difficulty_mismatches = 0
    unproven = 0
    attempts = 0

    for attempt in range(config.max_attempts):
        attempts += 1
        assignment = random_assignment(config, attempt)
        if assignment is None:
            fill_failures += 1
            continue
        clues = derive_clues(assignment)
        result = solve(clues, SolverConfig(solution_cap=2), backend=backend)
        if result.status is SolveStatus.NODE_LIMIT:
            unproven += 1
            continue
        if result.count_capped != 1:
            non_unique += 1
            continue
        rating = _rating_from_stats(result.stats, MEDIUM_BRANCH_NODE_LIMIT)
        if config.difficulty is not Difficulty.ANY and rating is not config.difficulty:
            difficulty_mismatches += 1
            continue
        return Puzzle(
            clues=clues,
            solution=assignment,
            seed=config.seed,
            difficulty=rating,
            id=puzzle_id(config.dims, config.seed, config.difficulty),
        )

    raise GenerationError(
        f"no unique-solution puzzle found in {config.max_attempts} attempts "
        f"(seed {config.seed}, {config.dims.rows}x{config.dims.cols}, "
        f"difficulty {config.difficulty.value})",
        attempts=attempts,
        fill_failures=fill_failures,
        non_unique=non_unique,
        difficulty_mismatches=difficulty_mismatches,
        unproven=unproven,
    )
