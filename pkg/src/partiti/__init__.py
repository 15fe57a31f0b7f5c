"""Partiti puzzle engine.

Solve, verify, rate and generate Partiti puzzles -- grids where every cell
receives distinct digits 1..9 summing to its clue, with digit sets disjoint
between edge- or corner-adjacent cells -- on top of an exactly-tested
integer-partition core.
"""

from .errors import (
    GenerationError,
    InputRangeError,
    ParseError,
    PartitiError,
    PreconditionError,
    ShapeError,
    SizeGuardError,
)
from .generator import (
    DEFAULT_SET_SIZE_WEIGHTS,
    GENERATOR_VERSION,
    MEDIUM_BRANCH_NODE_LIMIT,
    Difficulty,
    GeneratorConfig,
    Puzzle,
    derive_clues,
    generate_puzzle,
    parse_puzzle_id,
    puzzle_id,
    random_assignment,
    rate_difficulty,
)
from .grid import (
    AssignmentGrid,
    CellIndex,
    ClueGrid,
    DigitSet,
    GridDims,
    Violation,
    ViolationKind,
    clue_value_feasible,
    find_assignment_with_clue,
    max_clue_bound,
    neighbors,
    validate_assignment,
)
from .partitions import (
    N_MAX_EXACT,
    AsymptoticEstimate,
    count_distinct_partitions,
    count_odd_partitions,
    count_partitions,
    enumerate_bounded_distinct_partitions,
    p_asymptotic,
    q_asymptotic,
)
from .puzzle_io import (
    DocumentMeta,
    PlayerState,
    PuzzleDocument,
    document_from_puzzle,
    parse_player_state,
    parse_puzzle,
    serialize_puzzle,
)
from .series import (
    TruncatedSeries,
    distinct_parts_product,
    geometric_factor,
    multiply,
    odd_parts_product,
)
from .solver import (
    UNCAPPED,
    CandidateTable,
    Hint,
    HintRule,
    SolveResult,
    SolveStats,
    SolveStatus,
    SolverConfig,
    brute_force_solve,
    count_solutions,
    hint,
    initial_candidates,
    propagate,
    solve,
)

__version__ = "0.1.0"
