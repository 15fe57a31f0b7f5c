"""Command-line entry point.

Exit codes: 0 success (for ``solve``: unique solution), 1 failed check
(``verify`` with violations), 2 no solution, 3 multiple solutions, 4 node
limit hit, 64 usage error, 65 bad input data, 70 internal failure
(generation exhausted).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import puzzle_io
from .errors import (
    GenerationError,
    InputRangeError,
    ParseError,
    PartitiError,
    PreconditionError,
)
from .generator import (
    Difficulty,
    GeneratorConfig,
    generate_puzzle,
    rate_difficulty,
)
from .grid import GridDims, ViolationKind
from .partitions import (
    count_distinct_partitions,
    count_odd_partitions,
    count_partitions,
    enumerate_bounded_distinct_partitions,
    p_asymptotic,
    q_asymptotic,
)
from .series import distinct_parts_product, odd_parts_product
from .solver import SolveStatus, SolverConfig, hint, node_limit_from_env, solve

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66
EX_UNAVAILABLE = 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="partiti", description="Partiti puzzle engine")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    math_p = sub.add_parser("math", help="partition mathematics")
    math_sub = math_p.add_subparsers(dest="math_command", required=True,
                                     parser_class=_Parser)
    for name, help_text in (
        ("p", "count partitions of N"),
        ("q", "count distinct-part partitions of N"),
        ("odd", "count odd-part partitions of N"),
    ):
        cmd = math_sub.add_parser(name, help=help_text)
        cmd.add_argument("n", type=int)
    enum_p = math_sub.add_parser("enum", help="list distinct-part partitions of N")
    enum_p.add_argument("n", type=int)
    enum_p.add_argument("--max-part", type=int, default=9)
    asym_p = math_sub.add_parser("asym", help="leading-order growth estimate")
    asym_p.add_argument("which", choices=("p", "q"))
    asym_p.add_argument("n", type=int)
    asym_p.add_argument("--log", action="store_true",
                        help="print the natural log of the estimate")
    series_p = math_sub.add_parser("series", help="generating-function coefficients")
    series_p.add_argument("which", choices=("distinct", "odd"))
    series_p.add_argument("n", type=int)

    solve_p = sub.add_parser("solve", help="solve a puzzle file")
    solve_p.add_argument("file")
    solve_p.add_argument("--cap", type=int, default=2)
    solve_p.add_argument("--node-limit", type=int, default=None)
    solve_p.add_argument("--no-sum-cover", action="store_true")

    count_p = sub.add_parser("count", help="count solutions up to a cap")
    count_p.add_argument("file")
    count_p.add_argument("--cap", type=int, default=2)
    count_p.add_argument("--node-limit", type=int, default=None)

    verify_p = sub.add_parser("verify", help="check a document's solution")
    verify_p.add_argument("file")

    hint_p = sub.add_parser("hint", help="next forced deduction for a state")
    hint_p.add_argument("file", help="player-state JSON (or a bare puzzle document)")

    gen_p = sub.add_parser("generate", help="generate unique-solution puzzles")
    gen_p.add_argument("--rows", type=int, default=6)
    gen_p.add_argument("--cols", type=int, default=6)
    gen_p.add_argument("--seed", type=int, required=True)
    gen_p.add_argument("--difficulty", choices=("easy", "medium", "hard", "any"),
                       default="any")
    gen_p.add_argument("--count", type=int, default=1,
                       help="generate K puzzles from seeds seed..seed+K-1")
    gen_p.add_argument("-o", "--out-dir", default=None)

    rate_p = sub.add_parser("rate", help="difficulty of a unique puzzle")
    rate_p.add_argument("file")

    serve_p = sub.add_parser("serve", help="run the HTTP API")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--static", default=None,
                         help="directory of built UI assets to serve at /")

    return parser


def _read_document(path: str) -> puzzle_io.PuzzleDocument:
    with open(path, encoding="utf-8") as fh:
        return puzzle_io.parse_puzzle(fh.read())


def _solver_config(args) -> SolverConfig:
    node_limit = args.node_limit
    if node_limit is None:
        node_limit = node_limit_from_env()
    return SolverConfig(
        solution_cap=args.cap,
        node_limit=node_limit,
        enable_sum_cover=not getattr(args, "no_sum_cover", False),
    )


def _cmd_math(args) -> int:
    if args.math_command == "p":
        print(count_partitions(args.n))
    elif args.math_command == "q":
        print(count_distinct_partitions(args.n))
    elif args.math_command == "odd":
        print(count_odd_partitions(args.n))
    elif args.math_command == "enum":
        for parts in enumerate_bounded_distinct_partitions(args.n, args.max_part):
            print(" ".join(str(p) for p in parts))
    elif args.math_command == "asym":
        est = p_asymptotic(args.n) if args.which == "p" else q_asymptotic(args.n)
        print(repr(est.log_value) if args.log else repr(est.value))
    elif args.math_command == "series":
        cap = args.n
        series = (
            distinct_parts_product(cap)
            if args.which == "distinct"
            else odd_parts_product(cap)
        )
        for k, coeff in enumerate(series.coeffs):
            print(f"{k} {coeff}")
    return 0


def _solve_exit_code(status: SolveStatus, count: int) -> int:
    if status is SolveStatus.NODE_LIMIT:
        return 4
    if count == 0:
        return 2
    if count == 1:
        return 0
    return 3


def _cmd_solve(args) -> int:
    doc = _read_document(args.file)
    clues = puzzle_io.clue_grid(doc)
    result = solve(clues, _solver_config(args))
    for solution in result.solutions:
        out = puzzle_io.assignment_document(clues, solution, meta=doc.meta)
        sys.stdout.write(puzzle_io.serialize_puzzle(out))
    stats = result.stats
    print(
        f"status={result.status.value} solutions={result.count_capped} "
        f"nodes={stats.nodes} passes={stats.propagation_passes} "
        f"branch_nodes={stats.branch_nodes}",
        file=sys.stderr,
    )
    return _solve_exit_code(result.status, result.count_capped)


def _cmd_count(args) -> int:
    doc = _read_document(args.file)
    clues = puzzle_io.clue_grid(doc)
    result = solve(clues, SolverConfig(
        solution_cap=args.cap,
        node_limit=args.node_limit or node_limit_from_env(),
    ))
    print(result.count_capped)
    return 4 if result.status is SolveStatus.NODE_LIMIT else 0


def _format_violation(v) -> str:
    cells = " ".join(f"({c.row},{c.col})" for c in v.cells)
    if v.kind is ViolationKind.WRONG_SUM:
        return f"WrongSum {cells}: expected {v.expected}, got {v.actual}"
    if v.kind is ViolationKind.NEIGHBOR_OVERLAP:
        shared = ",".join(str(d) for d in v.digits.digits())
        return f"NeighborOverlap {cells}: shared digit(s) {shared}"
    return f"EmptyCell {cells}"


def _cmd_verify(args) -> int:
    from .grid import validate_assignment

    doc = _read_document(args.file)
    clues = puzzle_io.clue_grid(doc)
    solution = puzzle_io.solution_grid(doc)
    if solution is None:
        print("document has no solution to verify", file=sys.stderr)
        return EX_DATAERR
    violations = validate_assignment(clues, solution, require_complete=True)
    for v in violations:
        print(_format_violation(v))
    return 1 if violations else 0


def _cmd_hint(args) -> int:
    from .grid import AssignmentGrid

    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    try:
        state = puzzle_io.parse_player_state(text)
        doc = state.puzzle
        if doc is None:
            raise ParseError("hint requires an inline puzzle document")
        clues = puzzle_io.clue_grid(doc)
        partial = puzzle_io.marks_grid(state, clues.dims)
    except ParseError:
        doc = puzzle_io.parse_puzzle(text)
        clues = puzzle_io.clue_grid(doc)
        partial = AssignmentGrid.empty(clues.dims)
    result = hint(clues, partial)
    if result is None:
        sys.stdout.write("null\n")
    else:
        sys.stdout.write(puzzle_io.canonical_json(puzzle_io.hint_payload(result)))
    return 0


def _cmd_generate(args) -> int:
    dims = GridDims(args.rows, args.cols)
    difficulty = Difficulty(args.difficulty)
    if args.count < 1:
        raise InputRangeError("--count must be >= 1")
    for i in range(args.count):
        config = GeneratorConfig(dims=dims, seed=args.seed + i, difficulty=difficulty)
        puzzle = generate_puzzle(config)
        text = puzzle_io.serialize_puzzle(puzzle_io.document_from_puzzle(puzzle))
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            path = os.path.join(args.out_dir, f"{puzzle.id}.json")
            puzzle_io.write_text_atomic(path, text)
            print(path)
        else:
            sys.stdout.write(text)
    return 0


def _cmd_rate(args) -> int:
    doc = _read_document(args.file)
    rating = rate_difficulty(puzzle_io.clue_grid(doc))
    print(rating.value)
    return 0


def _cmd_serve(args) -> int:
    from .service import run_server

    run_server(host=args.host, port=args.port, static_dir=args.static)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "math":
            return _cmd_math(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "count":
            return _cmd_count(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "hint":
            return _cmd_hint(args)
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "rate":
            return _cmd_rate(args)
        if args.command == "serve":
            return _cmd_serve(args)
    except (ParseError, InputRangeError, PreconditionError) as exc:
        print(f"partiti: {exc}", file=sys.stderr)
        return EX_DATAERR
    except OSError as exc:
        print(f"partiti: {exc}", file=sys.stderr)
        return EX_NOINPUT
    except GenerationError as exc:
        print(f"partiti: {exc}", file=sys.stderr)
        return EX_UNAVAILABLE
    except PartitiError as exc:
        print(f"partiti: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
