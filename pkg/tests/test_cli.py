"""End-to-end CLI behavior through subprocesses."""

import json
import os
import subprocess
import sys

import pytest

from partiti import GeneratorConfig, generate_puzzle
from partiti.puzzle_io import document_from_puzzle, serialize_puzzle

# The interpreted kernel keeps subprocess startup fast; backend parity is
# covered in test_solver.
CLI_ENV = {**os.environ, "PARTITI_BACKEND": "numpy"}

FIG1_DOC = {
    "version": 1,
    "rows": 2,
    "cols": 2,
    "clues": [[2, 3], [22, 18]],
}


def run_cli(*args, env=None, input_text=None):
    return subprocess.run(
        [sys.executable, "-m", "partiti", *args],
        capture_output=True,
        text=True,
        input=input_text,
        env=env or CLI_ENV,
    )


@pytest.fixture(scope="module")
def golden_puzzle_file(tmp_path_factory):
    puzzle = generate_puzzle(GeneratorConfig(seed=1))
    path = tmp_path_factory.mktemp("cli") / "golden.json"
    path.write_text(serialize_puzzle(document_from_puzzle(puzzle)))
    return str(path)


def write_doc(tmp_path, payload, name="puzzle.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


class TestMath:
    @pytest.mark.parametrize(
        "args,expected",
        [
            (("math", "q", "5"), "3"),
            (("math", "q", "0"), "1"),
            (("math", "odd", "5"), "3"),
            (("math", "p", "100"), "190569292"),
        ],
    )
    def test_counts(self, args, expected):
        proc = run_cli(*args)
        assert proc.returncode == 0
        assert proc.stdout.strip() == expected

    def test_enum(self):
        proc = run_cli("math", "enum", "7")
        assert proc.returncode == 0
        assert proc.stdout.splitlines() == [
            "1 2 4", "1 6", "2 5", "3 4", "7",
        ]

    def test_enum_max_part(self):
        proc = run_cli("math", "enum", "7", "--max-part", "4")
        assert proc.stdout.splitlines() == ["1 2 4", "3 4"]

    def test_series_indexed_lines(self):
        proc = run_cli("math", "series", "distinct", "5")
        assert proc.stdout.splitlines() == [
            "0 1", "1 1", "2 1", "3 2", "4 2", "5 3",
        ]
        odd = run_cli("math", "series", "odd", "5")
        assert odd.stdout == proc.stdout

    def test_asym(self):
        proc = run_cli("math", "asym", "p", "100")
        assert proc.returncode == 0
        assert float(proc.stdout.strip()) == pytest.approx(1.9928e8, rel=1e-3)

    def test_out_of_range_is_data_error(self):
        proc = run_cli("math", "p", "401")
        assert proc.returncode == 65
        assert "400" in proc.stderr


class TestSolve:
    def test_unique_exits_zero(self, golden_puzzle_file):
        proc = run_cli("solve", golden_puzzle_file)
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(proc.stdout)
        assert doc["solution"] is not None
        assert "status=Exhausted" in proc.stderr

    def test_multiple_exits_three(self, tmp_path):
        path = write_doc(tmp_path, FIG1_DOC)
        proc = run_cli("solve", path)
        assert proc.returncode == 3

    def test_no_solution_exits_two(self, tmp_path):
        path = write_doc(
            tmp_path, {"version": 1, "rows": 2, "cols": 2, "clues": [[40, 1], [2, 3]]}
        )
        proc = run_cli("solve", path)
        assert proc.returncode == 2
        assert proc.stdout == ""

    def test_node_limit_exits_four(self, golden_puzzle_file):
        proc = run_cli("solve", golden_puzzle_file, "--node-limit", "1")
        assert proc.returncode == 4

    def test_node_limit_env_override(self, golden_puzzle_file):
        env = {**CLI_ENV, "PARTITI_NODE_LIMIT": "1"}
        proc = run_cli("solve", golden_puzzle_file, env=env)
        assert proc.returncode == 4

    def test_deterministic_stdout(self, tmp_path):
        path = write_doc(tmp_path, FIG1_DOC)
        a = run_cli("solve", path, "--cap", "10")
        b = run_cli("solve", path, "--cap", "10")
        assert a.stdout == b.stdout


class TestCount:
    def test_capped_count(self, tmp_path):
        path = write_doc(tmp_path, FIG1_DOC)
        assert run_cli("count", path, "--cap", "10").stdout.strip() == "6"
        assert run_cli("count", path).stdout.strip() == "2"


class TestVerify:
    def test_valid_solution(self, golden_puzzle_file):
        assert run_cli("verify", golden_puzzle_file).returncode == 0

    def test_invalid_solution_lists_violations(self, tmp_path):
        payload = dict(FIG1_DOC)
        payload["solution"] = [[[2], [3]], [[5, 8, 9], [4, 6, 8]]]
        path = write_doc(tmp_path, payload)
        proc = run_cli("verify", path)
        assert proc.returncode == 1
        assert "NeighborOverlap" in proc.stdout

    def test_missing_solution(self, tmp_path):
        path = write_doc(tmp_path, FIG1_DOC)
        assert run_cli("verify", path).returncode == 65


class TestHint:
    def test_bare_document_hint(self, tmp_path):
        path = write_doc(tmp_path, FIG1_DOC)
        proc = run_cli("hint", path)
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["cell"] == [0, 0]
        assert payload["digits"] == [2]
        assert payload["rule"] == "OnlyCandidate"

    def test_player_state_hint(self, tmp_path):
        state = {
            "puzzle": FIG1_DOC,
            "marks": [[[2], []], [[], []]],
        }
        path = tmp_path / "state.json"
        path.write_text(json.dumps(state))
        payload = json.loads(run_cli("hint", str(path)).stdout)
        assert payload["cell"] == [0, 1]
        assert payload["rule"] == "RequiredDigitExclusion"

    def test_solved_state_prints_null(self, tmp_path):
        state = {
            "puzzle": FIG1_DOC,
            "marks": [[[2], [3]], [[1, 5, 7, 9], [4, 6, 8]]],
        }
        path = tmp_path / "state.json"
        path.write_text(json.dumps(state))
        proc = run_cli("hint", str(path))
        assert proc.stdout.strip() == "null"


class TestGenerate:
    def test_writes_id_named_file(self, tmp_path):
        out = tmp_path / "puzzles"
        proc = run_cli(
            "generate", "--seed", "1", "--count", "1", "-o", str(out)
        )
        assert proc.returncode == 0, proc.stderr
        files = os.listdir(out)
        assert len(files) == 1
        assert files[0].startswith("pz1-6x6-1-any-")
        doc = json.loads((out / files[0]).read_text())
        assert doc["meta"]["seed"] == 1

    def test_regeneration_is_byte_identical(self, tmp_path):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        run_cli("generate", "--seed", "9", "-o", str(out_a))
        run_cli("generate", "--seed", "9", "-o", str(out_b))
        (file_a,) = os.listdir(out_a)
        (file_b,) = os.listdir(out_b)
        assert file_a == file_b
        assert (out_a / file_a).read_bytes() == (out_b / file_b).read_bytes()

    def test_stdout_mode(self):
        proc = run_cli("generate", "--seed", "4", "--rows", "4", "--cols", "4")
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(proc.stdout)
        assert (doc["rows"], doc["cols"]) == (4, 4)


class TestUsageErrors:
    def test_unknown_flag_exits_64(self):
        assert run_cli("solve", "--bogus").returncode == 64

    def test_unknown_command_exits_64(self):
        assert run_cli("frobnicate").returncode == 64

    def test_missing_file_reported(self, tmp_path):
        proc = run_cli("solve", str(tmp_path / "absent.json"))
        assert proc.returncode == 66
        assert "partiti:" in proc.stderr
