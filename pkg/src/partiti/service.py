"""Stateless HTTP API for the play UI.

Endpoints (JSON bodies, canonical serialization):

  GET  /api/puzzle?difficulty=&seed=&rows=&cols=   clues + meta, never the solution
  POST /api/validate                               violations of a player state
  POST /api/hint                                   next forced deduction or null
  POST /api/check                                  {"solved": bool, "violations": [...]}

Puzzles are reproducible from (dims, seed, difficulty), and the puzzle id
embeds those plus a digest, so a request by id regenerates the same puzzle
after any restart; there is no storage.  Solutions never leave the server:
validation and completion checking need only the clues.
"""

from __future__ import annotations

import json
import mimetypes
import os
import secrets
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from . import puzzle_io
from .errors import GenerationError, ParseError, PreconditionError
from .generator import (
    Difficulty,
    GeneratorConfig,
    generate_puzzle,
    parse_puzzle_id,
)
from .grid import GridDims, validate_assignment
from .solver import hint as solver_hint

_MAX_BODY = 1 << 20


class ApiError(Exception):
    """Error reported to clients as {"code", "message", "locus"?}.

    Codes form a closed set: bad_request, invalid_document, unknown_puzzle,
    state_invalid, generation_exhausted, not_found, method_not_allowed.
    """

    def __init__(self, status: int, code: str, message: str, locus=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.locus = locus

    def payload(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        if self.locus is not None:
            out["locus"] = [self.locus[0], self.locus[1]]
        return out


def _int_param(params, name: str, default: int | None) -> int | None:
    if name not in params:
        return default
    raw = params[name][-1]
    try:
        return int(raw)
    except ValueError:
        raise ApiError(400, "bad_request", f"{name} must be an integer, got {raw!r}")


def _generate_for(config: GeneratorConfig):
    try:
        return generate_puzzle(config)
    except GenerationError as exc:
        raise ApiError(503, "generation_exhausted", str(exc))


def api_puzzle(params: dict) -> str:
    rows = _int_param(params, "rows", 6)
    cols = _int_param(params, "cols", 6)
    seed = _int_param(params, "seed", None)
    raw_difficulty = params.get("difficulty", ["any"])[-1]
    try:
        difficulty = Difficulty(raw_difficulty)
    except ValueError:
        raise ApiError(400, "bad_request", f"unknown difficulty {raw_difficulty!r}")
    if seed is None:
        seed = secrets.randbits(63)
    try:
        config = GeneratorConfig(
            dims=GridDims(rows, cols), seed=seed, difficulty=difficulty
        )
    except Exception as exc:
        raise ApiError(400, "bad_request", str(exc))
    puzzle = _generate_for(config)
    doc = puzzle_io.document_from_puzzle(puzzle, include_solution=False)
    return puzzle_io.serialize_puzzle(doc)


def _resolve_state(body: bytes):
    try:
        state = puzzle_io.parse_player_state_payload(json.loads(body.decode("utf-8")))
    except (ParseError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ApiError(400, "invalid_document", str(exc))
    if state.puzzle is not None:
        clues = puzzle_io.clue_grid(state.puzzle)
    else:
        config = parse_puzzle_id(state.puzzle_id)
        if config is None:
            raise ApiError(
                404, "unknown_puzzle",
                f"puzzle id {state.puzzle_id!r} cannot be reproduced",
            )
        clues = _generate_for(config).clues
    try:
        marks = puzzle_io.marks_grid(state, clues.dims)
    except ParseError as exc:
        raise ApiError(400, "invalid_document", str(exc))
    return clues, marks


def api_validate(body: bytes) -> str:
    clues, marks = _resolve_state(body)
    violations = validate_assignment(clues, marks, require_complete=False)
    return puzzle_io.canonical_json(
        [puzzle_io.violation_payload(v) for v in violations]
    )


def api_hint(body: bytes) -> str:
    clues, marks = _resolve_state(body)
    try:
        result = solver_hint(clues, marks)
    except PreconditionError as exc:
        raise ApiError(400, "state_invalid", str(exc))
    if result is None:
        return puzzle_io.canonical_json(None)
    return puzzle_io.canonical_json(puzzle_io.hint_payload(result))


def api_check(body: bytes) -> str:
    clues, marks = _resolve_state(body)
    violations = validate_assignment(clues, marks, require_complete=True)
    return puzzle_io.canonical_json(
        {
            "solved": not violations,
            "violations": [puzzle_io.violation_payload(v) for v in violations],
        }
    )


class PartitiServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, static_dir: str | None = None, quiet: bool = True):
        super().__init__(address, _Handler)
        self.static_dir = os.path.realpath(static_dir) if static_dir else None
        self.quiet = quiet


class _Handler(BaseHTTPRequestHandler):
    server: PartitiServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):
        if not self.server.quiet:
            super().log_message(fmt, *args)

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, text: str) -> None:
        self._send(status, text.encode("utf-8"), "application/json; charset=utf-8")

    def _send_error_json(self, exc: ApiError) -> None:
        self._send_json(exc.status, puzzle_io.canonical_json(exc.payload()))

    def _read_body(self) -> bytes:
        length = int(self.headers.get("Content-Length") or 0)
        if length > _MAX_BODY:
            raise ApiError(400, "bad_request", "request body too large")
        return self.rfile.read(length)

    def _serve_static(self, path: str) -> None:
        root = self.server.static_dir
        if root is None:
            raise ApiError(404, "not_found", f"no handler for {path}")
        rel = path.lstrip("/") or "index.html"
        full = os.path.realpath(os.path.join(root, rel))
        if not (full == root or full.startswith(root + os.sep)):
            raise ApiError(404, "not_found", "path escapes the static root")
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.isfile(full):
            raise ApiError(404, "not_found", f"no such file: {path}")
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            self._send(200, fh.read(), ctype)

    def do_GET(self):
        try:
            split = urlsplit(self.path)
            if split.path == "/api/puzzle":
                self._send_json(200, api_puzzle(parse_qs(split.query)))
            elif split.path.startswith("/api/"):
                raise ApiError(404, "not_found", f"no such endpoint: {split.path}")
            else:
                self._serve_static(split.path)
        except ApiError as exc:
            self._send_error_json(exc)

    def do_POST(self):
        try:
            split = urlsplit(self.path)
            handlers = {
                "/api/validate": api_validate,
                "/api/hint": api_hint,
                "/api/check": api_check,
            }
            handler = handlers.get(split.path)
            if handler is None:
                if split.path == "/api/puzzle":
                    raise ApiError(405, "method_not_allowed", "use GET for /api/puzzle")
                raise ApiError(404, "not_found", f"no such endpoint: {split.path}")
            self._send_json(200, handler(self._read_body()))
        except ApiError as exc:
            self._send_error_json(exc)


def create_server(
    host: str = "127.0.0.1",
    port: int = 0,
    static_dir: str | None = None,
    quiet: bool = True,
) -> PartitiServer:
    return PartitiServer((host, port), static_dir=static_dir, quiet=quiet)


def run_server(host: str, port: int, static_dir: str | None = None) -> None:
    server = create_server(host, port, static_dir, quiet=False)
    address = server.server_address
    print(f"partiti service listening on http://{address[0]}:{address[1]}/",
          flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
