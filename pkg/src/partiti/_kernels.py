"""Hot search kernel with two execution modes sharing one source.

The depth-first search over candidate digit sets is written as a single
numpy-flavored function.  By default it runs under numba's ``@njit``
(compiled once, cached on disk); setting ``PARTITI_BACKEND=numpy`` (or
``python``) selects the interpreted fallback, which executes the *same*
function body and therefore produces bit-identical results including all
search statistics.  ``benchmarks/bench_solver.py`` compares the two.

Layout: per-cell candidate masks are flattened into ``cand_masks`` with
CSR-style offsets ``cand_off``; neighbor lists and adjacent pairs use the
same scheme.  A search level owns one row of the ``alive``/``forb`` stacks,
so backtracking is a row copy, never an undo log.
"""

from __future__ import annotations

import os

import numpy as np

STATUS_EXHAUSTED = 0
STATUS_CAP_REACHED = 1
STATUS_NODE_LIMIT = 2
STATUS_CONTRADICTION = 3

_ENV_VAR = "PARTITI_BACKEND"
_INTERPRETED = ("numpy", "python")


def _search_impl(cand_masks, cand_off, nbr_idx, nbr_off, pair_a, pair_b,
                 clue_sums, digit_sums, cap, node_limit, enable_sum_cover):
    n = cand_off.shape[0] - 1
    total = cand_masks.shape[0]
    n_pairs = pair_a.shape[0]
    max_depth = n + 1

    alive = np.zeros((max_depth, total), dtype=np.uint8)
    forb = np.zeros((max_depth, n), dtype=np.int64)
    mrv_cell = np.zeros(max_depth, dtype=np.int64)
    ptr = np.zeros(max_depth, dtype=np.int64)
    for t in range(total):
        alive[0, t] = 1

    sols = np.zeros((4, n), dtype=np.int64)
    count = 0
    nodes = 0
    passes = 0
    branch_nodes = 0
    r1 = 0
    r2 = 0
    r3 = 0
    status = STATUS_EXHAUSTED

    depth = 0
    action = 0  # 0 = enter node, 1 = descend to next child, 2 = backtrack
    while True:
        if action == 0:
            if nodes >= node_limit:
                status = STATUS_NODE_LIMIT
                break
            nodes += 1

            # Propagation to fixpoint on this level: row-major sweeps of
            # required-digit exclusion, forbidden filtering and pairwise
            # sum cover, repeated until a full pass changes nothing.
            contradiction = False
            while True:
                passes += 1
                changed = False

                for c in range(n):
                    req = np.int64(0)
                    has = False
                    for t in range(cand_off[c], cand_off[c + 1]):
                        if alive[depth, t]:
                            if has:
                                req &= cand_masks[t]
                            else:
                                req = cand_masks[t]
                                has = True
                    if not has:
                        contradiction = True
                        break
                    if req != 0:
                        for p in range(nbr_off[c], nbr_off[c + 1]):
                            m = nbr_idx[p]
                            merged = forb[depth, m] | req
                            if merged != forb[depth, m]:
                                forb[depth, m] = merged
                                changed = True
                                r1 += 1
                if contradiction:
                    break

                for c in range(n):
                    fmask = forb[depth, c]
                    if fmask == 0:
                        continue
                    left = 0
                    for t in range(cand_off[c], cand_off[c + 1]):
                        if alive[depth, t]:
                            if cand_masks[t] & fmask:
                                alive[depth, t] = 0
                                changed = True
                                r2 += 1
                            else:
                                left += 1
                    if left == 0:
                        contradiction = True
                        break
                if contradiction:
                    break

                if enable_sum_cover:
                    for pi in range(n_pairs):
                        a = pair_a[pi]
                        b = pair_b[pi]
                        union_a = np.int64(0)
                        union_b = np.int64(0)
                        for t in range(cand_off[a], cand_off[a + 1]):
                            if alive[depth, t]:
                                union_a |= cand_masks[t]
                        for t in range(cand_off[b], cand_off[b + 1]):
                            if alive[depth, t]:
                                union_b |= cand_masks[t]
                        if union_a == 0 or union_b == 0:
                            contradiction = True
                            break
                        u = union_a | union_b
                        if clue_sums[a] + clue_sums[b] != digit_sums[u]:
                            continue
                        # Every solution pair must split u exactly, so a
                        # candidate without an exact complement is dead.
                        left_a = 0
                        for t in range(cand_off[a], cand_off[a + 1]):
                            if not alive[depth, t]:
                                continue
                            need = u & ~cand_masks[t]
                            found = False
                            for s in range(cand_off[b], cand_off[b + 1]):
                                if alive[depth, s] and cand_masks[s] == need:
                                    found = True
                                    break
                            if found:
                                left_a += 1
                            else:
                                alive[depth, t] = 0
                                changed = True
                                r3 += 1
                        if left_a == 0:
                            contradiction = True
                            break
                        left_b = 0
                        for s in range(cand_off[b], cand_off[b + 1]):
                            if not alive[depth, s]:
                                continue
                            need = u & ~cand_masks[s]
                            found = False
                            for t in range(cand_off[a], cand_off[a + 1]):
                                if alive[depth, t] and cand_masks[t] == need:
                                    found = True
                                    break
                            if found:
                                left_b += 1
                            else:
                                alive[depth, s] = 0
                                changed = True
                                r3 += 1
                        if left_b == 0:
                            contradiction = True
                            break
                    if contradiction:
                        break

                if not changed:
                    break

            if contradiction:
                if depth == 0:
                    status = STATUS_CONTRADICTION
                    break
                action = 2
            else:
                best_cell = -1
                best_width = 1 << 30
                for c in range(n):
                    width = 0
                    for t in range(cand_off[c], cand_off[c + 1]):
                        if alive[depth, t]:
                            width += 1
                    if width >= 2 and width < best_width:
                        best_width = width
                        best_cell = c
                if best_cell < 0:
                    # Every cell decided: record the solution.
                    if count == sols.shape[0]:
                        grown = np.zeros((sols.shape[0] * 2, n), dtype=np.int64)
                        for i in range(sols.shape[0]):
                            for j in range(n):
                                grown[i, j] = sols[i, j]
                        sols = grown
                    for c in range(n):
                        for t in range(cand_off[c], cand_off[c + 1]):
                            if alive[depth, t]:
                                sols[count, c] = t
                                break
                    count += 1
                    if count >= cap:
                        status = STATUS_CAP_REACHED
                        break
                    action = 2
                else:
                    mrv_cell[depth] = best_cell
                    ptr[depth] = cand_off[best_cell]
                    branch_nodes += 1
                    action = 1
        elif action == 1:
            c = mrv_cell[depth]
            t = ptr[depth]
            end = cand_off[c + 1]
            while t < end and alive[depth, t] == 0:
                t += 1
            if t >= end:
                action = 2
            else:
                ptr[depth] = t + 1
                for i in range(total):
                    alive[depth + 1, i] = alive[depth, i]
                for i in range(n):
                    forb[depth + 1, i] = forb[depth, i]
                for s in range(cand_off[c], end):
                    if s != t:
                        alive[depth + 1, s] = 0
                depth += 1
                action = 0
        else:
            if depth == 0:
                break
            depth -= 1
            action = 1

    out = np.zeros((count, n), dtype=np.int64)
    for i in range(count):
        for j in range(n):
            out[i, j] = sols[i, j]
    return status, count, out, nodes, passes, branch_nodes, r1, r2, r3


_compiled = None
_compile_error: str | None = None


def _numba_search():
    global _compiled, _compile_error
    if _compiled is None and _compile_error is None:
        try:
            from numba import njit
            _compiled = njit(cache=True)(_search_impl)
        except ImportError as exc:  # pragma: no cover - numba is a hard dep
            _compile_error = str(exc)
    return _compiled


def resolve_backend(override: str | None = None) -> str:
    """Backend that will actually run: 'numba' or 'numpy'."""
    name = (override or os.environ.get(_ENV_VAR, "numba")).lower()
    if name in _INTERPRETED:
        return "numpy"
    if name != "numba":
        raise ValueError(
            f"unknown backend {name!r}; expected 'numba', 'numpy' or 'python'"
        )
    return "numba" if _numba_search() is not None else "numpy"


def get_search(override: str | None = None):
    """The search callable for the selected backend."""
    if resolve_backend(override) == "numba":
        return _numba_search()
    return _search_impl
