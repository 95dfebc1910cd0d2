"""Canonical forms, isomorphism tests and exhaustive enumeration for small digraphs.

A digraph on n vertices is encoded by its off-diagonal adjacency bits in
row-major order, first position most significant. The canonical code is the
smallest such code over all vertex relabellings. Graphs use the same scheme on
the strict upper triangle. Everything is brute force over permutations, so the
limits below are hard.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator

import numpy as np

from .digraph import Digraph, Graph

MAX_ISO_N = 8
MAX_LABELED_N = 5
MAX_CONNECTED_N = 7


@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)


@lru_cache(maxsize=None)
def _positions(n: int, symmetric: bool) -> tuple[tuple[int, int], ...]:
    if symmetric:
        return tuple((i, j) for i in range(n) for j in range(i + 1, n))
    return tuple((i, j) for i in range(n) for j in range(n) if i != j)


def _weights(count: int) -> np.ndarray:
    return np.left_shift(np.int64(1), np.arange(count - 1, -1, -1, dtype=np.int64))


def code_of(D: Digraph) -> int:
    """Code of D under its own labelling."""
    sym = isinstance(D, Graph)
    pos = _positions(D.n, sym)
    N = len(pos)
    return sum(1 << (N - 1 - k) for k, (i, j) in enumerate(pos) if D.has_arc(i + 1, j + 1))


def from_code(code: int, n: int, symmetric: bool = False) -> Digraph:
    pos = _positions(n, symmetric)
    N = len(pos)
    pairs = [(i + 1, j + 1) for k, (i, j) in enumerate(pos) if code >> (N - 1 - k) & 1]
    return Graph.from_edges(n, pairs) if symmetric else Digraph(n, pairs)


def canonical_code(D: Digraph) -> int:
    """Least code over all relabellings (n <= 8)."""
    n = D.n
    if n > MAX_ISO_N:
        raise ValueError(f"canonical forms are brute force and limited to n <= {MAX_ISO_N}, got {n}")
    if n <= 1:
        return 0
    sym = isinstance(D, Graph)
    A = np.zeros((n, n), dtype=bool)
    for u, v in D.arcs:
        A[u - 1, v - 1] = True
    Q = _perms(n)
    # row q of the permutation table gives the old vertex placed at each new position
    B = A[Q[:, :, None], Q[:, None, :]]
    ii, jj = zip(*_positions(n, sym))
    bits = B[:, list(ii), list(jj)]
    w = _weights(len(ii))
    return int((bits.astype(np.int64) @ w).min())


def canonical_form(D: Digraph) -> Digraph:
    return from_code(canonical_code(D), D.n, isinstance(D, Graph))


def is_isomorphic(D1: Digraph, D2: Digraph) -> bool:
    if D1.n != D2.n or D1.num_arcs != D2.num_arcs:
        return False
    if sorted(D1.out_degree(v) for v in D1.vertices) != sorted(D2.out_degree(v) for v in D2.vertices):
        return False
    if isinstance(D1, Graph) != isinstance(D2, Graph):
        return canonical_code(Digraph(D1.n, D1.arcs)) == canonical_code(Digraph(D2.n, D2.arcs))
    return canonical_code(D1) == canonical_code(D2)


def canonical_codes(codes: np.ndarray, n: int, symmetric: bool = False) -> np.ndarray:
    """Canonical code of every code in the batch.

    Each relabelling permutes bit positions; the permuted code is assembled
    from per-chunk lookup tables so the whole batch moves at numpy speed.
    """
    codes = np.asarray(codes, dtype=np.int64)
    if n <= 1:
        return np.zeros_like(codes)
    pos = _positions(n, symmetric)
    N = len(pos)
    index = {p: k for k, p in enumerate(pos)}
    P = _perms(n)
    # mapped[p, k] = weight of the position that bit k lands on under permutation p
    mapped = np.empty((len(P), N), dtype=np.int64)
    for r, p in enumerate(P.tolist()):
        for k, (i, j) in enumerate(pos):
            a, b = p[i], p[j]
            if symmetric and a > b:
                a, b = b, a
            mapped[r, k] = 1 << (N - 1 - index[a, b])
    chunk = 8 if N > 16 else N
    tables = []
    shifts = []
    for start in range(0, N, chunk):
        width = min(chunk, N - start)
        vals = np.arange(1 << width, dtype=np.int64)
        bits = (vals[:, None] >> np.arange(width - 1, -1, -1)) & 1  # MSB first within chunk
        tables.append(bits @ mapped[:, start:start + width].T)  # (2^width, perms)
        shifts.append(N - start - width)
    masks = [(1 << (t.shape[0].bit_length() - 1)) - 1 for t in tables]
    parts = [(codes >> s) & m for s, m in zip(shifts, masks)]
    best = np.full(len(codes), np.iinfo(np.int64).max, dtype=np.int64)
    for r in range(len(P)):
        acc = tables[0][parts[0], r].copy()
        for t, part in zip(tables[1:], parts[1:]):
            acc |= t[part, r]
        np.minimum(best, acc, out=best)
    return best


def enumerate_digraphs(n: int, up_to_iso: bool = False) -> Iterator[Digraph]:
    """All digraphs on vertices 1..n, labelled (n <= 5) or one per isomorphism class.

    Labelled order follows the code; up to isomorphism, each class is reported
    by its canonical form in increasing code order.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_LABELED_N:
        raise ValueError(f"exhaustive enumeration is limited to n <= {MAX_LABELED_N}, got {n}")
    N = n * (n - 1)
    codes = np.arange(1 << N, dtype=np.int64)
    if up_to_iso:
        codes = np.unique(canonical_codes(codes, n))
    for c in codes.tolist():
        yield from_code(c, n)


def count_digraphs(n: int, up_to_iso: bool = False) -> int:
    if not up_to_iso:
        return 1 << (n * (n - 1))
    return len(np.unique(canonical_codes(np.arange(1 << (n * (n - 1)), dtype=np.int64), n)))


@lru_cache(maxsize=None)
def _connected_codes(n: int) -> tuple[int, ...]:
    if n == 1:
        return (0,)
    prev = _connected_codes(n - 1)
    N_prev = (n - 1) * (n - 2) // 2
    N = n * (n - 1) // 2
    # in the upper-triangle order for n vertices, the pairs (i, n-1) are spread out;
    # rebuild each candidate from explicit positions
    pos = _positions(n, True)
    index = {p: k for k, p in enumerate(pos)}
    old_pos = _positions(n - 1, True)
    old_weights = [1 << (N - 1 - index[p]) for p in old_pos]
    cands = []
    for c in prev:
        base = sum(w for k, w in enumerate(old_weights) if c >> (N_prev - 1 - k) & 1)
        for mask in range(1, 1 << (n - 1)):
            extra = sum(1 << (N - 1 - index[i, n - 1]) for i in range(n - 1) if mask >> i & 1)
            cands.append(base | extra)
    canon = np.unique(canonical_codes(np.array(cands, dtype=np.int64), n, symmetric=True))
    return tuple(canon.tolist())


def connected_graphs(n: int) -> list[Graph]:
    """One connected graph on n vertices per isomorphism class (1 <= n <= 7)."""
    if not 1 <= n <= MAX_CONNECTED_N:
        raise ValueError(f"connected graph enumeration supports 1 <= n <= {MAX_CONNECTED_N}, got {n}")
    return [from_code(c, n, symmetric=True) for c in _connected_codes(n)]
