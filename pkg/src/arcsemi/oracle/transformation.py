"""Transformations of {1..n}, written on the right and composed left to right.

``Transformation`` is the public value type (1-based images). The enumeration
kernels work on 0-based ``int8`` matrices, one transformation per row; the
vectorised helpers at the bottom operate on that representation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, order=True)
class Transformation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if any(not 1 <= x <= n for x in self.images):
            raise ValueError(f"images must lie in 1..{n}: {list(self.images)}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def __mul__(self, other: Transformation) -> Transformation:
        return compose(self, other)

    def __str__(self):
        return "[" + ", ".join(map(str, self.images)) + "]"

    @classmethod
    def parse(cls, text: str) -> Transformation:
        m = re.fullmatch(r"\s*\[\s*(\d+(?:\s*,\s*\d+)*)?\s*\]\s*", text)
        if not m:
            raise ValueError(f"not a transformation: {text!r}")
        body = m.group(1)
        return cls(tuple(int(x) for x in body.split(",")) if body else ())

    @classmethod
    def identity(cls, n: int) -> Transformation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def constant(cls, n: int, value: int) -> Transformation:
        return cls((value,) * n)

    def to_array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int8) - 1

    @classmethod
    def from_array(cls, row) -> Transformation:
        return cls(tuple(int(x) + 1 for x in row))


def arc_transform(a: int, b: int, n: int) -> Transformation:
    """The idempotent (a -> b): sends a to b and fixes every other point."""
    if a == b:
        raise ValueError("an arc transformation needs a != b")
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"arc ({a}, {b}) out of range 1..{n}")
    images = list(range(1, n + 1))
    images[a - 1] = b
    return Transformation(tuple(images))


def compose(alpha: Transformation, beta: Transformation) -> Transformation:
    """alpha then beta: v(alpha beta) = (v alpha) beta."""
    if alpha.degree != beta.degree:
        raise ValueError(f"degree mismatch: {alpha.degree} != {beta.degree}")
    b = beta.images
    return Transformation(tuple(b[x - 1] for x in alpha.images))


def image(alpha: Transformation) -> frozenset[int]:
    return frozenset(alpha.images)


def kernel(alpha: Transformation) -> tuple[tuple[int, ...], ...]:
    """Kernel classes, each sorted, ordered by least element."""
    classes: dict[int, list[int]] = {}
    for v, x in enumerate(alpha.images, start=1):
        classes.setdefault(x, []).append(v)
    return tuple(sorted(tuple(c) for c in classes.values()))


def rank(alpha: Transformation) -> int:
    return len(set(alpha.images))


def invariants_of(alpha: Transformation) -> tuple[frozenset[int], tuple[tuple[int, ...], ...], int]:
    return image(alpha), kernel(alpha), rank(alpha)


def cycles(alpha: Transformation) -> list[tuple[int, ...]]:
    """The cycles of alpha (fixed points included), each starting at its least point."""
    n = alpha.degree
    state = [0] * (n + 1)  # 0 new, 1 on current walk, 2 done
    found = []
    for s in range(1, n + 1):
        walk = []
        v = s
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = alpha(v)
        if state[v] == 1:
            cyc = walk[walk.index(v):]
            i = cyc.index(min(cyc))
            found.append(tuple(cyc[i:] + cyc[:i]))
        for w in walk:
            state[w] = 2
    return sorted(found)


def longest_cycle(alpha: Transformation) -> int:
    """Length of a longest cycle; fixed points count, so the result is >= 1."""
    return max(len(c) for c in cycles(alpha))


# -- vectorised helpers over 0-based int8 matrices ----------------------------------


def encode(rows: np.ndarray, n: int) -> np.ndarray:
    """Base-n integer code of each row (first point most significant)."""
    weights = np.int64(n) ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return rows.astype(np.int64) @ weights


def decode(codes: np.ndarray, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((codes.size, n), dtype=np.int8)
    rest = codes.copy()
    for j in range(n - 1, -1, -1):
        out[:, j] = rest % n
        rest //= n
    return out


def longest_cycles(rows: np.ndarray, bound: int | None = None) -> np.ndarray:
    """Longest cycle length of every row.

    ``bound`` caps the cycle lengths searched for (a row's rank is a valid cap).
    """
    m, n = rows.shape
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    bound = n if bound is None else min(bound, n)
    M = rows.astype(np.intp)
    # x^(2^s) with 2^s >= n maps every point onto a cycle
    power = M
    steps = 1
    while steps < n:
        power = np.take_along_axis(power, power, 1)
        steps *= 2
    periodic = power
    walker = periodic
    length = np.zeros((m, n), dtype=np.int64)
    for k in range(1, bound + 1):
        walker = np.take_along_axis(M, walker, 1)
        length[(walker == periodic) & (length == 0)] = k
    return length.max(axis=1)


def image_masks(rows: np.ndarray) -> np.ndarray:
    """Bitmask of the image of every row (bit v for point v, 0-based)."""
    m, n = rows.shape
    present = np.zeros((m, n), dtype=bool)
    np.put_along_axis(present, rows.astype(np.intp), True, axis=1)
    return present.astype(np.int64) @ (np.int64(1) << np.arange(n, dtype=np.int64))


_POPCOUNT: dict[int, np.ndarray] = {}


def popcounts(masks: np.ndarray, n: int) -> np.ndarray:
    table = _POPCOUNT.get(n)
    if table is None:
        vals = np.arange(1 << n, dtype=np.int64)
        table = np.zeros(1 << n, dtype=np.int64)
        for b in range(n):
            table += (vals >> b) & 1
        _POPCOUNT[n] = table
    return table[masks]


def ranks(rows: np.ndarray) -> np.ndarray:
    m, n = rows.shape
    present = np.zeros((m, n), dtype=bool)
    np.put_along_axis(present, rows.astype(np.intp), True, axis=1)
    return present.sum(axis=1)
