"""Breadth-first enumeration of the semigroup generated by the arcs of a digraph.

Elements are rows of an ``int8`` matrix (0-based images). Each element keeps a
parent pointer and the generator that produced it, so a shortest word over the
generators can be read back. Seen elements are tracked as a sorted array of
base-n codes, which keeps the kernel vectorised.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from ..digraph import Digraph
from .transformation import Transformation, decode, encode, image_masks, longest_cycles, popcounts, ranks

DEFAULT_CAP = 10**6
MAX_DEGREE = 15  # base-n codes of degree 15 still fit in int64
CAP_ENV = "ARCSEMI_ELEMENT_CAP"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{CAP_ENV} must be positive, got {cap}")
    return cap


@dataclass
class _GenState:
    """Everything needed to continue an interrupted enumeration."""

    n: int
    arcs: list[tuple[int, int]]
    chunks: list[np.ndarray]
    parents: list[np.ndarray]
    vias: list[np.ndarray]
    front_start: int
    seen: _SeenSet
    total: int


class ElementCapExceeded(RuntimeError):
    """Raised when enumeration passes the element cap.

    ``count`` is the number of elements found so far; passing ``state`` back to
    :func:`generate` with a larger cap resumes where the search stopped.
    """

    def __init__(self, count: int, cap: int, state: _GenState | None = None):
        super().__init__(f"semigroup has more than {cap} elements (found {count} so far)")
        self.count = count
        self.cap = cap
        self.state = state


def _check_input(D: Digraph) -> list[tuple[int, int]]:
    if D.num_arcs == 0:
        raise ValueError("the digraph has no arcs, so it generates no semigroup")
    if D.n > MAX_DEGREE:
        raise ValueError(f"enumeration supports at most {MAX_DEGREE} vertices, got {D.n}")
    return D.sorted_arcs()


def _generator_rows(n: int, arcs) -> np.ndarray:
    rows = np.tile(np.arange(n, dtype=np.int8), (len(arcs), 1))
    for i, (a, b) in enumerate(arcs):
        rows[i, a - 1] = b - 1
    return rows


def _right_products(front: np.ndarray, arcs) -> np.ndarray:
    """All products x*g, shaped (len(front) * len(arcs), n), frontier-major."""
    m, n = front.shape
    out = np.repeat(front, len(arcs), axis=0).reshape(m, len(arcs), n)
    for j, (a, b) in enumerate(arcs):
        block = out[:, j, :]
        block[block == a - 1] = b - 1
    return out.reshape(m * len(arcs), n)


class _SeenSet:
    """Set of element codes.

    Degrees up to 9 use a packed bitset over all n^n codes (at most 48 MB);
    larger degrees fall back to a sorted array.
    """

    BITSET_MAX_DEGREE = 9

    def __init__(self, n: int):
        self.n = n
        self.dense = n <= self.BITSET_MAX_DEGREE
        if self.dense:
            self.bits = np.zeros((n**n + 7) // 8, dtype=np.uint8)
        else:
            self.sorted = np.zeros(0, dtype=np.int64)

    def contains(self, codes: np.ndarray) -> np.ndarray:
        if self.dense:
            return (self.bits[codes >> 3] >> (codes & 7).astype(np.uint8)) & 1 == 1
        return np.isin(codes, self.sorted, assume_unique=False)

    def _add_unique(self, codes: np.ndarray) -> None:
        if self.dense:
            np.bitwise_or.at(self.bits, codes >> 3, np.left_shift(1, codes & 7).astype(np.uint8))
        else:
            self.sorted = np.union1d(self.sorted, codes)

    def fresh(self, codes: np.ndarray) -> np.ndarray:
        """Positions of first occurrences of unseen codes (in order); marks them seen."""
        cand = np.flatnonzero(~self.contains(codes))
        if len(cand) == 0:
            return cand
        uniq, first = np.unique(codes[cand], return_index=True)
        self._add_unique(uniq)
        return np.sort(cand[first])


@dataclass(eq=False)
class SemigroupTable:
    """The enumerated semigroup together with words and Cayley tables."""

    n: int
    generators: list[tuple[int, int]]
    elements: np.ndarray
    parent: np.ndarray  # -1 for generators
    via: np.ndarray  # generator index appended to the parent's word
    _codes: np.ndarray = field(repr=False)
    _order: np.ndarray = field(repr=False)
    _right: np.ndarray | None = field(default=None, repr=False)
    _left: np.ndarray | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def element(self, i: int) -> Transformation:
        return Transformation.from_array(self.elements[i])

    def __iter__(self):
        return (self.element(i) for i in range(len(self)))

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Indices of the given rows, -1 where a row is not an element."""
        rows = np.atleast_2d(rows)
        codes = encode(rows, self.n)
        pos = np.searchsorted(self._codes, codes)
        pos = np.minimum(pos, len(self._codes) - 1)
        hit = self._codes[pos] == codes
        return np.where(hit, self._order[pos], -1)

    def index_of(self, alpha: Transformation) -> int | None:
        if alpha.degree != self.n:
            return None
        i = int(self.lookup(alpha.to_array())[0])
        return None if i < 0 else i

    def __contains__(self, alpha: Transformation) -> bool:
        return self.index_of(alpha) is not None

    def word(self, i: int) -> list[tuple[int, int]]:
        """A shortest word over the generators that evaluates to element i."""
        out = []
        while i >= 0:
            out.append(self.generators[int(self.via[i])])
            i = int(self.parent[i])
        return out[::-1]

    def evaluate(self, word) -> Transformation:
        rows = np.arange(self.n, dtype=np.int8)
        for a, b in word:
            rows[rows == a - 1] = b - 1
        return Transformation.from_array(rows)

    @property
    def right(self) -> np.ndarray:
        """right[i, g] = index of element_i * generator_g."""
        if self._right is None:
            P = _right_products(self.elements, self.generators)
            self._right = self.lookup(P).reshape(len(self), len(self.generators))
        return self._right

    @property
    def left(self) -> np.ndarray:
        """left[i, g] = index of generator_g * element_i."""
        if self._left is None:
            cols = []
            for a, b in self.generators:
                x = self.elements.copy()
                x[:, a - 1] = self.elements[:, b - 1]
                cols.append(self.lookup(x))
            self._left = np.stack(cols, axis=1)
        return self._left

    def multiply(self, i: int, j: int) -> int:
        x, y = self.elements[i], self.elements[j]
        return int(self.lookup(y[x.astype(np.intp)])[0])

    def squares(self) -> np.ndarray:
        E = self.elements.astype(np.intp)
        return self.lookup(np.take_along_axis(self.elements, E, 1))

    def idempotents(self) -> np.ndarray:
        E = self.elements.astype(np.intp)
        sq = np.take_along_axis(self.elements, E, 1)
        return np.flatnonzero((sq == self.elements).all(axis=1))

    def ranks(self) -> np.ndarray:
        return ranks(self.elements)

    def longest_cycles(self) -> np.ndarray:
        return longest_cycles(self.elements)

    def export_lines(self) -> list[str]:
        """One line per element in enumeration order: index, images, word."""
        lines = []
        for i in range(len(self)):
            word = "".join(f"({a}>{b})" for a, b in self.word(i))
            lines.append(f"{i}\t{self.element(i)}\t{word}")
        return lines


def generate(D: Digraph, cap: int | None = None, resume: _GenState | None = None) -> SemigroupTable:
    """Enumerate the semigroup generated by the arc transformations of D."""
    if cap is None:
        cap = default_cap()
    if resume is None:
        arcs = _check_input(D)
        n = D.n
        gens = _generator_rows(n, arcs)
        state = _GenState(
            n, arcs, [gens], [np.full(len(arcs), -1, np.int64)], [np.arange(len(arcs), dtype=np.int32)],
            0, _SeenSet(n), len(arcs),
        )
        state.seen.fresh(encode(gens, n))
        if state.total > cap:
            raise ElementCapExceeded(state.total, cap, state)
    else:
        state = resume
    n, arcs, G = state.n, state.arcs, len(state.arcs)
    while True:
        front = state.chunks[-1]
        if len(front) == 0:
            break
        if state.front_start + len(front) != state.total:
            raise RuntimeError("inconsistent resume state")
        P = _right_products(front, arcs)
        idx = state.seen.fresh(encode(P, n))
        state.chunks.append(P[idx])
        state.parents.append(state.front_start + idx // G)
        state.vias.append((idx % G).astype(np.int32))
        state.front_start = state.total
        state.total += len(idx)
        if state.total > cap:
            raise ElementCapExceeded(state.total, cap, state)
    elements = np.concatenate(state.chunks)
    codes = encode(elements, n)
    order = np.argsort(codes, kind="stable")
    return SemigroupTable(
        n, list(arcs), elements,
        np.concatenate(state.parents), np.concatenate(state.vias),
        codes[order], order,
    )


def size(D: Digraph, cap: int | None = None) -> int:
    return len(generate(D, cap))


def l_brute(D: Digraph, cap: int | None = None, stop_at: int | None = None) -> int:
    """Longest cycle over all elements, by rank-layered enumeration.

    Ranks never increase along a product and a cycle of length c needs rank at
    least c. Elements are therefore found in layers of decreasing rank; once the
    best cycle seen is at least the current layer's rank, no lower layer can beat
    it and the search stops. The result equals the maximum over a full
    enumeration.

    With ``stop_at`` the search also ends as soon as a cycle of that length or
    longer turns up; the result is then only a lower bound, which is all a
    threshold question such as l <= stop_at - 1 needs.
    """
    if cap is None:
        cap = default_cap()
    arcs = _check_input(D)
    n = D.n
    seen = _SeenSet(n)
    parked = _SeenSet(n)  # products ranked below the current layer
    pending: list[np.ndarray] = []
    front = _generator_rows(n, arcs)
    masks = image_masks(front)
    seen.fresh(encode(front, n))
    level = n - 1  # every generator has rank n - 1
    total = len(front)
    best = 1
    bit_a = [np.int64(1) << (a - 1) for a, _ in arcs]
    bit_b = [np.int64(1) << (b - 1) for _, b in arcs]

    def improve(rows, r):
        better = r > best
        if better.any():
            return max(best, int(longest_cycles(rows[better], int(r.max())).max()))
        return best

    best = improve(front, popcounts(masks, n))
    if stop_at is None:
        stop_at = n + 1
    while True:
        while len(front):
            P = _right_products(front, arcs)
            # image of x(a->b): a is swapped for b when a is in the image of x
            pm = np.empty((len(front), len(arcs)), dtype=np.int64)
            for j in range(len(arcs)):
                has_a = (masks & bit_a[j]) != 0
                pm[:, j] = np.where(has_a, (masks & ~bit_a[j]) | bit_b[j], masks)
            pm = pm.ravel()
            r = popcounts(pm, n)
            codes = encode(P, n)
            low = r < level
            if low.any():
                lc = codes[low]
                pending.append(lc[parked.fresh(lc)])
            keep = np.flatnonzero(~low)
            idx = keep[seen.fresh(codes[keep])]
            front = P[idx]
            masks = pm[idx]
            total += len(front)
            if total > cap:
                raise ElementCapExceeded(total, cap)
            best = improve(front, r[idx])
            if best >= stop_at:
                return best
        if best >= level or level == 1:
            return best
        level -= 1
        if not pending:
            return best
        codes = np.concatenate(pending)
        P = decode(codes, n)
        pmasks = image_masks(P)
        r = popcounts(pmasks, n)
        now = r >= level
        pending = [codes[~now]]
        front = P[now]
        masks = pmasks[now]
        seen.fresh(codes[now])
        total += len(front)
        if total > cap:
            raise ElementCapExceeded(total, cap)
        best = improve(front, r[now])
        if best >= stop_at:
            return best


def l_of_table(S: SemigroupTable) -> int:
    """Longest cycle over an already enumerated semigroup."""
    return int(S.longest_cycles().max())
