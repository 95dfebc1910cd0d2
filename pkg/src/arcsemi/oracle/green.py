"""Green's relations, structural flags and congruence-freeness of an enumerated semigroup."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .semigroup import SemigroupTable

CONGRUENCE_LIMIT = 5000


def _scc_labels(m: int, *tables: np.ndarray) -> np.ndarray:
    """Strong-component label of each element in the Cayley graph given by the tables."""
    src = np.concatenate([np.repeat(np.arange(m), t.shape[1]) for t in tables])
    dst = np.concatenate([t.ravel() for t in tables])
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(m, m)).tocsr()
    _, labels = connected_components(graph, directed=True, connection="strong")
    return _canonical_labels(labels)


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    """Relabel classes 0, 1, ... in order of their least element."""
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank_of = np.empty(len(first), dtype=np.int64)
    rank_of[np.argsort(first)] = np.arange(len(first))
    return rank_of[inverse]


def _classes(labels: np.ndarray) -> list[tuple[int, ...]]:
    out: list[list[int]] = [[] for _ in range(int(labels.max()) + 1 if len(labels) else 0)]
    for i, c in enumerate(labels.tolist()):
        out[c].append(i)
    return [tuple(c) for c in out]


@dataclass(eq=False)
class GreenStructure:
    """Class labels per element for each of Green's relations.

    ``R[i]`` is the R-class index of element i; classes are numbered by their
    least element, so labels are deterministic.
    """

    R: np.ndarray
    L: np.ndarray
    H: np.ndarray
    J: np.ndarray
    idempotent: np.ndarray  # bool per element
    regular: np.ndarray  # bool per element

    def classes(self, relation: str) -> list[tuple[int, ...]]:
        return _classes(getattr(self, relation))

    def count(self, relation: str) -> int:
        labels = getattr(self, relation)
        return int(labels.max()) + 1 if len(labels) else 0

    def is_trivial(self, relation: str) -> bool:
        return self.count(relation) == len(getattr(self, relation))

    def related(self, relation: str, i: int, j: int) -> bool:
        labels = getattr(self, relation)
        return bool(labels[i] == labels[j])


def green_structure(S: SemigroupTable) -> GreenStructure:
    m = len(S)
    R = _scc_labels(m, S.right)
    L = _scc_labels(m, S.left)
    J = _scc_labels(m, S.right, S.left)
    _, H = np.unique(R * m + L, return_inverse=True)
    H = _canonical_labels(H)
    idem = np.zeros(m, dtype=bool)
    idem[S.idempotents()] = True
    # an element is regular exactly when its R-class holds an idempotent
    r_has_idem = np.zeros(int(R.max()) + 1, dtype=bool)
    r_has_idem[R[idem]] = True
    return GreenStructure(R, L, H, J, idem, r_has_idem[R])


@dataclass
class OracleReport:
    """Properties of the semigroup read off its multiplication and Green structure."""

    size: int
    idempotents: int
    r_classes: int
    l_classes: int
    h_classes: int
    j_classes: int
    band: bool
    commutative: bool
    semilattice: bool
    regular: bool
    completely_regular: bool
    inverse: bool
    h_trivial: bool
    r_trivial: bool
    l_trivial: bool
    j_trivial: bool
    aperiodic: bool
    left_zeros: list[str]
    right_zeros: list[str]
    zero: str | None
    left_zero_semigroup: bool
    right_zero_semigroup: bool
    simple: bool
    rectangular_band: bool
    zero_simple: bool
    trivial: bool
    group: bool
    longest_cycle: int
    congruence_free: bool | None = None

    @property
    def has_left_zero(self) -> bool:
        return bool(self.left_zeros)

    @property
    def has_right_zero(self) -> bool:
        return bool(self.right_zeros)

    @property
    def has_zero(self) -> bool:
        return self.zero is not None

    def flags(self) -> dict[str, bool | None]:
        """Boolean verdicts keyed by the same names the classifier uses."""
        out = {
            k: v for k, v in asdict(self).items()
            if isinstance(v, bool) or (k == "congruence_free")
        }
        out["has_left_zero"] = self.has_left_zero
        out["has_right_zero"] = self.has_right_zero
        out["has_zero"] = self.has_zero
        return out

    def to_dict(self) -> dict:
        return asdict(self)


def probe(S: SemigroupTable, green: GreenStructure | None = None, congruence: bool = True) -> OracleReport:
    """Compute every structural flag of S by brute force.

    ``congruence`` also runs the congruence-freeness test when S is small
    enough; otherwise that field is left as None.
    """
    g = green_structure(S) if green is None else green
    m = len(S)
    idx = np.arange(m)
    right, left = S.right, S.left

    band = bool(g.idempotent.all())
    commutative = bool((right == left).all())
    regular = bool(g.regular.all())
    sq = S.squares()
    completely_regular = bool((g.J[sq] == g.J).all())

    # regular + idempotents commute <=> every R- and L-class holds exactly one idempotent
    def one_idempotent_each(labels):
        counts = np.bincount(labels[g.idempotent], minlength=int(labels.max()) + 1)
        return bool((counts == 1).all())

    inverse = regular and one_idempotent_each(g.R) and one_idempotent_each(g.L)

    # an H-class containing an idempotent is a group; aperiodic means all of those are trivial
    h_sizes = np.bincount(g.H)
    aperiodic = bool((h_sizes[g.H[g.idempotent]] == 1).all())

    lz = np.flatnonzero((right == idx[:, None]).all(axis=1))
    rz = np.flatnonzero((left == idx[:, None]).all(axis=1))
    zero_idx = np.intersect1d(lz, rz)
    zero = int(zero_idx[0]) if len(zero_idx) else None

    simple = g.count("J") == 1
    zero_simple = False
    if zero is not None and m >= 2 and g.count("J") == 2:
        others_absorbed = bool((right == zero).all())  # then S*S = {0}
        zero_alone = bool((g.J == g.J[zero]).sum() == 1)
        zero_simple = zero_alone and not others_absorbed

    h_classes = g.count("H")
    group = h_classes == 1 and bool(g.idempotent.any())

    cf = None
    if congruence and m <= CONGRUENCE_LIMIT:
        cf = is_congruence_free(S, g)

    def fmt(i) -> str:
        return str(S.element(int(i)))

    return OracleReport(
        size=m,
        idempotents=int(g.idempotent.sum()),
        r_classes=g.count("R"),
        l_classes=g.count("L"),
        h_classes=h_classes,
        j_classes=g.count("J"),
        band=band,
        commutative=commutative,
        semilattice=band and commutative,
        regular=regular,
        completely_regular=completely_regular,
        inverse=inverse,
        h_trivial=g.is_trivial("H"),
        r_trivial=g.is_trivial("R"),
        l_trivial=g.is_trivial("L"),
        j_trivial=g.is_trivial("J"),
        aperiodic=aperiodic,
        left_zeros=[fmt(i) for i in lz],
        right_zeros=[fmt(i) for i in rz],
        zero=None if zero is None else fmt(zero),
        left_zero_semigroup=len(lz) == m,
        right_zero_semigroup=len(rz) == m,
        simple=simple,
        rectangular_band=simple and band,
        zero_simple=zero_simple,
        trivial=m == 1,
        group=group,
        longest_cycle=int(S.longest_cycles().max()),
        congruence_free=cf,
    )


class _UnionFind:
    def __init__(self, m):
        self.parent = list(range(m))
        self.classes = m

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[max(rx, ry)] = min(rx, ry)
        self.classes -= 1
        return True


def principal_congruence_is_universal(right: list[list[int]], left: list[list[int]], a: int, b: int) -> bool:
    """Whether the least congruence identifying elements a and b is universal.

    Pairs that caused a merge are propagated by multiplying with every
    generator on either side; closing under generators closes under all of S.
    """
    m = len(right)
    uf = _UnionFind(m)
    uf.union(a, b)
    todo = [(a, b)]
    while todo:
        x, y = todo.pop()
        for table in (right, left):
            for u, v in zip(table[x], table[y]):
                if uf.union(u, v):
                    if uf.classes == 1:
                        return True
                    todo.append((u, v))
    return uf.classes == 1


def is_congruence_free(S: SemigroupTable, green: GreenStructure | None = None) -> bool:
    """True iff every congruence on S is trivial or universal."""
    m = len(S)
    if m > CONGRUENCE_LIMIT:
        raise ValueError(f"congruence test is limited to {CONGRUENCE_LIMIT} elements, got {m}")
    if m <= 2:
        return True
    right = S.right.tolist()
    left = S.left.tolist()
    # pairs of low-rank elements first: two elements of a proper ideal give a
    # non-universal Rees congruence, so non-examples usually fail at once
    order = np.lexsort((np.arange(m), S.ranks())).tolist()
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            if not principal_congruence_is_universal(right, left, a, b):
                return False
    return True
