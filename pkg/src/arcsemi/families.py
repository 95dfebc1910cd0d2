"""Constructors for the named digraph and graph families, and shape recognition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .digraph import Digraph, Graph, is_weakly_connected


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle graph needs n >= 3")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def star_graph(k: int) -> Graph:
    """K_{k,1}: leaves 1..k joined to the centre k+1."""
    return Graph.from_edges(k + 1, ((i, k + 1) for i in range(1, k + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


def q_graph(n: int) -> Graph:
    """Path 1..n plus the edge {n-2, n}: a path ending in a triangle."""
    if n < 3:
        raise ValueError("Q_n needs n >= 3")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(n - 2, n)])


def r_graph(n: int) -> Graph:
    """Q_n without the edge {n-1, n}: a path ending in a 3-star."""
    if n < 4:
        raise ValueError("R_n needs n >= 4")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)])


def fan(n: int) -> Digraph:
    """Arcs (i, n) for i < n."""
    if n < 1:
        raise ValueError("fan needs n >= 1")
    return Digraph(n, ((i, n) for i in range(1, n)))


def oneway_path(n: int) -> Digraph:
    """Arcs (i, i+1); generates the Catalan semigroup."""
    return Digraph(n, ((i, i + 1) for i in range(1, n)))


def twoway_path(n: int) -> Digraph:
    """Arcs (i, i+1) and (i+1, i); generates the singular order-preserving maps."""
    return Digraph(n, [(i, i + 1) for i in range(1, n)] + [(i + 1, i) for i in range(1, n)])


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def bull() -> Graph:
    return Graph.from_edges(5, [(1, 3), (2, 4), (3, 4), (4, 5), (5, 3)])


def e_graph() -> Graph:
    return Graph.from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)])


def theta0() -> Graph:
    """Hexagon 1..6 with a centre 7 joined to the antipodal vertices 1 and 4."""
    return Graph.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 7), (4, 7)])


# 3-vertex digraphs whose semigroup is 0-simple
ZERO_SIMPLE = (
    Digraph(3, [(2, 3), (3, 2), (3, 1)]),
    Digraph(3, [(2, 1), (2, 3), (3, 2), (3, 1)]),
)

# digraphs (as the unique non-trivial component) whose semigroup is congruence-free
CONGRUENCE_FREE = (
    Digraph(2, [(1, 2)]),
    Digraph(2, [(1, 2), (2, 1)]),
    Digraph(3, [(2, 1), (2, 3)]),
    ZERO_SIMPLE[0],
    ZERO_SIMPLE[1],
)


@dataclass(frozen=True)
class OplusGraph:
    """L (+)_q R together with the construction data."""

    graph: Graph
    m: int
    s: int
    q: int
    left_vertices: tuple[int, ...]
    path_vertices: tuple[int, ...]
    right_vertices: tuple[int, ...]
    attach_left: int  # vertex of the result
    attach_right: int


def oplus(L: Graph, q: int, R: Graph, attach_left: int = 1, attach_right: int = 1) -> OplusGraph:
    """Join L and R by a path on q vertices.

    The attachment vertices are given in the labels of L and R and must not
    have degree 1. L occupies 1..m, the path m+1..m+q, and R the rest.
    """
    if q < 1:
        raise ValueError("the joining path needs q >= 1 vertices")
    for name, H, a in (("L", L, attach_left), ("R", R, attach_right)):
        if not 1 <= a <= H.n:
            raise ValueError(f"attachment vertex {a} not in {name}")
        if H.degree(a) == 1:
            raise ValueError(f"attachment vertex {a} of {name} has degree 1")
        if not is_weakly_connected(H):
            raise ValueError(f"{name} must be connected")
    m, s = L.n, R.n
    edges = list(L.edges)
    edges += [(u + m + q, v + m + q) for u, v in R.edges]
    path = list(range(m + 1, m + q + 1))
    edges += [(path[i], path[i + 1]) for i in range(q - 1)]
    edges += [(attach_left, path[0]), (path[-1], attach_right + m + q)]
    n = m + q + s
    return OplusGraph(
        Graph.from_edges(n, edges),
        m,
        s,
        q,
        tuple(range(1, m + 1)),
        tuple(path),
        tuple(range(m + q + 1, n + 1)),
        attach_left,
        attach_right + m + q,
    )


FAMILIES: dict[str, Callable[..., Digraph]] = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "star": star_graph,
    "complete_bipartite": complete_bipartite,
    "Q": q_graph,
    "R": r_graph,
    "fan": fan,
    "oneway_path": oneway_path,
    "twoway_path": twoway_path,
    "directed_cycle": directed_cycle,
    "bull": bull,
    "E": e_graph,
    "theta0": theta0,
    "zero_simple": lambda i: ZERO_SIMPLE[i - 1],
    "congruence_free": lambda i: CONGRUENCE_FREE[i - 1],
    "oplus": lambda L, q, R, attach_left=1, attach_right=1: oplus(L, q, R, attach_left, attach_right).graph,
}


def construct(family: str, *params, **kwargs) -> Digraph:
    """Build a member of a named family, e.g. ``construct("Q", 6)``."""
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}") from None
    return builder(*params, **kwargs)


# -- shape recognition ---------------------------------------------------------

SHAPE_KINDS = ("K2", "path", "Q", "R", "cycle", "complete", "star", "other")


@dataclass(frozen=True)
class ShapeTag:
    kind: str
    n: int
    params: dict = field(default_factory=dict, compare=False)

    def __str__(self):
        return f"{self.kind}({self.n})"


def recognize_shape(G: Graph) -> ShapeTag:
    """Recognise a connected graph as one of the named families.

    Coincidences resolve in the order K2, path, Q, R, cycle, complete, star,
    so K3 is reported as Q_3 and K_{3,1} as R_4.
    """
    n = G.n
    if not is_weakly_connected(G):
        raise ValueError("recognize_shape needs a connected graph")
    if n == 2:
        return ShapeTag("K2", 2)
    deg = G.degrees()[1:]
    m = G.num_edges
    counts: dict[int, int] = {}
    for d in deg:
        counts[d] = counts.get(d, 0) + 1
    if n <= 1 or (m == n - 1 and counts.get(1) == 2 and counts[1] + counts.get(2, 0) == n):
        return ShapeTag("path", n)
    if n == 3 and m == 3:
        return ShapeTag("Q", 3)
    if n >= 4 and counts.get(3) == 1 and counts.get(1) in (1, 3):
        x = deg.index(3) + 1
        nbrs = G.neighbors(x)
        if m == n and counts[1] == 1 and counts.get(2, 0) == n - 2:
            pair = [(a, b) for a in nbrs for b in nbrs if a < b and G.has_arc(a, b)]
            if len(pair) == 1:
                return ShapeTag("Q", n, {"branch_vertex": x})
        if m == n - 1 and counts[1] == 3 and counts.get(2, 0) == n - 4:
            if sum(1 for a in nbrs if G.degree(a) == 1) >= 2:
                return ShapeTag("R", n, {"branch_vertex": x})
    if n >= 4 and m == n and counts.get(2) == n:
        return ShapeTag("cycle", n)
    if n >= 4 and m == n * (n - 1) // 2:
        return ShapeTag("complete", n)
    if n >= 5 and m == n - 1 and counts.get(n - 1) == 1 and counts.get(1) == n - 1:
        return ShapeTag("star", n, {"k": n - 1})
    return ShapeTag("other", n)
