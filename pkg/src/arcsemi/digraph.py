"""Digraphs and graphs on the vertex set {1, ..., n}, with the decompositions
used throughout the package: strong components, closure, condensation,
weak components, blocks and branches.

All objects are immutable. Vertices are 1-based; adjacency is stored as
tuples indexed by vertex (slot 0 is unused).
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

Arc = tuple[int, int]


class ParseError(ValueError):
    """Malformed edge-list document. ``line`` is 1-based, or None."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Digraph:
    """A loop-free digraph without multiple arcs on vertices 1..n."""

    __slots__ = ("n", "_out", "_in", "_arcs", "_hash")

    def __init__(self, n: int, arcs: Iterable[Arc] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        out: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in arcs:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"arc ({u}, {v}) out of range 1..{n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            out[u].add(v)
        self._init_from_sets(n, out)

    def _init_from_sets(self, n: int, out: Sequence[Iterable[int]]) -> None:
        self.n = n
        self._out = tuple(tuple(sorted(s)) for s in out)
        inn: list[list[int]] = [[] for _ in range(n + 1)]
        for u in range(1, n + 1):
            for v in self._out[u]:
                inn[v].append(u)
        self._in = tuple(tuple(s) for s in inn)
        self._arcs = None
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, out: Sequence[Sequence[int]], inn=None):
        # no validation: callers guarantee sorted, loop-free, in-range lists
        obj = cls.__new__(cls)
        obj.n = n
        obj._out = tuple(tuple(s) for s in out)
        if inn is None:
            lists: list[list[int]] = [[] for _ in range(n + 1)]
            for u in range(1, n + 1):
                for v in obj._out[u]:
                    lists[v].append(u)
            obj._in = tuple(tuple(s) for s in lists)
        else:
            obj._in = inn if isinstance(inn, tuple) else tuple(tuple(s) for s in inn)
        obj._arcs = None
        obj._hash = None
        return obj

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def arcs(self) -> frozenset[Arc]:
        if self._arcs is None:
            self._arcs = frozenset((u, v) for u in self.vertices for v in self._out[u])
        return self._arcs

    def sorted_arcs(self) -> list[Arc]:
        return [(u, v) for u in self.vertices for v in self._out[u]]

    @property
    def num_arcs(self) -> int:
        return sum(len(s) for s in self._out)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def is_isolated(self, v: int) -> bool:
        return not self._out[v] and not self._in[v]

    def is_symmetric(self) -> bool:
        arcs = self.arcs
        return all((v, u) in arcs for u, v in arcs)

    def reverse(self) -> Digraph:
        """The digraph with every arc reversed."""
        return Digraph._trusted(self.n, self._in, self._out)

    def relabel(self, perm: Sequence[int]) -> Digraph:
        """Image of this digraph under the vertex map ``v -> perm[v - 1]``."""
        if sorted(perm) != list(self.vertices):
            raise ValueError("perm must be a permutation of 1..n")
        return Digraph(self.n, ((perm[u - 1], perm[v - 1]) for u, v in self.arcs))

    def induced(self, vertices: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
        """Induced subdigraph, relabelled to 1..k in increasing vertex order.

        Returns the subdigraph and the tuple of original labels.
        """
        labels = tuple(sorted(set(vertices)))
        index = {v: i + 1 for i, v in enumerate(labels)}
        arcs = [(index[u], index[v]) for u in labels for v in self._out[u] if v in index]
        return Digraph(len(labels), arcs), labels

    def with_arcs(self, arcs: Iterable[Arc]) -> Digraph:
        return Digraph(self.n, set(self.arcs).union(arcs))

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._out == other._out

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self._out))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, arcs={self.sorted_arcs()})"


class Graph(Digraph):
    """A digraph whose arc relation is symmetric; arcs come in edge pairs."""

    __slots__ = ()

    def __init__(self, n: int, arcs: Iterable[Arc] = ()):
        super().__init__(n, arcs)
        if not self.is_symmetric():
            raise ValueError("arc set is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Arc]) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge {{{u}, {v}}} out of range 1..{n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        lists = tuple(tuple(sorted(s)) for s in adj)
        return cls._trusted(n, lists, lists)

    @classmethod
    def from_digraph(cls, D: Digraph) -> Graph:
        if isinstance(D, Graph):
            return D
        if not D.is_symmetric():
            raise ValueError("digraph is not symmetric")
        return cls._trusted(D.n, D._out, D._out)

    @property
    def edges(self) -> list[Arc]:
        return [(u, v) for u in self.vertices for v in self._out[u] if u < v]

    @property
    def num_edges(self) -> int:
        return self.num_arcs // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def degree(self, v: int) -> int:
        return len(self._out[v])

    def degrees(self) -> list[int]:
        """Degree list indexed by vertex (index 0 unused, set to 0)."""
        return [len(s) for s in self._out]

    def relabel(self, perm: Sequence[int]) -> Graph:
        return Graph.from_digraph(super().relabel(perm))

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        D, labels = super().induced(vertices)
        return Graph.from_digraph(D), labels


# -- edge-list text format ---------------------------------------------------

_INT = re.compile(r"^[+-]?\d+$")


def parse_digraph(text: str) -> Digraph:
    """Parse the edge-list format: '#' comments, a line ``n``, then ``u v`` lines."""
    n: int | None = None
    arcs: set[Arc] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1 or not _INT.match(fields[0]):
                raise ParseError(f"expected vertex count, got {raw.strip()!r}", lineno)
            n = int(fields[0])
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        if len(fields) != 2 or not all(_INT.match(f) for f in fields):
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", lineno)
        u, v = int(fields[0]), int(fields[1])
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        for w in (u, v):
            if not 1 <= w <= n:
                raise ParseError(f"vertex {w} out of range 1..{n}", lineno)
        arcs.add((u, v))
    if n is None:
        raise ParseError("missing vertex count")
    return Digraph(n, arcs)


def format_digraph(D: Digraph, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(str(D.n))
    lines.extend(f"{u} {v}" for u, v in D.sorted_arcs())
    return "\n".join(lines) + "\n"


# -- reachability decompositions ---------------------------------------------


def strong_components(D: Digraph) -> list[tuple[int, ...]]:
    """Strong components (iterative Tarjan), each sorted, ordered by least vertex."""
    n = D.n
    index = [0] * (n + 1)  # 0 = unvisited; otherwise discovery number
    low = [0] * (n + 1)
    on_stack = [False] * (n + 1)
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    counter = 1
    out = D._out
    for root in range(1, n + 1):
        if index[root]:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            nbrs = out[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if not index[w]:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
    comps.sort()
    return comps


def component_index(parts: Sequence[Sequence[int]], n: int) -> list[int]:
    """Map vertex -> index of its part (index 0 of the result is unused)."""
    where = [-1] * (n + 1)
    for i, part in enumerate(parts):
        for v in part:
            where[v] = i
    return where


def is_acyclic(D: Digraph) -> bool:
    return all(len(c) == 1 for c in strong_components(D))


def find_cycle(D: Digraph) -> list[int] | None:
    """Some directed cycle as a vertex list (first vertex not repeated), or None."""
    for comp in strong_components(D):
        if len(comp) < 2:
            continue
        members = set(comp)
        # walk inside the component until a vertex repeats
        seen: dict[int, int] = {}
        walk = []
        v = comp[0]
        while v not in seen:
            seen[v] = len(walk)
            walk.append(v)
            v = next(w for w in D.out_neighbors(v) if w in members)
        return walk[seen[v]:]
    return None


def closure(D: Digraph) -> Digraph:
    """Add the reverse of every arc lying on a cycle, i.e. inside a strong component."""
    where = component_index(strong_components(D), D.n)
    extra = [(v, u) for u, v in D.arcs if where[u] == where[v]]
    if all(D.has_arc(a, b) for a, b in extra):
        return D
    return D.with_arcs(extra)


def is_closed(D: Digraph) -> bool:
    return closure(D) == D


class Condensation(NamedTuple):
    components: list[tuple[int, ...]]
    quotient: Digraph  # vertex i + 1 stands for components[i]
    terminals: list[tuple[int, ...]]


def condensation_and_terminals(D: Digraph) -> Condensation:
    comps = strong_components(D)
    where = component_index(comps, D.n)
    qarcs = {(where[u] + 1, where[v] + 1) for u, v in D.arcs if where[u] != where[v]}
    quotient = Digraph(len(comps), qarcs)
    terminals = [comps[i - 1] for i in quotient.vertices if quotient.out_degree(i) == 0]
    return Condensation(comps, quotient, terminals)


def terminal_components(D: Digraph) -> list[tuple[int, ...]]:
    return condensation_and_terminals(D).terminals


def underlying_graph(D: Digraph) -> Graph:
    if isinstance(D, Graph):
        return D
    adj = [set(D._out[v]).union(D._in[v]) for v in range(D.n + 1)]
    lists = tuple(tuple(sorted(s)) for s in adj)
    return Graph._trusted(D.n, lists, lists)


def weak_components(D: Digraph) -> list[tuple[int, ...]]:
    """Components of the underlying graph, each sorted, ordered by least vertex."""
    n = D.n
    seen = [False] * (n + 1)
    comps = []
    for s in range(1, n + 1):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in D._out[v] + D._in[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def is_weakly_connected(D: Digraph) -> bool:
    return D.n <= 1 or len(weak_components(D)) == 1


def nontrivial_components(D: Digraph) -> list[tuple[Digraph, tuple[int, ...]]]:
    """Weak components with at least one arc, as relabelled induced subdigraphs."""
    return [D.induced(c) for c in weak_components(D) if len(c) > 1]


def is_strongly_connected(D: Digraph) -> bool:
    return D.n <= 1 or len(strong_components(D)) == 1


# -- fans and bipartiteness -------------------------------------------------


def is_fan(D: Digraph) -> tuple[bool, int | None]:
    """Whether D is a fan (all arcs point into one sink); returns the sink too."""
    if D.n == 0:
        return False, None
    if D.n == 1:
        return True, 1
    sinks = [v for v in D.vertices if D.out_degree(v) == 0]
    if len(sinks) != 1:
        return False, None
    z = sinks[0]
    for v in D.vertices:
        if v != z and D.out_neighbors(v) != (z,):
            return False, None
    return True, z


def is_directed_bipartite(D: Digraph) -> tuple[bool, tuple[frozenset, frozenset] | None]:
    """No vertex has both in- and out-arcs; witness is (sources side, targets side)."""
    targets = frozenset(v for v in D.vertices if D.in_degree(v) > 0)
    if any(D.out_degree(v) > 0 for v in targets):
        return False, None
    return True, (frozenset(D.vertices) - targets, targets)


def directed_bipartite_obstruction(D: Digraph) -> tuple[int, int, int] | None:
    """A directed 2-path (a, b, c) with a != c, if one exists."""
    for b in D.vertices:
        for a in D.in_neighbors(b):
            for c in D.out_neighbors(b):
                if a != c:
                    return a, b, c
    return None


class Bipartiteness(str, enum.Enum):
    NOT_BIPARTITE = "not_bipartite"
    BIPARTITE = "bipartite"
    ODD_BIPARTITE = "odd_bipartite"


def two_coloring(G: Graph) -> list[int] | None:
    """A proper 2-colouring (list indexed by vertex, values 0/1) or None."""
    color = [-1] * (G.n + 1)
    for s in G.vertices:
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in G._out[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def bipartite_test(G: Graph) -> Bipartiteness:
    if two_coloring(G) is None:
        return Bipartiteness.NOT_BIPARTITE
    return Bipartiteness.ODD_BIPARTITE if G.n % 2 else Bipartiteness.BIPARTITE


# -- blocks -------------------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]

    def largest(self) -> frozenset[int]:
        return max(self.blocks, key=len)

    def block_of_edge(self, u: int, v: int) -> frozenset[int] | None:
        for b in self.blocks:
            if u in b and v in b:
                return b
        return None


class _BlockScan(NamedTuple):
    blocks: list[list[int]] | None
    largest: int
    cuts: set[int]
    up: list[int]  # DFS tree parent, 0 for roots
    bridge: list[bool]  # bridge[v]: the tree edge (up[v], v) is a bridge

    def is_bridge(self, u: int, v: int) -> bool:
        return (self.up[v] == u and self.bridge[v]) or (self.up[u] == v and self.bridge[u])


def _scan_blocks(G: Graph, keep: bool = True) -> _BlockScan:
    """Iterative Hopcroft-Tarjan; block vertex lists are kept only on request."""
    n = G.n
    adj = G._out
    disc = [0] * (n + 1)
    low = [0] * (n + 1)
    up = [0] * (n + 1)
    pos = [0] * (n + 1)
    bridge = [False] * (n + 1)
    found: list[list[int]] | None = [] if keep else None
    largest = 0
    cuts: set[int] = set()
    counter = 1
    for root in range(1, n + 1):
        if disc[root]:
            continue
        disc[root] = low[root] = counter
        counter += 1
        if not adj[root]:
            if keep:
                found.append([root])
            largest = max(largest, 1)
            continue
        vstack = [root]
        work = [root]
        root_children = 0
        while work:
            v = work[-1]
            nbrs = adj[v]
            i = pos[v]
            if i < len(nbrs):
                pos[v] = i + 1
                w = nbrs[i]
                if not disc[w]:
                    disc[w] = low[w] = counter
                    counter += 1
                    up[w] = v
                    vstack.append(w)
                    work.append(w)
                elif w != up[v] and disc[w] < low[v]:
                    low[v] = disc[w]
                continue
            work.pop()
            if not work:
                break
            u = up[v]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                bridge[v] = low[v] > disc[u]
                # the block is u plus everything stacked above v, v included
                cut = len(vstack) - 1
                while vstack[cut] != v:
                    cut -= 1
                size = len(vstack) - cut + 1
                if keep:
                    found.append([u] + vstack[cut:])
                del vstack[cut:]
                if size > largest:
                    largest = size
                if u == root:
                    root_children += 1
                else:
                    cuts.add(u)
        if root_children > 1:
            cuts.add(root)
    return _BlockScan(found, largest, cuts, up, bridge)


def blocks(G: Graph) -> BlockDecomposition:
    """Biconnected blocks and cut vertices (iterative Hopcroft-Tarjan).

    Blocks are vertex sets; an isolated vertex forms a block on its own.
    """
    scan = _scan_blocks(G)
    return BlockDecomposition(tuple(frozenset(b) for b in scan.blocks), frozenset(scan.cuts))


def is_nonseparable(G: Graph) -> bool:
    """Exactly one block covering every vertex (so K1 and K2 qualify)."""
    bd = blocks(G)
    return len(bd.blocks) == 1 and len(bd.blocks[0]) == G.n


# -- branches -----------------------------------------------------------------


class NoBranchDecomposition(ValueError):
    pass


@dataclass(frozen=True)
class Branch:
    """A maximal path of degree-2 vertices.

    ``ends`` are the neighbours outside the path at each end (first, last);
    ``in_block`` is set when the path lies inside a block with at least three
    vertices, in which case it does not split the graph.
    """

    vertices: tuple[int, ...]
    ends: tuple[int, int]
    terminal: bool
    in_block: bool

    @property
    def length(self) -> int:
        return len(self.vertices)


def branches(G: Graph, decomposition: BlockDecomposition | None = None) -> list[Branch]:
    """All branches, sorted longest first (ties by vertex list).

    A branch lies in a block of size >= 3 iff its first edge is not a bridge.
    """
    if decomposition is None:
        return _branches(G, _scan_blocks(G, keep=False).is_bridge)
    pairs = {b for b in decomposition.blocks if len(b) == 2}
    return _branches(G, lambda u, v: frozenset((u, v)) in pairs)


def _branches(G: Graph, is_bridge) -> list[Branch]:
    n = G.n
    adj = G._out
    if n == 0:
        return []
    deg2 = [len(a) == 2 for a in adj]
    deg2[0] = False
    if all(deg2[1:]):
        raise NoBranchDecomposition("no branch decomposition: every vertex has degree 2")
    seen = [False] * (n + 1)
    out = []
    for s in range(1, n + 1):
        if not deg2[s] or seen[s]:
            continue
        seen[s] = True
        sides = []
        for start in adj[s]:
            chain = []
            prev, cur = s, start
            while deg2[cur] and not seen[cur]:
                seen[cur] = True
                chain.append(cur)
                a, b = adj[cur]
                prev, cur = cur, (b if a == prev else a)
            sides.append((chain, cur))
        (left, a), (right, b) = sides
        path = left[::-1] + [s] + right
        if path[0] > path[-1]:
            path.reverse()
            a, b = b, a
        in_block = a == b or not is_bridge(a, path[0])
        terminal = not in_block and (len(adj[a]) == 1 or len(adj[b]) == 1)
        out.append(Branch(tuple(path), (a, b), terminal, in_block))
    out.sort(key=lambda br: (-br.length, br.vertices))
    return out


def longest_branch(G: Graph, decomposition: BlockDecomposition | None = None) -> Branch | None:
    found = branches(G, decomposition)
    return found[0] if found else None


def split_at_branch(G: Graph, branch: Branch) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Vertex sets of the two sides left after deleting a bridge-path branch.

    The side attached at ``branch.ends[0]`` comes first.
    """
    if branch.in_block:
        raise NoBranchDecomposition("branch lies inside a block")
    adj = G._out
    sides = []
    for start in branch.ends:
        # blocked marks the branch and everything reached so far
        blocked = bytearray(G.n + 1)
        for v in branch.vertices:
            blocked[v] = 1
        blocked[start] = 1
        seen = [start]
        for v in seen:
            for w in adj[v]:
                if not blocked[w]:
                    blocked[w] = 1
                    seen.append(w)
        sides.append(tuple(sorted(seen)))
    return sides[0], sides[1]


# -- minors ---------------------------------------------------------------------


def delete_vertex(G: Graph, v: int) -> Graph:
    if not 1 <= v <= G.n:
        raise ValueError(f"no vertex {v}")
    keep = [u for u in G.vertices if u != v]
    return G.induced(keep)[0]


def _edge_key(G: Graph, e: Arc) -> Arc:
    u, v = e
    if not (1 <= u <= G.n and 1 <= v <= G.n) or v not in G.neighbors(u):
        raise ValueError(f"no edge {{{u}, {v}}}")
    return (u, v) if u < v else (v, u)


def delete_edge(G: Graph, e: Arc) -> Graph:
    key = _edge_key(G, e)
    return Graph.from_edges(G.n, (f for f in G.edges if f != key))


def contract_edge(G: Graph, e: Arc) -> Graph:
    """Merge the endpoints into the smaller label and relabel to 1..n-1."""
    keep, gone = _edge_key(G, e)

    def image(w: int) -> int:
        w = keep if w == gone else w
        return w - 1 if w > gone else w

    edges = {(image(a), image(b)) for a, b in G.edges}
    return Graph.from_edges(G.n - 1, ((a, b) for a, b in edges if a != b))


def iter_edges(G: Graph) -> Iterator[Arc]:
    for u in G.vertices:
        for v in G._out[u]:
            if u < v:
                yield u, v


def max_degree(G: Graph) -> int:
    return max((len(a) for a in G._out[1:]), default=0)
