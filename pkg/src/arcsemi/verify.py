"""Sweeps that compare the fast routes with enumeration, plus structural invariant checks.

Every check returns a list of ``Violation`` records; an empty list means the
check passed. Random instances come from a seeded ``random.Random`` so runs
are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import numpy as np

from .classifier import PropertyReport, classify
from .cyclelength import decide_l_leq_k, l_of
from .digraph import (
    Digraph,
    Graph,
    contract_edge,
    delete_edge,
    delete_vertex,
    is_strongly_connected,
    is_weakly_connected,
    iter_edges,
    max_degree,
    nontrivial_components,
    strong_components,
    terminal_components,
    component_index,
)
from .isomorphism import connected_graphs, enumerate_digraphs
from .oracle import Transformation, arc_transform, generate, green_structure, l_brute, probe
from .oracle.green import GreenStructure
from .oracle.semigroup import SemigroupTable


@dataclass
class Violation:
    check: str
    n: int
    arcs: list
    detail: str

    def __str__(self):
        return f"{self.check}: n={self.n} arcs={self.arcs} :: {self.detail}"


def _arcs(D: Digraph) -> list:
    return [list(a) for a in D.sorted_arcs()]


# -- classifier against oracle ---------------------------------------------------------


def compare_properties(D: Digraph, classifier: Callable[[Digraph], PropertyReport] = classify,
                       S: SemigroupTable | None = None) -> list[Violation]:
    """Every applicable classifier verdict against the oracle, plus the size prediction."""
    if D.num_arcs == 0:
        return []
    rep = classifier(D)
    S = generate(D) if S is None else S
    oracle = probe(S).flags()
    out = []
    for name, verdict in rep.applicable().items():
        if oracle.get(name) is None:
            continue
        if oracle[name] != verdict:
            out.append(Violation("property", D.n, _arcs(D),
                                 f"{name}: classifier={verdict} oracle={oracle[name]}"))
    if rep.predicted_size is not None and rep.predicted_size != len(S):
        out.append(Violation("property", D.n, _arcs(D),
                             f"predicted_size={rep.predicted_size} actual={len(S)}"))
    return out


def property_sweep(digraphs: Iterable[Digraph],
                   classifier: Callable[[Digraph], PropertyReport] = classify) -> tuple[int, list[Violation]]:
    checked = 0
    bad: list[Violation] = []
    for D in digraphs:
        if D.num_arcs == 0:
            continue
        checked += 1
        bad.extend(compare_properties(D, classifier))
    return checked, bad


# -- cycle length ----------------------------------------------------------------------


def l_sweep(graphs: Iterable[Graph], ks: Iterable[int], brute_force_limit: int = 0,
            exact_up_to: int = 5) -> tuple[int, list[Violation]]:
    """decide_l_leq_k and l_of against enumeration.

    With ``brute_force_limit=0`` the decision never enumerates up front, so the
    structural steps are what gets tested. Enumeration runs as a threshold
    search past max(ks); l_of is compared with exact enumeration only on
    graphs with at most ``exact_up_to`` vertices.
    """
    ks = list(ks)
    checked = 0
    bad: list[Violation] = []
    for G in graphs:
        if G.num_arcs == 0:
            continue
        if G.n <= exact_up_to:
            l = l_brute(G)
            fast = l_of(G)
            if fast != l:
                bad.append(Violation("l_of", G.n, _arcs(G), f"l_of={fast} enumeration={l}"))
        else:
            l = l_brute(G, stop_at=max(ks) + 1)
        for k in ks:
            checked += 1
            d = decide_l_leq_k(G, k, brute_force_limit)
            if d.verdict != (l <= k):
                bad.append(Violation("decide", G.n, _arcs(G),
                                     f"k={k} verdict={d.verdict} via {d.path_taken} but l>={l}"))
    return checked, bad


# -- structural invariants -----------------------------------------------------------------


def check_r_related_idempotents(D: Digraph, S: SemigroupTable, g: GreenStructure) -> list[Violation]:
    """Each arc inside a strong component has its reverse in <D>, R-related to it."""
    out = []
    where = component_index(strong_components(D), D.n)
    for a, b in D.sorted_arcs():
        if where[a] != where[b]:
            continue
        i = S.index_of(arc_transform(a, b, D.n))
        j = S.index_of(arc_transform(b, a, D.n))
        if j is None:
            out.append(Violation("r_related_idempotents", D.n, _arcs(D), f"({b}->{a}) missing"))
        elif not g.related("R", i, j):
            out.append(Violation("r_related_idempotents", D.n, _arcs(D), f"({a}->{b}) not R ({b}->{a})"))
    return out


def check_constants(D: Digraph, S: SemigroupTable) -> list[Violation]:
    """A strongly connected digraph on n >= 2 vertices yields all n constant maps."""
    if D.n < 2 or not is_strongly_connected(D):
        return []
    missing = [v for v in D.vertices if Transformation.constant(D.n, v) not in S]
    if missing:
        return [Violation("constants", D.n, _arcs(D), f"constant maps to {missing} missing")]
    return []


def check_terminal_image(D: Digraph, S: SemigroupTable) -> list[Violation]:
    """A connected digraph has an element whose image lies in the terminal components."""
    if not is_weakly_connected(D):
        return []
    terminal = np.zeros(D.n, dtype=bool)
    for comp in terminal_components(D):
        terminal[[v - 1 for v in comp]] = True
    inside = terminal[S.elements.astype(np.intp)].all(axis=1)
    if not inside.any():
        return [Violation("terminal_image", D.n, _arcs(D), "no element maps into the terminal components")]
    return []


def check_direct_product(D: Digraph, size: int | None = None) -> list[Violation]:
    """|<D>| + 1 is the product of |<D_i>| + 1 over the non-trivial components."""
    comps = nontrivial_components(D)
    if not comps:
        return []
    size = len(generate(D)) if size is None else size
    expected = 1
    for C, _ in comps:
        expected *= len(generate(C)) + 1
    if size != expected - 1:
        return [Violation("direct_product", D.n, _arcs(D), f"|S|={size} but product formula gives {expected - 1}")]
    return []


def random_minor(G: Graph, rng: random.Random, steps: int) -> Graph:
    """Apply up to ``steps`` random deletions or contractions, keeping at least one edge."""
    H = G
    for _ in range(steps):
        edges = list(iter_edges(H))
        op = rng.choice(("vertex", "edge", "contract"))
        if op == "vertex" and H.n > 2:
            cand = delete_vertex(H, rng.randint(1, H.n))
        elif op == "edge" and len(edges) > 1:
            cand = delete_edge(H, rng.choice(edges))
        elif op == "contract" and H.n > 2:
            cand = contract_edge(H, rng.choice(edges))
        else:
            continue
        if cand.num_arcs:
            H = cand
    return H


def check_minor_monotone(G: Graph, rng: random.Random, l: int | None = None) -> list[Violation]:
    l = l_brute(G) if l is None else l
    H = random_minor(G, rng, rng.randint(1, 3))
    lh = l_brute(H)
    if lh > l:
        return [Violation("minor_monotone", G.n, _arcs(G), f"minor {[list(e) for e in H.edges]} has l={lh} > {l}")]
    return []


def _spanning_tree_leaves(G: Graph) -> int:
    """Leaves of a BFS spanning tree (G connected, n >= 2)."""
    parent = {1: 0}
    order = [1]
    for v in order:
        for w in G.neighbors(v):
            if w not in parent:
                parent[w] = v
                order.append(w)
    deg = [0] * (G.n + 1)
    for v, p in parent.items():
        if p:
            deg[v] += 1
            deg[p] += 1
    return sum(1 for v in G.vertices if deg[v] == 1)


def check_degree_bounds(G: Graph, l: int | None = None) -> list[Violation]:
    """Lower bounds on l from a high degree, a many-leaved tree, and vertices of degree other than 2."""
    if G.num_arcs == 0 or not is_weakly_connected(G):
        return []
    l = l_brute(G) if l is None else l
    out = []
    d = max_degree(G)
    if l < d - 1:
        out.append(Violation("degree_bound", G.n, _arcs(G), f"l={l} < max degree - 1 = {d - 1}"))
    leaves = _spanning_tree_leaves(G)
    if l < leaves - 1:
        out.append(Violation("tree_leaves_bound", G.n, _arcs(G), f"l={l} < leaves - 1 = {leaves - 1}"))
    t = sum(1 for v in G.vertices if G.degree(v) != 2)
    if 4 * (l - 1) < t - 2:
        out.append(Violation("degree2_bound", G.n, _arcs(G), f"l={l} < (t-2)/4 + 1 with t={t}"))
    return out


def invariant_checks(D: Digraph) -> list[Violation]:
    """All invariant checks that need only the digraph and its enumeration."""
    if D.num_arcs == 0:
        return []
    S = generate(D)
    g = green_structure(S)
    out = check_r_related_idempotents(D, S, g)
    out += check_constants(D, S)
    out += check_terminal_image(D, S)
    out += check_direct_product(D, len(S))
    return out


def random_digraph(n: int, rng: random.Random, density: float | None = None) -> Digraph:
    p = rng.uniform(0.15, 0.6) if density is None else density
    arcs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < p]
    return Digraph(n, arcs)


def random_connected_graph(n: int, rng: random.Random, extra: float | None = None) -> Graph:
    """A random spanning tree plus random extra edges."""
    edges = set()
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        edges.add((u, v))
    p = rng.uniform(0.0, 0.5) if extra is None else extra
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                edges.add((u, v))
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return Graph.from_edges(n, ((perm[u - 1], perm[v - 1]) for u, v in edges))


def random_permutation(n: int, rng: random.Random) -> list[int]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return perm


# -- the full verify run ---------------------------------------------------------------


@dataclass
class VerifyReport:
    n_max: int
    k_max: int
    seed: int
    samples: int
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d

    def lines(self) -> list[str]:
        out = [f"seed={self.seed} n_max={self.n_max} k_max={self.k_max} samples={self.samples}"]
        for name, count in self.checked.items():
            out.append(f"checked\t{name}\t{count}")
        by_check: dict[str, int] = {}
        for v in self.violations:
            by_check[v.check] = by_check.get(v.check, 0) + 1
        for name, count in sorted(by_check.items()):
            out.append(f"violations\t{name}\t{count}")
        for v in self.violations[:20]:
            out.append(f"COUNTEREXAMPLE {v}")
        out.append("PASS" if self.ok else f"FAIL ({len(self.violations)} violations)")
        return out


def run_verify(n_max: int, k_max: int, seed: int = 0, samples: int = 20,
               classifier: Callable[[Digraph], PropertyReport] = classify) -> VerifyReport:
    """Exhaustive sweeps up to ``n_max`` plus ``samples`` seeded random instances.

    Property and invariant sweeps cover all labelled digraphs with n <= min(n_max, 4)
    (n = 5 is sampled); the l sweep covers connected graphs with n <= min(n_max, 7).
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if n_max > 7:
        raise ValueError("n_max is limited to 7")
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    rng = random.Random(seed)
    rep = VerifyReport(n_max, k_max, seed, samples)

    exhaustive = [D for n in range(2, min(n_max, 4) + 1) for D in enumerate_digraphs(n)]
    checked, bad = property_sweep(exhaustive, classifier)
    rep.checked["property"] = checked
    rep.violations += bad

    count = 0
    for D in exhaustive:
        if D.num_arcs:
            count += 1
            rep.violations += invariant_checks(D)
    rep.checked["invariants"] = count

    graphs = [G for n in range(2, min(n_max, 7) + 1) for G in connected_graphs(n)]
    checked, bad = l_sweep(graphs, range(1, k_max + 1))
    rep.checked["decide"] = checked
    rep.violations += bad

    # seeded random instances: relabelling invariance, larger digraphs, minors
    relabel = 0
    for _ in range(samples):
        n = rng.randint(2, min(n_max, 5))
        D = random_digraph(n, rng)
        if D.num_arcs == 0:
            continue
        relabel += 1
        perm = random_permutation(n, rng)
        a, b = classifier(D).flags(), classifier(D.relabel(perm)).flags()
        if a != b:
            diff = [k for k in a if a[k] != b[k]]
            rep.violations.append(Violation("relabel", n, _arcs(D), f"perm={perm} changed {diff}"))
        if n == 5:
            rep.violations += compare_properties(D, classifier)
    rep.checked["relabel"] = relabel

    minors = 0
    for _ in range(samples):
        n = rng.randint(3, min(max(n_max, 3), 6))
        G = random_connected_graph(n, rng)
        l = l_brute(G)
        minors += 1
        rep.violations += check_minor_monotone(G, rng, l)
        rep.violations += check_degree_bounds(G, l)
    rep.checked["minor"] = minors
    return rep
