import networkx as nx
import pytest
from hypothesis import given

from arcsemi.digraph import Digraph, is_weakly_connected
from arcsemi.isomorphism import (
    canonical_code,
    canonical_form,
    code_of,
    connected_graphs,
    count_digraphs,
    enumerate_digraphs,
    from_code,
    is_isomorphic,
)

from strategies import digraphs, permutations

# digraphs up to isomorphism and connected graphs up to isomorphism, by vertex count
KNOWN_DIGRAPHS = {1: 1, 2: 3, 3: 16, 4: 218}
KNOWN_CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


def test_small_counts():
    assert count_digraphs(2) == 4
    assert count_digraphs(2, up_to_iso=True) == 3
    assert count_digraphs(3) == 64
    assert {D.num_arcs for D in enumerate_digraphs(2, up_to_iso=True)} == {0, 1, 2}


@pytest.mark.parametrize("n", sorted(KNOWN_DIGRAPHS))
def test_digraph_counts_up_to_iso(n):
    assert count_digraphs(n, up_to_iso=True) == KNOWN_DIGRAPHS[n]


def test_digraph_count_n3_by_networkx():
    reps = []
    for D in enumerate_digraphs(3):
        g = nx.DiGraph(list(D.arcs))
        g.add_nodes_from(D.vertices)
        if not any(nx.is_isomorphic(g, h) for h in reps):
            reps.append(g)
    assert len(reps) == count_digraphs(3, up_to_iso=True)


@pytest.mark.parametrize("n", sorted(KNOWN_CONNECTED))
def test_connected_graph_counts(n):
    graphs = connected_graphs(n)
    assert len(graphs) == KNOWN_CONNECTED[n]
    assert all(is_weakly_connected(G) for G in graphs)


def test_connected_graphs_pairwise_non_isomorphic():
    graphs = [nx.Graph(G.edges) for G in connected_graphs(5)]
    for i, g in enumerate(graphs):
        assert not any(nx.is_isomorphic(g, h) for h in graphs[i + 1:])


@given(digraphs(max_n=5))
def test_code_round_trip(D):
    assert from_code(code_of(D), D.n) == D


@given(digraphs(max_n=5), permutations(5))
def test_canonical_form_is_invariant(D, perm):
    perm = [p for p in perm if p <= D.n]
    E = D.relabel(perm)
    assert canonical_code(D) == canonical_code(E)
    assert canonical_form(D) == canonical_form(E)
    assert is_isomorphic(D, E)


@given(digraphs(max_n=4), digraphs(max_n=4))
def test_is_isomorphic_matches_networkx(D, E):
    if D.n != E.n:
        assert not is_isomorphic(D, E)
        return
    g, h = nx.DiGraph(), nx.DiGraph()
    g.add_nodes_from(D.vertices)
    g.add_edges_from(D.arcs)
    h.add_nodes_from(E.vertices)
    h.add_edges_from(E.arcs)
    assert is_isomorphic(D, E) == nx.is_isomorphic(g, h)


def test_enumeration_rejects_large_n():
    with pytest.raises(ValueError):
        list(enumerate_digraphs(6))
    with pytest.raises(ValueError):
        list(enumerate_digraphs(9, up_to_iso=True))


def test_is_isomorphic_example():
    assert is_isomorphic(Digraph(3, [(1, 2)]), Digraph(3, [(3, 1)]))
    assert not is_isomorphic(Digraph(3, [(1, 2), (2, 3)]), Digraph(3, [(1, 2), (3, 2)]))
