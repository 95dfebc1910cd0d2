import networkx as nx
import pytest
from hypothesis import given

from arcsemi.digraph import (
    Bipartiteness,
    Digraph,
    Graph,
    ParseError,
    bipartite_test,
    blocks,
    branches,
    closure,
    condensation_and_terminals,
    contract_edge,
    delete_edge,
    delete_vertex,
    format_digraph,
    is_acyclic,
    is_directed_bipartite,
    is_fan,
    is_nonseparable,
    parse_digraph,
    strong_components,
    underlying_graph,
    weak_components,
)
from arcsemi.families import (
    complete_bipartite,
    complete_graph,
    construct,
    cycle_graph,
    directed_cycle,
    oplus,
    path_graph,
    q_graph,
    r_graph,
    recognize_shape,
    star_graph,
    theta0,
)
from arcsemi.isomorphism import is_isomorphic

from strategies import connected_graphs, digraphs


def to_nx(D):
    g = nx.DiGraph()
    g.add_nodes_from(D.vertices)
    g.add_edges_from(D.arcs)
    return g


def to_nx_graph(G):
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges)
    return g


# -- parsing -------------------------------------------------------------------------


def test_parse_basic():
    assert parse_digraph("3\n1 2\n2 3") == Digraph(3, [(1, 2), (2, 3)])


def test_parse_rejects_loop_with_line_number():
    with pytest.raises(ParseError) as err:
        parse_digraph("2\n1 1")
    assert "loop at vertex 1" in str(err.value)
    assert err.value.line == 2


def test_parse_set_semantics():
    D = parse_digraph("3\n1 2\n1 2")
    assert D.arcs == {(1, 2)}


@pytest.mark.parametrize("text", ["", "x\n", "3\n1\n", "3\n1 4\n", "-1\n", "3\n1 a\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_digraph(text)


def test_parse_comments_and_blank_lines():
    D = parse_digraph("# header\n\n3  # vertices\n1 2 # arc\n")
    assert D == Digraph(3, [(1, 2)])


@given(digraphs(max_n=6))
def test_format_round_trip(D):
    assert parse_digraph(format_digraph(D, "comment\nsecond line")) == D


def test_constructor_validates():
    with pytest.raises(ValueError):
        Digraph(2, [(1, 1)])
    with pytest.raises(ValueError):
        Digraph(2, [(1, 3)])


# -- strong components, closure, terminals -------------------------------------------


@pytest.mark.parametrize("arcs, expected", [
    ([(1, 2), (2, 3), (3, 1)], [{1, 2, 3}]),
    ([(1, 3), (2, 3)], [{1}, {2}, {3}]),
    ([(1, 2), (2, 1), (2, 3)], [{1, 2}, {3}]),
])
def test_strong_components_examples(arcs, expected):
    got = [set(c) for c in strong_components(Digraph(3, arcs))]
    assert sorted(got, key=min) == sorted(expected, key=min)


@given(digraphs(max_n=7))
def test_strong_components_match_networkx(D):
    ours = {frozenset(c) for c in strong_components(D)}
    theirs = {frozenset(c) for c in nx.strongly_connected_components(to_nx(D))}
    assert ours == theirs


@given(digraphs(max_n=7))
def test_weak_components_match_networkx(D):
    ours = {frozenset(c) for c in weak_components(D)}
    theirs = {frozenset(c) for c in nx.weakly_connected_components(to_nx(D))}
    assert ours == theirs


def test_closure_examples():
    assert closure(directed_cycle(3)) == complete_graph(3)
    fan = Digraph(3, [(1, 3), (2, 3)])
    assert closure(fan) == fan
    two = Digraph(2, [(1, 2), (2, 1)])
    assert closure(two) == two


@given(digraphs(max_n=6))
def test_closure_properties(D):
    C = closure(D)
    assert D.arcs <= C.arcs
    assert closure(C) == C
    # the added arcs are exactly the reverses of arcs inside strong components
    where = {v: i for i, comp in enumerate(strong_components(D)) for v in comp}
    expected = D.arcs | {(b, a) for a, b in D.arcs if where[a] == where[b]}
    assert C.arcs == expected


def test_terminals_examples():
    assert condensation_and_terminals(Digraph(3, [(1, 3), (2, 3)])).terminals == [(3,)]
    assert condensation_and_terminals(Digraph(2, [(1, 2), (2, 1)])).terminals == [(1, 2)]
    assert sorted(condensation_and_terminals(Digraph(3, [(1, 2), (1, 3)])).terminals) == [(2,), (3,)]


@given(digraphs(max_n=6))
def test_terminals_have_no_outgoing_arcs(D):
    cond = condensation_and_terminals(D)
    for comp in cond.terminals:
        inside = set(comp)
        assert all(v in inside for u in comp for v in D.out_neighbors(u))
    assert is_acyclic(cond.quotient)


def test_underlying_graph_examples():
    assert underlying_graph(Digraph(2, [(1, 2)])).edges == [(1, 2)]
    assert underlying_graph(Digraph(2, [(1, 2), (2, 1)])).edges == [(1, 2)]
    assert len(weak_components(Digraph(4, [(1, 2), (3, 4)]))) == 2


# -- shapes ----------------------------------------------------------------------------


def test_recognize_shape():
    assert recognize_shape(path_graph(5)).kind == "path"
    assert recognize_shape(q_graph(6)).kind == "Q"
    assert recognize_shape(r_graph(6)).kind == "R"
    assert recognize_shape(cycle_graph(5)).kind == "cycle"


def test_fan_examples():
    assert is_fan(Digraph(4, [(1, 4), (2, 4), (3, 4)])) == (True, 4)
    assert not is_fan(Digraph(3, [(1, 2), (2, 3)]))[0]
    assert is_fan(Digraph(1))[0]


def test_directed_bipartite_examples():
    ok, parts = is_directed_bipartite(Digraph(4, [(1, 3), (2, 3), (1, 4)]))
    assert ok and {1, 2} <= parts[0] and {3, 4} <= parts[1]
    assert not is_directed_bipartite(Digraph(3, [(1, 2), (2, 3)]))[0]
    assert not is_directed_bipartite(Digraph(2, [(1, 2), (2, 1)]))[0]


def test_bipartite_test_examples():
    assert bipartite_test(cycle_graph(6)) is Bipartiteness.BIPARTITE
    assert bipartite_test(cycle_graph(5)) is Bipartiteness.NOT_BIPARTITE
    assert bipartite_test(complete_bipartite(2, 3)) is Bipartiteness.ODD_BIPARTITE


# -- blocks and branches ----------------------------------------------------------------


def test_blocks_examples():
    bd = blocks(cycle_graph(5))
    assert len(bd.blocks) == 1 and not bd.cut_vertices and is_nonseparable(cycle_graph(5))
    bd = blocks(q_graph(6))
    assert set(bd.blocks) == {frozenset({4, 5, 6}), frozenset({3, 4}), frozenset({2, 3}), frozenset({1, 2})}
    assert bd.cut_vertices == {2, 3, 4}
    assert len(blocks(path_graph(4)).blocks) == 3


@given(connected_graphs(max_n=8))
def test_blocks_match_networkx(G):
    g = to_nx_graph(G)
    bd = blocks(G)
    assert set(bd.blocks) == {frozenset(c) for c in nx.biconnected_components(g)}
    assert bd.cut_vertices == set(nx.articulation_points(g))


@given(connected_graphs(min_n=3, max_n=8))
def test_cut_vertices_by_removal(G):
    g = to_nx_graph(G)
    cut = {v for v in G.vertices if not nx.is_connected(g.subgraph(set(G.vertices) - {v}))}
    assert blocks(G).cut_vertices == cut


def test_branch_examples():
    P = branches(q_graph(8))[0]
    assert P.vertices == (2, 3, 4, 5) and P.length == 4 and P.terminal
    star = star_graph(3)
    centre = next(v for v in star.vertices if star.degree(v) == 3)
    J = oplus(star, 4, cycle_graph(4), attach_left=centre)
    P = branches(J.graph)[0]
    assert P.vertices == J.path_vertices and not P.terminal
    (P,) = branches(path_graph(5))
    assert P.vertices == (2, 3, 4) and P.terminal


@given(connected_graphs(min_n=3, max_n=8))
def test_branches_are_maximal_degree_two_paths(G):
    try:
        found = branches(G)
    except ValueError:
        return
    for P in found:
        assert all(G.degree(v) == 2 for v in P.vertices)
        for end in P.ends:
            assert G.degree(end) != 2
    lengths = [P.length for P in found]
    assert lengths == sorted(lengths, reverse=True)


# -- minors and constructions ------------------------------------------------------------


def test_minor_ops():
    assert is_isomorphic(contract_edge(cycle_graph(4), (1, 2)), cycle_graph(3))
    star = star_graph(3)
    leaf = next(v for v in star.vertices if star.degree(v) == 1)
    assert is_isomorphic(delete_vertex(star, leaf), path_graph(3))
    assert is_isomorphic(delete_edge(cycle_graph(3), (1, 2)), path_graph(3))


def test_construct_examples():
    T = construct("theta0")
    assert T.n == 7 and len(T.edges) == 8
    hub = next(v for v in T.vertices if T.degree(v) == 2 and all(T.degree(w) == 3 for w in T.neighbors(v)))
    a, b = T.neighbors(hub)
    hexagon = delete_vertex(T, hub)
    assert is_isomorphic(hexagon, cycle_graph(6))
    assert nx.shortest_path_length(to_nx_graph(T).subgraph(set(T.vertices) - {hub}), a, b) == 3
    assert is_isomorphic(T, theta0())
    assert construct("fan", 4).arcs == {(1, 4), (2, 4), (3, 4)}
    star = star_graph(3)
    centre = next(v for v in star.vertices if star.degree(v) == 3)
    J = construct("oplus", star, 4, cycle_graph(4), attach_left=centre)
    assert J.n == 12 and len(J.edges) == 12


def test_oplus_rejects_degree_one_attachment():
    star = star_graph(3)
    leaf = next(v for v in star.vertices if star.degree(v) == 1)
    with pytest.raises(ValueError):
        oplus(star, 2, complete_graph(3), attach_left=leaf)


@given(digraphs(max_n=5))
def test_relabel_preserves_structure(D):
    perm = list(range(D.n, 0, -1))
    E = D.relabel(perm)
    assert E.num_arcs == D.num_arcs
    assert sorted(len(c) for c in strong_components(E)) == sorted(len(c) for c in strong_components(D))
    assert nx.is_isomorphic(to_nx(D), to_nx(E))


def test_graph_is_symmetric():
    G = Graph.from_edges(3, [(1, 2), (2, 3)])
    assert G.arcs == {(1, 2), (2, 1), (2, 3), (3, 2)}
    assert G.degree(2) == 2
