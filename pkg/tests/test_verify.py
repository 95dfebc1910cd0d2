import random

from arcsemi.classifier import classify
from arcsemi.digraph import Digraph, Graph
from arcsemi.families import cycle_graph, directed_cycle, fan, path_graph, star_graph
from arcsemi.oracle import generate, green_structure
from arcsemi.verify import (
    check_constants,
    check_degree_bounds,
    check_direct_product,
    check_minor_monotone,
    check_r_related_idempotents,
    check_terminal_image,
    l_sweep,
    invariant_checks,
    random_connected_graph,
    random_digraph,
    run_verify,
)


def broken_classifier(D):
    rep = classify(D)
    v = rep.verdicts["inverse"]
    if v.verdict is not None:
        rep.verdicts["inverse"] = v.__class__(not v.verdict, "deliberately wrong", None)
    return rep


def test_run_verify_passes():
    rep = run_verify(4, 3, seed=0, samples=10)
    assert rep.ok, rep.lines()
    assert rep.checked["property"] > 4000


def test_run_verify_reports_injected_bug():
    rep = run_verify(3, 1, seed=1, samples=2, classifier=broken_classifier)
    assert not rep.ok
    lines = rep.lines()
    assert lines[-1].startswith("FAIL")
    assert any(line.startswith("COUNTEREXAMPLE") and "inverse" in line for line in lines)


def test_run_verify_deterministic():
    a = run_verify(3, 2, seed=7, samples=5)
    b = run_verify(3, 2, seed=7, samples=5)
    assert a.to_dict() == b.to_dict()


def test_invariant_checks_on_examples():
    for D in (directed_cycle(4), fan(4), Digraph(4, [(1, 2), (2, 1), (3, 4)])):
        assert invariant_checks(D) == []


def test_invariant_checks_catch_wrong_inputs():
    D = Digraph(4, [(1, 2), (2, 1), (3, 4)])
    assert check_direct_product(D, size=len(generate(D)) + 1)
    S = generate(fan(3))
    # a fan is not strongly connected, so the constants check does not apply
    assert check_constants(fan(3), S) == []
    # the fan's semigroup lacks most constant maps, so pairing it with a cycle must fail
    assert check_constants(directed_cycle(3), S)
    assert check_terminal_image(fan(3), S) == []


def test_r_related_idempotents_on_cycle():
    D = directed_cycle(3)
    S = generate(D)
    assert check_r_related_idempotents(D, S, green_structure(S)) == []


def test_degree_bounds_flag_wrong_l():
    assert check_degree_bounds(star_graph(5), l=4) == []
    assert check_degree_bounds(star_graph(5), l=2)
    assert check_degree_bounds(path_graph(6)) == []


def test_minor_monotone_on_samples():
    rng = random.Random(5)
    for _ in range(10):
        G = random_connected_graph(rng.randint(3, 6), rng)
        assert check_minor_monotone(G, rng) == []


def test_l_sweep_detects_disagreement():
    graphs = [cycle_graph(5), path_graph(4), Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])]
    checked, bad = l_sweep(graphs, [1, 2, 3])
    assert checked == 9 and bad == []


def test_random_generators_seeded():
    a = random_digraph(5, random.Random(3))
    b = random_digraph(5, random.Random(3))
    assert a == b
    assert random_connected_graph(6, random.Random(3)) == random_connected_graph(6, random.Random(3))
