import itertools
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arcsemi.digraph import Digraph, closure, strong_components
from arcsemi.families import (
    CONGRUENCE_FREE,
    ZERO_SIMPLE,
    bull,
    complete_bipartite,
    cycle_graph,
    directed_cycle,
    e_graph,
    fan,
    theta0,
)
from arcsemi.oracle import (
    ElementCapExceeded,
    Transformation,
    arc_transform,
    compose,
    default_cap,
    generate,
    green_structure,
    invariants_of,
    is_congruence_free,
    l_brute,
    l_of_table,
    longest_cycle,
    probe,
)

from strategies import digraphs


def naive_closure(D):
    """Every product of generators, by repeated right multiplication on tuples."""
    n = D.n
    gens = [arc_transform(a, b, n).images for a, b in D.sorted_arcs()]
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[v - 1] for v in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def naive_longest_cycle(images):
    best = 1
    for start in range(1, len(images) + 1):
        v, k = images[start - 1], 1
        while v != start and k <= len(images):
            v, k = images[v - 1], k + 1
        if v == start:
            best = max(best, k)
    return best


# -- transformations ---------------------------------------------------------------------


def test_arc_transform_and_compose():
    assert arc_transform(1, 2, 3).images == (2, 2, 3)
    assert compose(arc_transform(1, 2, 3), arc_transform(2, 3, 3)).images == (3, 3, 3)
    alpha = Transformation((2, 2, 3))
    beta = Transformation((1, 2, 3))
    assert compose(alpha, beta) == alpha


def test_arc_transform_rejects_bad_input():
    with pytest.raises(ValueError):
        arc_transform(1, 1, 3)
    with pytest.raises(ValueError):
        arc_transform(1, 4, 3)


def test_invariants():
    image, kernel, rank = invariants_of(arc_transform(1, 2, 3))
    assert image == {2, 3} and kernel == ((1, 2), (3,)) and rank == 2
    assert invariants_of(Transformation.constant(4, 2))[2] == 1
    image, _, rank = invariants_of(Transformation((3, 3, 3)))
    assert image == {3} and rank == 1


def test_longest_cycle_examples():
    assert longest_cycle(arc_transform(1, 2, 3)) == 1
    assert longest_cycle(Transformation((2, 3, 1))) == 3
    n = 4
    word = [(3, 4), (2, 3), (1, 2), (4, 1)]
    alpha = Transformation.identity(n)
    for a, b in word:
        alpha = alpha * arc_transform(a, b, n)
    assert longest_cycle(alpha) == 3
    assert alpha(1) == 2 and alpha(2) == 3 and alpha(3) == 1


def test_parse_and_str():
    t = Transformation.parse("[2, 2, 3]")
    assert t == arc_transform(1, 2, 3) and str(t) == "[2, 2, 3]"
    with pytest.raises(ValueError):
        Transformation.parse("2 2 3")
    with pytest.raises(ValueError):
        Transformation((1, 4, 2))


@given(st.integers(1, 7).flatmap(lambda n: st.lists(st.integers(1, n), min_size=n, max_size=n)))
def test_longest_cycle_matches_naive(images):
    assert longest_cycle(Transformation(tuple(images))) == naive_longest_cycle(images)


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(1, n), min_size=n, max_size=n), min_size=3, max_size=3)))
def test_compose_associative(maps):
    a, b, c = (Transformation(tuple(m)) for m in maps)
    assert (a * b) * c == a * (b * c)
    # rank never increases under composition
    assert invariants_of(a * b)[2] <= min(invariants_of(a)[2], invariants_of(b)[2])


# -- enumeration -----------------------------------------------------------------------


def test_generate_examples():
    assert len(generate(Digraph(3, [(1, 3), (2, 3)]))) == 3
    assert len(generate(directed_cycle(3))) == 3 ** 3 - factorial(3)
    assert len(generate(Digraph(2, [(1, 2)]))) == 1


def test_generate_rejects_empty_and_large():
    with pytest.raises(ValueError):
        generate(Digraph(3))
    with pytest.raises(ValueError):
        generate(directed_cycle(16))


@given(digraphs(max_n=5, min_arcs=1))
def test_generate_matches_naive_closure(D):
    S = generate(D)
    assert {S.element(i).images for i in range(len(S))} == naive_closure(D)


@given(digraphs(max_n=4, min_arcs=1))
def test_generate_closure_gives_same_semigroup(D):
    S, T = generate(D), generate(closure(D))
    assert {S.element(i) for i in range(len(S))} == {T.element(i) for i in range(len(T))}


@given(digraphs(max_n=4, min_arcs=1), st.data())
def test_table_products_and_words(D, data):
    S = generate(D)
    i = data.draw(st.integers(0, len(S) - 1))
    j = data.draw(st.integers(0, len(S) - 1))
    assert S.element(S.multiply(i, j)) == S.element(i) * S.element(j)
    assert S.evaluate(S.word(i)) == S.element(i)
    assert S.index_of(S.element(i)) == i


@given(digraphs(max_n=5, min_arcs=1))
def test_generators_are_idempotent(D):
    S = generate(D)
    idem = set(S.idempotents())
    for a, b in D.arcs:
        assert S.index_of(arc_transform(a, b, D.n)) in idem


def test_cap_exceeded_and_resume():
    D = directed_cycle(5)
    with pytest.raises(ElementCapExceeded) as err:
        generate(D, cap=100)
    assert err.value.count >= 100
    S = generate(D, cap=10 ** 6, resume=err.value.state)
    assert len(S) == len(generate(D))


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("ARCSEMI_ELEMENT_CAP", "50")
    assert default_cap() == 50
    with pytest.raises(ElementCapExceeded):
        generate(directed_cycle(4))
    monkeypatch.setenv("ARCSEMI_ELEMENT_CAP", "nope")
    with pytest.raises(ValueError):
        default_cap()


def test_export_lines():
    S = generate(Digraph(3, [(1, 3), (2, 3)]))
    lines = list(S.export_lines())
    assert len(lines) == 3
    assert all(line.count("\t") == 2 for line in lines)


# -- Green's relations and probes -------------------------------------------------------


def naive_r_classes(S):
    """R-classes by comparing principal right ideals xS^1 directly."""
    m = len(S)
    ideals = [frozenset([i] + [S.multiply(i, j) for j in range(m)]) for i in range(m)]
    groups = {}
    for i in range(m):
        groups.setdefault(ideals[i], []).append(i)
    return sorted(tuple(sorted(v)) for v in groups.values())


def naive_l_classes(S):
    m = len(S)
    ideals = [frozenset([i] + [S.multiply(j, i) for j in range(m)]) for i in range(m)]
    groups = {}
    for i in range(m):
        groups.setdefault(ideals[i], []).append(i)
    return sorted(tuple(sorted(v)) for v in groups.values())


@settings(max_examples=25)
@given(digraphs(max_n=4, min_arcs=1))
def test_green_matches_principal_ideals(D):
    S = generate(D)
    g = green_structure(S)
    assert sorted(tuple(sorted(c)) for c in g.classes("R")) == naive_r_classes(S)
    assert sorted(tuple(sorted(c)) for c in g.classes("L")) == naive_l_classes(S)


def test_green_examples():
    g = green_structure(generate(fan(3)))
    assert g.count("J") == 3 and g.is_trivial("J")
    S = generate(Digraph(2, [(1, 2), (2, 1)]))
    g = green_structure(S)
    assert g.count("R") == 1 and g.count("L") == 2
    i = S.index_of(arc_transform(1, 2, 2))
    j = S.index_of(arc_transform(2, 1, 2))
    assert g.related("R", i, j)


def test_probe_examples():
    r = probe(generate(fan(4)))
    assert r.semilattice and r.inverse and r.commutative
    assert r.zero == str(Transformation.constant(4, 4))
    assert probe(generate(Digraph(3, [(1, 2), (1, 3)]))).left_zero_semigroup
    assert probe(generate(ZERO_SIMPLE[0])).zero_simple


def naive_is_semilattice(S):
    m = len(S)
    return all(S.multiply(i, i) == i for i in range(m)) and all(
        S.multiply(i, j) == S.multiply(j, i) for i in range(m) for j in range(m))


@given(digraphs(max_n=4, min_arcs=1))
def test_probe_band_and_commutative_direct(D):
    S = generate(D)
    r = probe(S, congruence=False)
    m = len(S)
    assert r.band == all(S.multiply(i, i) == i for i in range(m))
    assert r.commutative == all(S.multiply(i, j) == S.multiply(j, i) for i in range(m) for j in range(m))
    assert r.semilattice == naive_is_semilattice(S)


def naive_congruence_free(S):
    """Try every equivalence generated by one pair; universal or trivial means congruence-free."""
    m = len(S)
    if m <= 2:
        return True
    for a, b in itertools.combinations(range(m), 2):
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parent[find(a)] = find(b)
        changed = True
        while changed:
            changed = False
            for x in range(m):
                for y in range(m):
                    if find(x) != find(y):
                        continue
                    for z in range(m):
                        for u, v in ((S.multiply(x, z), S.multiply(y, z)), (S.multiply(z, x), S.multiply(z, y))):
                            if find(u) != find(v):
                                parent[find(u)] = find(v)
                                changed = True
        if len({find(x) for x in range(m)}) > 1:
            return False
    return True


def test_congruence_free_examples():
    assert is_congruence_free(generate(Digraph(2, [(1, 2)])))
    assert is_congruence_free(generate(Digraph(2, [(1, 2), (2, 1)])))
    assert is_congruence_free(generate(CONGRUENCE_FREE[-1]))
    assert not is_congruence_free(generate(fan(4)))


@pytest.mark.parametrize("arcs", [
    [(1, 2), (2, 1)], [(1, 3), (2, 3)], [(2, 1), (2, 3)], [(2, 3), (3, 2), (3, 1)], [(1, 2), (2, 3)],
])
def test_congruence_free_matches_naive(arcs):
    S = generate(Digraph(3, arcs))
    assert is_congruence_free(S) == naive_congruence_free(S)


# -- l by enumeration --------------------------------------------------------------------


def test_l_brute_examples():
    assert l_brute(cycle_graph(5)) == 4
    assert l_brute(bull()) == 3
    assert l_brute(e_graph()) == 3
    assert l_brute(complete_bipartite(2, 3)) == 3


@pytest.mark.slow
def test_l_brute_theta0():
    assert l_brute(theta0()) == 6


@given(digraphs(max_n=5, min_arcs=1))
def test_l_brute_matches_table(D):
    S = generate(D)
    expected = max(naive_longest_cycle(S.element(i).images) for i in range(len(S)))
    assert l_of_table(S) == expected
    assert l_brute(D) == expected


@given(digraphs(max_n=5, min_arcs=1), st.integers(1, 4))
def test_l_brute_threshold(D, k):
    full = l_brute(D)
    early = l_brute(D, stop_at=k + 1)
    assert (early <= k) == (full <= k)
    if full <= k:
        assert early == full
    assert early <= full


def test_vectorised_cycles_agree():
    from arcsemi.oracle.transformation import longest_cycles, ranks
    rng = np.random.default_rng(3)
    rows = rng.integers(0, 7, size=(200, 7)).astype(np.int8)
    expected = [naive_longest_cycle([int(x) + 1 for x in r]) for r in rows]
    assert longest_cycles(rows).tolist() == expected
    assert ranks(rows).tolist() == [len(set(r.tolist())) for r in rows]


def test_strong_component_reverse_arcs_present():
    D = directed_cycle(4)
    S = generate(D)
    for a, b in D.arcs:
        assert arc_transform(b, a, 4) in S
    assert len(strong_components(D)) == 1
