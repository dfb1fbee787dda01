from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from multipark.graph import build_graph, components, gamma
from multipark.oracle import (
    bareiss_det,
    classical_descending_traversals,
    cross_check,
    graph_suite,
    greedy_outcomes,
    is_classical_descending,
    rooted_forest_count,
    run_suite,
)
from multipark.traversal import enumerate_dt, parse_traversal

from conftest import vf
from strategies import graph_and_roots


def leibniz_det(M):
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


def brute_forest_count(g, R):
    # edge subsets of size n - |R| that are acyclic with one root per tree
    n, k = g.n, len(R)
    count = 0
    for subset in combinations(g.edges, n - k):
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for u, v in subset:
            a, b = find(u), find(v)
            if a == b:
                acyclic = False
                break
            parent[a] = b
        if not acyclic:
            continue
        if len({find(r) for r in R}) == k:
            count += 1
    return count


@given(st.integers(0, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(M):
    assert bareiss_det(M) == leibniz_det(M)


def test_bareiss_pivoting():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [0, 1]]) == 0
    assert bareiss_det([]) == 1
    with pytest.raises(ValueError):
        bareiss_det([[1, 2]])


def test_forest_count_examples(G, P2):
    assert rooted_forest_count(G, {1, 4}) == 8
    assert rooted_forest_count(G, {1}) == 8
    assert rooted_forest_count(P2, {1}) == 1


@settings(max_examples=100)
@given(graph_and_roots(5))
def test_forest_count_matches_brute_force(gr):
    g, R = gr
    assert rooted_forest_count(g, R) == brute_forest_count(g, R)


@settings(max_examples=100)
@given(graph_and_roots(6))
def test_forest_count_multiplicative(gr):
    g, R = gr
    product = 1
    for comp in components(g):
        labels = sorted(comp)
        relabel = {v: i for i, v in enumerate(labels, start=1)}
        sub = build_graph(len(labels), [(relabel[u], relabel[v]) for u, v in g.edges if u in comp])
        product *= rooted_forest_count(sub, {relabel[r] for r in R if r in comp})
    assert rooted_forest_count(g, R) == product


def test_graph_suite_small():
    one = list(graph_suite(1))
    assert [(g.n, g.edges, R) for g, R in one] == [(1, (), {1})]
    two = [(g.n, g.edges, R) for g, R in graph_suite(2)]
    assert two == [
        (1, (), {1}),
        (2, (), {1, 2}),
        (2, ((1, 2),), {1}),
        (2, ((1, 2),), {2}),
        (2, ((1, 2),), {1, 2}),
    ]
    three = {g.edges for g, _ in graph_suite(3) if g.n == 3}
    assert len(three) == 8
    with pytest.raises(ValueError):
        next(graph_suite(7))


def test_graph_suite_is_deterministic():
    assert list(graph_suite(3)) == list(graph_suite(3))


@pytest.mark.parametrize(
    "g, R, count",
    [(gamma(), {1, 4}, 8), (build_graph(3, [(1, 2), (1, 3), (2, 3)]), {1}, 3), (build_graph(2, [(1, 2)]), {1}, 1)],
)
def test_cross_check_examples(g, R, count):
    rep = cross_check(g, R)
    assert rep.passed, str(rep)
    assert set(rep.counts.values()) == {count}
    d = rep.to_dict()
    assert d["passed"] and d["roots"] == sorted(R)


def test_greedy_outcomes(G):
    assert greedy_outcomes(G, vf(None, 1, 1, None)) == {True}
    assert greedy_outcomes(G, vf(None, 2, 2, None)) == {False}


def test_classical_validator(G):
    assert is_classical_descending(G, parse_traversal("v1,e4,v2,e3,e2,v4,e5,v3,e1").items)
    assert not is_classical_descending(G, parse_traversal("v1,e1,v3,e5,e3,v2,e4,e2,v4").items)
    # the first vertex is pinned unless start=None
    t = parse_traversal("v2,e4,v1,e3,v3,e5,v4,e2,e1").items
    assert not is_classical_descending(G, t)
    assert is_classical_descending(G, t, start=None)


def test_classical_matches_enumeration_on_example(G):
    assert classical_descending_traversals(G) == {t.items for t in enumerate_dt(G, {1})}


@pytest.mark.slow
def test_suite_five():
    bad = [r for r in run_suite(5) if not r.passed]
    assert not bad, "\n".join(map(str, bad[:5]))
