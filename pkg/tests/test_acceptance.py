"""Exit criteria. Each test records one PASS/FAIL line, shown in the
terminal summary under "acceptance criteria"."""

import time
from contextlib import contextmanager
from itertools import permutations, product

from multipark.dirichlet import (
    Configuration,
    FiringError,
    enumerate_dc,
    is_certificate,
    is_dirichlet,
    omega,
    omega_inv,
    replay_order,
)
from multipark.graph import components, gamma
from multipark.infinity import INF, NEG_INF
from multipark.multiparking import (
    VertexFunction,
    burning_sequence,
    enumerate_mp,
    is_mp_definition,
    poset_leq,
)
from multipark.oracle import (
    certificate_replay_agrees,
    classical_descending_traversals,
    configurations_up_to,
    dirichlet_by_search,
    graph_suite,
    greedy_outcomes,
    is_classical_descending,
    rooted_forest_count,
    stable_endpoints,
)
from multipark.traversal import STD, enumerate_dt, fibers, parse_traversal, phi, psi, validate_traversal

from conftest import ACCEPTANCE_LINES, EXAMPLE_TRAVERSALS, INCONSISTENT_EXAMPLE, PHI_TABLE, PSI_TABLE


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"FAIL  {number:>2}. {title} ({elapsed:.2f}s): {exc}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  {number:>2}. {title} ({elapsed:.2f}s)")


def test_01_psi_table():
    G = gamma()
    with criterion(1, "psi reproduces every row of the published table", limit=1.0):
        assert len(PSI_TABLE) == 13
        for s, f in PSI_TABLE:
            got = psi(G, {1, 4}, parse_traversal(s), STD)
            assert got == f, f"{s} -> {got}, expected {f}"


def test_02_phi_table():
    G = gamma()
    with criterion(2, "phi reproduces all 8 canonical traversals", limit=1.0):
        assert len(PHI_TABLE) == 8
        for f, s in PHI_TABLE:
            got = str(phi(G, {1, 4}, f, STD))
            assert got == s, f"{f} -> {got}, expected {s}"


def test_03_example_traversals():
    G = gamma()
    with criterion(3, "example traversals accepted; inconsistent one rejected at position 9 (condition 2)", limit=1.0):
        for R, s in EXAMPLE_TRAVERSALS:
            bad = validate_traversal(G, R, parse_traversal(s), STD)
            assert bad is None, f"{s} with R={sorted(R)}: {bad}"
        R, s = INCONSISTENT_EXAMPLE
        bad = validate_traversal(G, R, parse_traversal(s), STD)
        assert bad is not None and (bad.position, bad.condition) == (9, 2), bad


def test_04_bijection_suite():
    with criterion(4, "suite(4): |MP| = |DC| = fibers = forests; round trips; phi injective", limit=60.0):
        members = 0
        for G, R in graph_suite(4):
            members += 1
            mp = enumerate_mp(G, R)
            dc = enumerate_dc(G, R)
            fib = fibers(G, R, STD)
            forests = rooted_forest_count(G, R)
            assert len(mp) == len(dc) == len(fib) == forests, (G, R, len(mp), len(dc), len(fib), forests)
            assert {omega(G, f) for f in mp} == dc
            outs = set()
            for f in mp:
                assert omega_inv(G, omega(G, f)) == f
                t = phi(G, R, f, STD)
                assert psi(G, R, t, STD) == f
                outs.add(t)
            assert len(outs) == len(mp)
        assert members == 771


def test_05_certificate_iff_avalanche():
    with criterion(5, "certificate <=> self-returning firing order, all Dirichlet mu and all orders, n <= 4", limit=120.0):
        checked = 0
        for G, R in graph_suite(4):
            for mu in enumerate_dc(G, R):
                for order in permutations(G.vertices):
                    cert = is_certificate(G, mu, order)
                    try:
                        returns = replay_order(G, mu, order).final == mu
                    except FiringError:
                        returns = False
                    assert cert == returns == certificate_replay_agrees(G, mu, order), (G, mu, order)
                    checked += 1
        assert checked > 0


def test_06_burning_equals_definition():
    with criterion(6, "burning success = definition on suite(4); tie-break independent on suite(3)"):
        for G, R in graph_suite(4):
            # one step past the degree bound so failures are exercised too
            ranges = [(INF,) if v in R else range(G.degree(v) + 1) for v in G.vertices]
            for vals in product(*ranges):
                f = VertexFunction(vals)
                assert bool(burning_sequence(G, f)) == is_mp_definition(G, f), (G, f)
        for G, R in graph_suite(3):
            ranges = [(INF,) if v in R else range(G.degree(v) + 1) for v in G.vertices]
            for vals in product(*ranges):
                f = VertexFunction(vals)
                assert greedy_outcomes(G, f) == {is_mp_definition(G, f)}, (G, f)


def test_07_poset():
    with criterion(7, "f <= g iff omega(f) >= omega(g); MP closed downward, DC closed upward"):
        for G, R in graph_suite(4):
            mp = enumerate_mp(G, R)
            dc = enumerate_dc(G, R)
            for f in mp:
                for g in mp:
                    a, b = omega(G, f), omega(G, g)
                    flipped = all(x >= y for x, y in zip(a.chips, b.chips) if x is not NEG_INF)
                    assert poset_leq(f, g) == flipped
                below = [(INF,) if x is INF else range(x + 1) for x in f.values]
                for vals in product(*below):
                    assert VertexFunction(vals) in mp
            for mu in dc:
                above = [(NEG_INF,) if x is NEG_INF else range(x, G.degree(v)) for v, x in zip(G.vertices, mu.chips)]
                for chips in product(*above):
                    assert Configuration(chips) in dc


def test_08_confluence_and_recurrence():
    with criterion(8, "suite(3): every firing order reaches one stable config; is_dirichlet = recurrence search"):
        checked = 0
        for G, R in graph_suite(3):
            for mu in configurations_up_to(G, R, 2 * len(G.edges)):
                assert len(stable_endpoints(G, mu)) == 1, (G, mu)
                assert is_dirichlet(G, mu) == dirichlet_by_search(G, mu), (G, mu)
                checked += 1
        print(f"{checked} configurations")
        assert checked == 320  # sum of C(2|E| + k, k) over suite(3), k = non-roots


def test_09_counterexample_pair():
    G = gamma()
    with criterion(9, "valid pair whose first difference is vertex vs vertex"):
        a = parse_traversal("v1,e4,e1,v4,e5,e2,v2,e3,v3")
        b = parse_traversal("v1,e4,e1,v3,e5,v4,e3,e2,v2")
        assert validate_traversal(G, {1, 4}, a, STD) is None
        assert validate_traversal(G, {1, 4}, b, STD) is None
        k = next(i for i in range(len(a)) if a[i] != b[i])
        assert a[k].is_vertex and b[k].is_vertex


def test_10_classical_specialization():
    with criterion(10, "R = {1}: descending R-traversals = classical descending traversals"):
        graphs = 0
        for G, R in graph_suite(4):
            if R != {1} or len(components(G)) != 1:
                continue
            graphs += 1
            ours = {t.items for t in enumerate_dt(G, R, STD)}
            theirs = classical_descending_traversals(G, start=1)
            assert ours == theirs, G
            assert all(is_classical_descending(G, t) for t in ours)
        assert graphs == 44  # connected labelled graphs on 1..4 vertices: 1 + 1 + 4 + 38
