"""Exhaustive cross-checks on small graphs.

Everything here is deliberately independent of the fast paths it checks:
a Laplacian-minor determinant for the count, a plain state-space search
for recurrence and confluence, and a from-scratch validator for classical
descending traversals.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

from .dirichlet import (
    Configuration,
    avalanche_from_certificate,
    certificate_for,
    enumerate_dc,
    is_stable,
    omega,
    omega_inv,
    ready_vertices,
)
from .graph import Graph, RootSetError, build_graph, validate_roots
from .infinity import NEG_INF
from .multiparking import (
    BurningCertificate,
    VertexFunction,
    burning_sequence,
    enumerate_mp,
    is_mp_definition,
)
from .traversal import STD, ChoiceFunction, E, Item, V, fibers, phi, psi

log = logging.getLogger(__name__)

SUITE_MAX_N = 6


# -- counting -----------------------------------------------------------------


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def reduced_laplacian(G: Graph, R: Iterable[int]) -> list[list[int]]:
    roots = frozenset(R)
    keep = [v for v in G.vertices if v not in roots]
    return [[G.degree(u) if u == v else -int(G.is_adjacent(u, v)) for v in keep] for u in keep]


def rooted_forest_count(G: Graph, R: Iterable[int]) -> int:
    """Spanning forests with exactly one root of ``R`` per tree.

    Determinant of the Laplacian with the root rows and columns removed.
    """
    roots = validate_roots(G, R)
    return bareiss_det(reduced_laplacian(G, roots))


# -- the suite ----------------------------------------------------------------


def graph_suite(n_max: int) -> Iterator[tuple[Graph, frozenset[int]]]:
    """Every labelled simple graph on 1..n_max vertices with every valid root set.

    Edges of each graph are ordered lexicographically. Root sets come in
    order of size, then lexicographically.
    """
    if n_max > SUITE_MAX_N:
        raise ValueError(f"n_max = {n_max} exceeds the practical bound {SUITE_MAX_N}")
    for n in range(1, n_max + 1):
        pairs = list(combinations(range(1, n + 1), 2))
        for mask in range(1 << len(pairs)):
            G = build_graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            for size in range(1, n + 1):
                for R in combinations(G.vertices, size):
                    try:
                        roots = validate_roots(G, R)
                    except RootSetError:
                        continue
                    yield G, roots


def graph_id(G: Graph) -> str:
    return f"n={G.n} E=[" + " ".join(f"{u}-{v}" for u, v in G.edges) + "]"


@dataclass
class CrossCheckReport:
    graph: str
    roots: tuple[int, ...]
    counts: dict[str, int] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    counterexamples: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and len(set(self.counts.values())) == 1

    def fail(self, check: str, detail: str) -> None:
        self.checks[check] = False
        if len(self.counterexamples) < 20:
            self.counterexamples.append(f"{check}: {detail}")

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "roots": list(self.roots),
            "counts": dict(self.counts),
            "checks": dict(self.checks),
            "passed": self.passed,
            "counterexamples": list(self.counterexamples),
        }

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        counts = " ".join(f"{k}={v}" for k, v in self.counts.items())
        lines = [f"{status} {self.graph} R={{{','.join(map(str, self.roots))}}} {counts}"]
        lines += [f"    {c}" for c in self.counterexamples]
        return "\n".join(lines)


def cross_check(G: Graph, R: Iterable[int], zeta: ChoiceFunction = STD) -> CrossCheckReport:
    """Compute all four counts for ``(G, R)`` and check every round trip."""
    roots = validate_roots(G, R)
    rep = CrossCheckReport(graph_id(G), tuple(sorted(roots)))
    mp = enumerate_mp(G, roots)
    dc = enumerate_dc(G, roots)
    fib = fibers(G, roots, zeta)
    rep.counts = {"mp": len(mp), "dc": len(dc), "fibers": len(fib), "forests": rooted_forest_count(G, roots)}
    for name in ("mp_definition", "omega_roundtrip", "omega_onto", "psi_phi", "phi_in_fiber",
                 "phi_injective", "fiber_keys", "certificate_replay"):
        rep.checks[name] = True

    for f in mp:
        if not is_mp_definition(G, f):
            rep.fail("mp_definition", f"{f} passes burning but not the definition")

    images = set()
    for f in mp:
        mu = omega(G, f)
        images.add(mu)
        if omega_inv(G, mu) != f:
            rep.fail("omega_roundtrip", f"{f} -> {mu} -> {omega_inv(G, mu)}")
    if images != dc:
        rep.fail("omega_onto", f"omega image differs from DC by {len(images ^ dc)} configurations")

    outputs = {}
    for f in mp:
        t = phi(G, roots, f, zeta)
        back = psi(G, roots, t, zeta)
        if back != f:
            rep.fail("psi_phi", f"{f} -> {t} -> {back}")
        if t not in fib.get(f, ()):
            rep.fail("phi_in_fiber", f"phi({f}) = {t} not in its fiber")
        if t in outputs:
            rep.fail("phi_injective", f"phi({f}) = phi({outputs[t]}) = {t}")
        outputs[t] = f
    if set(fib) != mp:
        rep.fail("fiber_keys", f"fiber keys differ from MP by {len(set(fib) ^ mp)} functions")

    for mu in dc:
        order = certificate_for(G, mu)
        if avalanche_from_certificate(G, mu, order).final != mu:
            rep.fail("certificate_replay", f"{mu} with {order}")
    return rep


def _check_one(args) -> CrossCheckReport:
    G, R, zeta = args
    return cross_check(G, R, zeta)


def run_suite(n_max: int, zeta: ChoiceFunction = STD, jobs: int = 1) -> list[CrossCheckReport]:
    members = [(G, R, zeta) for G, R in graph_suite(n_max)]
    log.info("cross-checking %d suite members (n <= %d)", len(members), n_max)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_check_one, members, chunksize=8))
    return [_check_one(m) for m in members]


# -- multiparking oracles ------------------------------------------------------


def greedy_outcomes(G: Graph, f: VertexFunction) -> set[bool]:
    """Success/failure of the burning algorithm over every tie-break order.

    Each permutation is used as a priority list; every greedy run arises
    from at least one of them.
    """
    outcomes = set()
    for prio in permutations(G.vertices):
        rank = {v: i for i, v in enumerate(prio)}
        res = burning_sequence(G, f, choose=lambda eligible: min(eligible, key=rank.__getitem__))
        outcomes.add(isinstance(res, BurningCertificate))
    return outcomes


# -- chip-firing oracles -------------------------------------------------------


def _fire_any(G: Graph, chips: tuple, v: int) -> tuple:
    out = list(chips)
    if out[v - 1] is not NEG_INF:
        out[v - 1] -= G.degree(v)
    for w in G.neighbors(v):
        out[w - 1] = out[w - 1] + 1
    return tuple(out)


def _reachable(G: Graph, start: tuple) -> set[tuple]:
    """Every configuration reachable from ``start`` by firing ready non-roots."""
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for v in G.vertices:
            if c[v - 1] is not NEG_INF and c[v - 1] >= G.degree(v):
                nxt = _fire_any(G, c, v)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def recurrent_by_search(G: Graph, mu: Configuration) -> bool:
    """Is there a nonempty avalanche that begins and ends at ``mu``?

    From a stable start the roots fire first (once each); after that only
    ready non-roots fire. Chip totals never grow after the root block, so
    the search space is finite.
    """
    start = mu.chips
    if is_stable(G, mu):
        for r in sorted(mu.roots):
            start = _fire_any(G, start, r)
        return mu.chips in _reachable(G, start)
    # unstable start: some firing is required before coming back
    firsts = [_fire_any(G, start, v) for v in ready_vertices(G, mu)]
    return any(mu.chips in _reachable(G, c) for c in firsts)


def dirichlet_by_search(G: Graph, mu: Configuration) -> bool:
    return is_stable(G, mu) and recurrent_by_search(G, mu)


def stable_endpoints(G: Graph, mu: Configuration) -> set[Configuration]:
    """Stable configurations reached by all maximal firing orders from ``mu``."""
    ends = set()
    for c in _reachable(G, mu.chips):
        if all(x is NEG_INF or x < G.degree(v) for v, x in zip(G.vertices, c)):
            ends.add(Configuration(c))
    return ends


def configurations_up_to(G: Graph, R: Iterable[int], total: int) -> Iterator[Configuration]:
    """Every configuration with root set ``R`` holding at most ``total`` chips."""
    roots = frozenset(R)
    free = [v for v in G.vertices if v not in roots]
    for vals in product(range(total + 1), repeat=len(free)):
        if sum(vals) > total:
            continue
        chips = [NEG_INF] * G.n
        for v, x in zip(free, vals):
            chips[v - 1] = x
        yield Configuration(tuple(chips))


def certificate_replay_agrees(G: Graph, mu: Configuration, order: Sequence[int]) -> bool:
    """Fire ``order`` from ``mu`` by hand; True if every non-root was ready
    at its turn and the walk ends at ``mu``."""
    c = mu.chips
    for v in order:
        if c[v - 1] is not NEG_INF and c[v - 1] < G.degree(v):
            return False
        c = _fire_any(G, c, v)
    return c == mu.chips


# -- classical descending traversals ------------------------------------------


def _classical_ok_at(G: Graph, items: Sequence[Item], i: int, start: int | None) -> bool:
    """The three original conditions, checked at index ``i`` (0-based)."""
    x = items[i]
    if i == 0:
        return x.kind == "v" and (start is None or x.index == start)
    if x.kind == "v":
        prev = items[i - 1]
        return prev.kind == "e" and x.index in G.edges[prev.index - 1]
    earlier_vertices = {y.index for y in items[:i] if y.kind == "v"}
    u, w = G.edges[x.index - 1]
    if u not in earlier_vertices and w not in earlier_vertices:
        return False
    listed = {y for y in items[:i]}
    for k in range(1, len(G.edges) + 1):
        if E(k) in listed or k <= x.index:
            continue
        a, b = G.edges[k - 1]
        if a in earlier_vertices or b in earlier_vertices:
            return False
    return True


def is_classical_descending(G: Graph, items: Sequence[Item], start: int | None = 1) -> bool:
    """Original descending-traversal conditions, with the first vertex pinned
    to ``start`` (pass ``None`` to allow any first vertex)."""
    items = list(items)
    universe = {V(v) for v in G.vertices} | {E(k) for k in range(1, len(G.edges) + 1)}
    if len(items) != len(universe) or set(items) != universe:
        return False
    return all(_classical_ok_at(G, items, i, start) for i in range(len(items)))


def classical_descending_traversals(G: Graph, start: int | None = 1) -> set[tuple[Item, ...]]:
    """Grow sequences one arbitrary unused item at a time, pruning any
    prefix that already breaks a condition."""
    universe = [V(v) for v in G.vertices] + [E(k) for k in range(1, len(G.edges) + 1)]
    found: set[tuple[Item, ...]] = set()
    items: list[Item] = []

    def grow() -> None:
        if len(items) == len(universe):
            found.add(tuple(items))
            return
        for x in universe:
            if x in items:
                continue
            items.append(x)
            if _classical_ok_at(G, items, len(items) - 1, start):
                grow()
            items.pop()

    grow()
    return found

