"""Simple loopless graphs with a totally ordered edge set.

Vertices are labelled ``1..n``. Edges are numbered ``1..|E|`` in the order
they were given; that numbering is the edge order used by choice functions
(a later edge is a larger edge).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import AbstractSet, Iterable, Sequence


class GraphError(ValueError):
    """Raised when an edge list violates the simple-graph invariants."""


class RootSetError(ValueError):
    """Raised for an empty root set or a component that contains no root."""

    def __init__(self, message: str, component: frozenset[int] | None = None):
        super().__init__(message)
        self.component = component


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        seen: set[frozenset[int]] = set()
        for k, (u, v) in enumerate(self.edges, start=1):
            for x in (u, v):
                if not 1 <= x <= self.n:
                    raise GraphError(f"edge e{k} = {{{u},{v}}}: vertex {x} out of range 1..{self.n}")
            if u == v:
                raise GraphError(f"edge e{k} = {{{u},{v}}} is a loop")
            key = frozenset((u, v))
            if key in seen:
                raise GraphError(f"edge e{k} = {{{u},{v}}} duplicates an earlier edge")
            seen.add(key)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def edge_ids(self) -> range:
        return range(1, len(self.edges) + 1)

    @property
    def m(self) -> int:
        """Length of a traversal: number of vertices plus number of edges."""
        return self.n + len(self.edges)

    def edge(self, k: int) -> tuple[int, int]:
        return self.edges[k - 1]

    @cached_property
    def _incidence(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for k, (u, v) in enumerate(self.edges, start=1):
            inc[u].append(k)
            inc[v].append(k)
        return {v: tuple(ks) for v, ks in inc.items()}

    @cached_property
    def _neighbors(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return self._incidence[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._neighbors[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def is_adjacent(self, u: int, v: int) -> bool:
        return v in self._neighbors[u]

    def out_degree(self, U: AbstractSet[int], v: int) -> int:
        """Number of neighbours of ``v`` lying outside ``U``."""
        return sum(1 for w in self._neighbors[v] if w not in U)

    def in_degree(self, U: AbstractSet[int], v: int) -> int:
        """Number of neighbours of ``v`` lying inside ``U``."""
        return sum(1 for w in self._neighbors[v] if w in U)

    def __str__(self) -> str:
        return format_graph(self)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Validate and freeze an edge list; list order becomes the edge order."""
    edges = []
    for pair in edge_list:
        if len(pair) != 2:
            raise GraphError(f"edge {tuple(pair)!r} does not have two endpoints")
        u, v = pair
        edges.append((int(u), int(v)))
    return Graph(int(n), tuple(edges))


def degree_stats(G: Graph, U: AbstractSet[int], v: int) -> tuple[int, int, int]:
    """Return ``(deg, out, in)`` of ``v`` relative to the vertex set ``U``."""
    if v not in U:
        raise ValueError(f"vertex {v} is not in U")
    return G.degree(v), G.out_degree(U, v), G.in_degree(U, v)


def components(G: Graph) -> list[frozenset[int]]:
    """Connected components, ordered by smallest vertex."""
    seen: set[int] = set()
    parts = []
    for start in G.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in G.neighbors(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        parts.append(frozenset(comp))
    return parts


def validate_roots(G: Graph, R: Iterable[int]) -> frozenset[int]:
    """Check that ``R`` is nonempty and meets every component.

    Returns ``R`` as a frozenset. Raises :class:`RootSetError` naming the
    first rootless component otherwise.
    """
    roots = frozenset(R)
    if not roots:
        raise RootSetError("root set is empty")
    bad = [r for r in roots if not 1 <= r <= G.n]
    if bad:
        raise RootSetError(f"root {min(bad)} is not a vertex of the graph")
    for comp in components(G):
        if not comp & roots:
            raise RootSetError(f"component {sorted(comp)} contains no root", comp)
    return roots


def parse_graph(text: str) -> Graph:
    """Parse the line format ``n <count>`` followed by ``e <u> <v>`` lines.

    Blank lines and ``#`` comments are ignored.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "n" and len(parts) == 2:
                if n is not None:
                    raise GraphError(f"line {lineno}: vertex count given twice")
                n = int(parts[1])
            elif parts[0] == "e" and len(parts) == 3:
                if n is None:
                    raise GraphError(f"line {lineno}: edge before vertex count")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: bad integer in {raw.strip()!r}") from exc
    if n is None:
        raise GraphError("missing 'n <count>' line")
    return build_graph(n, edges)


def format_graph(G: Graph) -> str:
    lines = [f"n {G.n}"] + [f"e {u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def gamma() -> Graph:
    """The four-vertex, five-edge example graph used throughout the tests.

    e1={1,3}, e2={2,4}, e3={2,3}, e4={1,2}, e5={3,4}.
    """
    return build_graph(4, [(1, 3), (2, 4), (2, 3), (1, 2), (3, 4)])


def path2() -> Graph:
    return build_graph(2, [(1, 2)])


def k3() -> Graph:
    return build_graph(3, [(1, 2), (1, 3), (2, 3)])
