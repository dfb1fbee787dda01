"""Descending R-traversals, the two conversion algorithms, and fibers.

A traversal lists every vertex and every edge of the graph exactly once.
Items are written ``v<k>`` / ``e<k>``; edge numbers follow the graph's edge
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable, NamedTuple, Protocol, Sequence

from .errors import NotInFamily
from .graph import Graph, validate_roots
from .infinity import INF
from .multiparking import VertexFunction


class Item(NamedTuple):
    kind: str  # "v" or "e"
    index: int

    @property
    def is_vertex(self) -> bool:
        return self.kind == "v"

    @property
    def is_edge(self) -> bool:
        return self.kind == "e"

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


def V(k: int) -> Item:
    return Item("v", k)


def E(k: int) -> Item:
    return Item("e", k)


@dataclass(frozen=True)
class Traversal:
    items: tuple[Item, ...]

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __str__(self) -> str:
        return format_traversal(self)

    def vertex_order(self) -> tuple[int, ...]:
        return tuple(x.index for x in self.items if x.is_vertex)


def parse_traversal(text: str) -> Traversal:
    """Parse ``v1,e4,e1,v4`` style text (a ``_`` after the letter is allowed)."""
    items = []
    for tok in text.split(","):
        tok = tok.strip().lower().replace("_", "")
        if len(tok) < 2 or tok[0] not in "ve" or not tok[1:].isdigit():
            raise ValueError(f"bad traversal token {tok!r}")
        items.append(Item(tok[0], int(tok[1:])))
    return Traversal(tuple(items))


def format_traversal(t: Traversal | Sequence[Item]) -> str:
    return ",".join(str(x) for x in t)


def wellformed_problem(G: Graph, items: Sequence[Item]) -> str | None:
    expected = {V(v) for v in G.vertices} | {E(k) for k in G.edge_ids}
    seen = set()
    for pos, x in enumerate(items, start=1):
        if x not in expected:
            return f"position {pos}: {x} is not a vertex or edge of the graph"
        if x in seen:
            return f"position {pos}: {x} appears twice"
        seen.add(x)
    missing = expected - seen
    if missing:
        return f"missing {format_traversal(sorted(missing))}"
    return None


def frontier(G: Graph, prefix: Iterable[Item]) -> frozenset[int]:
    """Edges not in ``prefix`` that touch a vertex listed in ``prefix``.

    Only listed vertices count; a listed edge does not bring its endpoints
    along.
    """
    prefix = list(prefix)
    used = {x.index for x in prefix if x.is_edge}
    out = set()
    for x in prefix:
        if x.is_vertex:
            out.update(k for k in G.incident_edges(x.index) if k not in used)
    return frozenset(out)


class ChoiceFunction(Protocol):
    """Picks the next edge from ``W`` or, when ``W`` is empty, the next root.

    Never called with ``W`` empty once every root is already in the prefix.
    Must be deterministic.
    """

    name: str

    def __call__(self, G: Graph, R: AbstractSet[int], prefix: Sequence[Item], W: AbstractSet[int]) -> Item:
        ...


class StandardChoice:
    """Largest edge of ``W``; otherwise the smallest root not yet listed."""

    name = "std"

    def __call__(self, G, R, prefix, W):
        if W:
            return E(max(W))
        listed = {x.index for x in prefix if x.is_vertex}
        left = [r for r in R if r not in listed]
        if not left:
            raise ValueError("choice function called with empty W after all roots were listed")
        return V(min(left))

    def __repr__(self) -> str:
        return "StandardChoice()"


STD = StandardChoice()

CHOICE_FUNCTIONS = {"std": STD}


@dataclass(frozen=True)
class Violation:
    position: int  # 1-based; 0 for a malformed sequence
    condition: int  # 1 root, 2 vertex, 3 edge; 0 malformed
    message: str

    def __str__(self) -> str:
        if self.condition == 0:
            return f"malformed traversal: {self.message}"
        return f"condition {self.condition} fails at position {self.position}: {self.message}"


def validate_traversal(
    G: Graph, R: Iterable[int], traversal: Traversal | Sequence[Item], zeta: ChoiceFunction = STD
) -> Violation | None:
    """Return the first violated condition, or ``None`` if the sequence is a
    descending R-traversal.

    1. a root must be ``zeta(prefix, {})`` at its position, and position 1
       must hold a root;
    2. a non-root vertex must directly follow an edge incident to it;
    3. an edge must touch an earlier vertex and equal
       ``zeta(prefix, frontier(prefix))``.
    """
    roots = validate_roots(G, R)
    items = list(traversal)
    problem = wellformed_problem(G, items)
    if problem:
        return Violation(0, 0, problem)
    for pos, x in enumerate(items, start=1):
        prefix = items[: pos - 1]
        if x.is_vertex and x.index in roots:
            want = zeta(G, roots, prefix, frozenset())
            if want != x:
                return Violation(pos, 1, f"root {x} placed where the choice function gives {want}")
        elif x.is_vertex:
            if pos == 1:
                return Violation(1, 1, f"{x} is not a root but starts the traversal")
            prev = items[pos - 2]
            if not (prev.is_edge and x.index in G.edge(prev.index)):
                return Violation(pos, 2, f"{x} is preceded by {prev}, not by an incident edge")
        else:
            W = frontier(G, prefix)
            if x.index not in W:
                return Violation(pos, 3, f"{x} does not touch any earlier vertex")
            want = zeta(G, roots, prefix, W)
            if want != x:
                return Violation(pos, 3, f"{x} placed where the choice function gives {want}")
    return None


class InvalidTraversal(NotInFamily):
    pass


def psi(
    G: Graph, R: Iterable[int], traversal: Traversal, zeta: ChoiceFunction = STD
) -> VertexFunction:
    """Traversal to multiparking function: a non-root vertex gets one less
    than the number of its incident edges listed before it."""
    roots = validate_roots(G, R)
    bad = validate_traversal(G, roots, traversal, zeta)
    if bad is not None:
        raise InvalidTraversal(str(bad), bad)
    pos = {x: i for i, x in enumerate(traversal)}
    values = []
    for v in G.vertices:
        if v in roots:
            values.append(INF)
        else:
            here = pos[V(v)]
            values.append(sum(1 for k in G.incident_edges(v) if pos[E(k)] < here) - 1)
    return VertexFunction(tuple(values))


def phi(
    G: Graph, R: Iterable[int], f: VertexFunction, zeta: ChoiceFunction = STD
) -> Traversal:
    """Multiparking function to its canonical traversal.

    Append a vertex as soon as exactly ``f(v) + 1`` of its edges are listed;
    otherwise let ``zeta`` pick from the frontier (or the next root).
    """
    roots = validate_roots(G, R)
    if len(f) != G.n:
        raise ValueError(f"function has {len(f)} values but the graph has {G.n} vertices")
    if f.roots != roots:
        raise ValueError(f"function roots {sorted(f.roots)} differ from R = {sorted(roots)}")
    items: list[Item] = []
    listed_vertices: set[int] = set()
    listed_edges: set[int] = set()
    while len(items) < G.m:
        ready = [
            v
            for v in G.vertices
            if v not in listed_vertices
            and f[v] is not INF
            and sum(1 for k in G.incident_edges(v) if k in listed_edges) == f[v] + 1
        ]
        if len(ready) > 1:
            raise AssertionError(f"vertices {ready} became appendable simultaneously after {format_traversal(items)}")
        if ready:
            nxt = V(ready[0])
        else:
            W = frontier(G, items)
            if not W and roots <= listed_vertices:
                raise NotInFamily(
                    f"not a multiparking function: stuck after {format_traversal(items) or '()'}",
                    Traversal(tuple(items)),
                )
            nxt = zeta(G, roots, items, W)
        items.append(nxt)
        (listed_vertices if nxt.is_vertex else listed_edges).add(nxt.index)
    return Traversal(tuple(items))


def _extensions(G: Graph, roots: frozenset[int], zeta: ChoiceFunction, items: list[Item], used_v: set[int]):
    out = []
    if items:
        last = items[-1]
        if last.is_edge:
            for v in G.edge(last.index):
                if v not in used_v and v not in roots:
                    out.append(V(v))
        W = frontier(G, items)
        if W:
            out.append(zeta(G, roots, items, W))
    if not roots <= used_v:
        out.append(zeta(G, roots, items, frozenset()))
    return out


def enumerate_dt(G: Graph, R: Iterable[int], zeta: ChoiceFunction = STD) -> set[Traversal]:
    """All descending R-traversals, by backtracking over the allowed next items."""
    roots = validate_roots(G, R)
    result: set[Traversal] = set()
    items: list[Item] = []
    used_v: set[int] = set()

    def extend() -> None:
        if len(items) == G.m:
            result.add(Traversal(tuple(items)))
            return
        for x in _extensions(G, roots, zeta, items, used_v):
            items.append(x)
            if x.is_vertex:
                used_v.add(x.index)
            extend()
            if x.is_vertex:
                used_v.remove(x.index)
            items.pop()

    extend()
    return result


def fibers(G: Graph, R: Iterable[int], zeta: ChoiceFunction = STD) -> dict[VertexFunction, frozenset[Traversal]]:
    """Group every descending R-traversal by its image under :func:`psi`."""
    roots = validate_roots(G, R)
    groups: dict[VertexFunction, set[Traversal]] = {}
    for t in enumerate_dt(G, roots, zeta):
        groups.setdefault(psi(G, roots, t, zeta), set()).add(t)
    return {f: frozenset(ts) for f, ts in groups.items()}
