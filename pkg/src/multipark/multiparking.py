"""G-multiparking functions: definition check, burning algorithm, enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .graph import Graph
from .infinity import INF, is_infinite

@dataclass(frozen=True)
class VertexFunction:
    """Values indexed by vertex; ``values[0]`` belongs to vertex 1.

    Each value is a non-negative int or ``INF``; the ``INF`` vertices are
    the roots.
    """

    values: tuple

    def __post_init__(self) -> None:
        for i, x in enumerate(self.values, start=1):
            if is_infinite(x):
                if x is not INF:
                    raise ValueError(f"vertex {i}: only +inf is allowed, got {x!r}")
            elif not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise ValueError(f"vertex {i}: value must be a non-negative integer or inf, got {x!r}")

    def __getitem__(self, v: int):
        return self.values[v - 1]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def roots(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.values, start=1) if x is INF)

    def __str__(self) -> str:
        return format_values(self)

    @classmethod
    def of(cls, *values) -> "VertexFunction":
        return cls(tuple(values))


def parse_values(text: str) -> VertexFunction:
    """Parse ``inf,1,1,inf`` style text."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok.lower() in ("inf", "∞"):
            out.append(INF)
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise ValueError(f"bad vertex-function entry {tok!r}") from None
    return VertexFunction(tuple(out))


def format_values(f: VertexFunction) -> str:
    return ",".join(str(x) for x in f.values)


def _check_domain(G: Graph, f: VertexFunction) -> None:
    if len(f) != G.n:
        raise ValueError(f"function has {len(f)} values but the graph has {G.n} vertices")


def is_well_behaved(G: Graph, f: VertexFunction, U, v: int) -> bool:
    x = f[v]
    return not is_infinite(x) and 0 <= x < G.out_degree(U, v)


def _has_root_or_well_behaved(G: Graph, f: VertexFunction, U) -> bool:
    return any(f[v] is INF or is_well_behaved(G, f, U, v) for v in U)


def is_mp_definition(G: Graph, f: VertexFunction) -> bool:
    """Check the definition directly over every nonempty vertex subset.

    Exponential in ``n``; this is the reference check the burning algorithm
    is tested against.
    """
    _check_domain(G, f)
    verts = list(G.vertices)
    for size in range(1, G.n + 1):
        for U in combinations(verts, size):
            if not _has_root_or_well_behaved(G, f, frozenset(U)):
                return False
    return True


def mp_violation(G: Graph, f: VertexFunction) -> frozenset[int] | None:
    """Smallest subset with neither a root nor a well-behaved vertex, if any."""
    _check_domain(G, f)
    verts = list(G.vertices)
    for size in range(1, G.n + 1):
        for U in combinations(verts, size):
            if not _has_root_or_well_behaved(G, f, frozenset(U)):
                return frozenset(U)
    return None


@dataclass(frozen=True)
class BurningStep:
    vertex: int
    root: bool
    # out-degree of the vertex in the set it was removed from (None for roots)
    out_degree: int | None


@dataclass(frozen=True)
class BurningCertificate:
    steps: tuple[BurningStep, ...]

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(s.vertex for s in self.steps)

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class BurningFailure:
    """The burning algorithm got stuck on ``remaining``.

    ``removed`` lists what was burnt before that point.
    """

    removed: tuple[int, ...]
    remaining: frozenset[int]

    def __bool__(self) -> bool:
        return False


Chooser = Callable[[Sequence[int]], int]


def burning_sequence(
    G: Graph, f: VertexFunction, choose: Chooser = min
) -> BurningCertificate | BurningFailure:
    """Greedy burning: repeatedly remove a root or a well-behaved vertex.

    ``choose`` picks among the eligible vertices (smallest label by
    default). The outcome does not depend on it. Returns a certificate if
    every vertex is removed, otherwise a :class:`BurningFailure` whose
    ``remaining`` set has neither a root nor a well-behaved vertex.
    """
    _check_domain(G, f)
    U = set(G.vertices)
    steps = []
    while U:
        frozen = frozenset(U)
        eligible = sorted(v for v in U if f[v] is INF or is_well_behaved(G, f, frozen, v))
        if not eligible:
            return BurningFailure(tuple(s.vertex for s in steps), frozen)
        v = choose(eligible)
        if v not in eligible:
            raise ValueError(f"chooser returned ineligible vertex {v}")
        if f[v] is INF:
            steps.append(BurningStep(v, True, None))
        else:
            steps.append(BurningStep(v, False, G.out_degree(frozen, v)))
        U.remove(v)
    return BurningCertificate(tuple(steps))


def is_multiparking(G: Graph, f: VertexFunction) -> bool:
    return isinstance(burning_sequence(G, f), BurningCertificate)


def candidate_functions(G: Graph, R: Iterable[int]) -> Iterable[VertexFunction]:
    """Every function that is ``INF`` exactly on ``R`` with ``0 <= f(v) < deg(v)``.

    A multiparking function must satisfy ``f(v) < deg(v)`` off the roots:
    for ``U = {v}`` the only way to pass is ``f(v) < out-degree = deg(v)``.
    So this grid contains every multiparking function with root set ``R``.
    """
    roots = frozenset(R)
    ranges = [(INF,) if v in roots else range(G.degree(v)) for v in G.vertices]
    for vals in product(*ranges):
        yield VertexFunction(tuple(vals))


def enumerate_mp(G: Graph, R: Iterable[int]) -> set[VertexFunction]:
    roots = frozenset(R)
    if not roots:
        return set()
    return {f for f in candidate_functions(G, roots) if is_multiparking(G, f)}


def poset_leq(f: VertexFunction, g: VertexFunction) -> bool:
    """Pointwise ``f <= g``; both functions must share their root set."""
    if len(f) != len(g):
        raise ValueError("functions are defined on different vertex sets")
    if f.roots != g.roots:
        raise ValueError(f"root sets differ: {sorted(f.roots)} vs {sorted(g.roots)}")
    return all(a <= b for a, b in zip(f.values, g.values))
