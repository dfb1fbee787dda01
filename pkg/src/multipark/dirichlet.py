"""Chip configurations, firing, stabilization and Dirichlet configurations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import NotInFamily
from .graph import Graph, validate_roots
from .infinity import INF, NEG_INF, is_infinite
from .multiparking import (
    BurningCertificate,
    VertexFunction,
    burning_sequence,
    mp_violation,
)


class FiringError(ValueError):
    """An attempted firing is not allowed by the firing rules."""


@dataclass(frozen=True)
class Configuration:
    """Chip counts indexed by vertex; ``chips[0]`` belongs to vertex 1.

    Roots hold ``NEG_INF``; every other vertex a non-negative int.
    """

    chips: tuple

    def __post_init__(self) -> None:
        for i, x in enumerate(self.chips, start=1):
            if is_infinite(x):
                if x is not NEG_INF:
                    raise ValueError(f"vertex {i}: only -inf is allowed, got {x!r}")
            elif not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise ValueError(f"vertex {i}: chip count must be a non-negative integer, got {x!r}")

    def __getitem__(self, v: int):
        return self.chips[v - 1]

    def __len__(self) -> int:
        return len(self.chips)

    @property
    def roots(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.chips, start=1) if x is NEG_INF)

    def total(self) -> int:
        """Chips held by non-root vertices."""
        return sum(x for x in self.chips if not is_infinite(x))

    def __add__(self, other: Sequence[int]) -> "Configuration":
        other = other.chips if isinstance(other, Configuration) else tuple(other)
        if len(other) != len(self.chips):
            raise ValueError("length mismatch")
        return Configuration(tuple(a + b for a, b in zip(self.chips, other)))

    def __str__(self) -> str:
        return format_configuration(self)

    @classmethod
    def of(cls, *chips) -> "Configuration":
        return cls(tuple(chips))


def parse_configuration(text: str) -> Configuration:
    """Parse ``-inf,1,1,-inf`` style text."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok.lower() in ("-inf", "-∞"):
            out.append(NEG_INF)
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise ValueError(f"bad configuration entry {tok!r}") from None
    return Configuration(tuple(out))


def format_configuration(mu: Configuration) -> str:
    return ",".join(str(x) for x in mu.chips)


@dataclass(frozen=True)
class Firing:
    """One avalanche step: ``vertices`` fired (a single vertex, or the whole
    root block when ``roots`` is set), producing ``result``."""

    vertices: tuple[int, ...]
    roots: bool
    result: Configuration


@dataclass(frozen=True)
class Avalanche:
    initial: Configuration
    steps: tuple[Firing, ...] = ()

    @property
    def final(self) -> Configuration:
        return self.steps[-1].result if self.steps else self.initial

    @property
    def configurations(self) -> tuple[Configuration, ...]:
        return (self.initial,) + tuple(s.result for s in self.steps)

    @property
    def firing_sequence(self) -> tuple[int, ...]:
        return tuple(v for s in self.steps for v in s.vertices)

    def to_dict(self) -> dict:
        return {
            "initial": str(self.initial),
            "steps": [
                {"fired": list(s.vertices), "root_block": s.roots, "configuration": str(s.result)}
                for s in self.steps
            ],
            "final": str(self.final),
        }


def _check(G: Graph, mu: Configuration) -> None:
    if len(mu) != G.n:
        raise ValueError(f"configuration has {len(mu)} entries but the graph has {G.n} vertices")


def chi(G: Graph, R: Iterable[int]) -> tuple[int, ...]:
    """Per-vertex number of edges into the root set (0 on roots)."""
    roots = validate_roots(G, R)
    return tuple(0 if v in roots else len(G.neighbors(v) & roots) for v in G.vertices)


def ready_vertices(G: Graph, mu: Configuration) -> frozenset[int]:
    _check(G, mu)
    return frozenset(v for v in G.vertices if mu[v] is not NEG_INF and mu[v] >= G.degree(v))


def classify(G: Graph, mu: Configuration) -> tuple[bool, frozenset[int]]:
    """Return ``(stable, ready set)``."""
    ready = ready_vertices(G, mu)
    return not ready, ready


def is_stable(G: Graph, mu: Configuration) -> bool:
    return not ready_vertices(G, mu)


def _send(G: Graph, chips: list, v: int) -> None:
    # roots absorb: NEG_INF + 1 is NEG_INF
    for w in G.neighbors(v):
        chips[w - 1] = chips[w - 1] + 1


def fire(G: Graph, mu: Configuration, v: int) -> Configuration:
    """Fire a ready non-root vertex."""
    _check(G, mu)
    if mu[v] is NEG_INF:
        raise FiringError(f"vertex {v} is a root; roots only fire as a block")
    if mu[v] < G.degree(v):
        raise FiringError(f"vertex {v} is not ready ({mu[v]} < deg {G.degree(v)})")
    chips = list(mu.chips)
    chips[v - 1] -= G.degree(v)
    _send(G, chips, v)
    return Configuration(tuple(chips))


def _fire_root(G: Graph, mu: Configuration, r: int) -> Configuration:
    chips = list(mu.chips)
    _send(G, chips, r)
    return Configuration(tuple(chips))


def fire_all_roots(G: Graph, mu: Configuration) -> Configuration:
    """Fire every root (ascending label) from a stable configuration: ``mu + chi``."""
    _check(G, mu)
    if not is_stable(G, mu):
        raise FiringError("roots may only fire from a stable configuration")
    for r in sorted(mu.roots):
        mu = _fire_root(G, mu, r)
    return mu


def stabilize(G: Graph, mu: Configuration) -> tuple[Configuration, Avalanche]:
    """Fire the smallest ready vertex until none is ready."""
    _check(G, mu)
    validate_roots(G, mu.roots)
    start = mu
    steps = []
    while True:
        ready = ready_vertices(G, mu)
        if not ready:
            break
        v = min(ready)
        mu = fire(G, mu, v)
        steps.append(Firing((v,), False, mu))
    return mu, Avalanche(start, tuple(steps))


def dirichlet_witness(G: Graph, mu: Configuration):
    """``None`` if ``mu`` is Dirichlet, otherwise a short reason.

    The reason is ``("unstable", ready_set)`` or ``("not-recurrent", reached)``
    where ``reached`` is what ``mu + chi`` stabilizes to.
    """
    _check(G, mu)
    roots = validate_roots(G, mu.roots)
    ready = ready_vertices(G, mu)
    if ready:
        return ("unstable", ready)
    reached, _ = stabilize(G, mu + chi(G, roots))
    if reached != mu:
        return ("not-recurrent", reached)
    return None


def is_dirichlet(G: Graph, mu: Configuration) -> bool:
    """Stable, and ``mu + chi`` stabilizes back to ``mu``."""
    return dirichlet_witness(G, mu) is None


def omega(G: Graph, f: VertexFunction) -> Configuration:
    """Map a multiparking function to its Dirichlet configuration ``deg - 1 - f``."""
    if len(f) != G.n:
        raise ValueError(f"function has {len(f)} values but the graph has {G.n} vertices")
    bad = mp_violation(G, f)
    if bad is not None:
        raise NotInFamily(f"not a multiparking function: {sorted(bad)} has no root or well-behaved vertex", bad)
    return Configuration(tuple(NEG_INF if f[v] is INF else G.degree(v) - 1 - f[v] for v in G.vertices))


def omega_inv(G: Graph, mu: Configuration) -> VertexFunction:
    witness = dirichlet_witness(G, mu)
    if witness is not None:
        raise NotInFamily(f"not a Dirichlet configuration ({witness[0]})", witness)
    return VertexFunction(tuple(INF if mu[v] is NEG_INF else G.degree(v) - 1 - mu[v] for v in G.vertices))


def _check_permutation(G: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(G.vertices):
        raise ValueError(f"{tuple(order)} is not a permutation of 1..{G.n}")


def is_certificate(G: Graph, mu: Configuration, order: Sequence[int]) -> bool:
    """Each non-root ``v`` at its turn has ``deg(v) > mu(v) >= in-degree``
    relative to the vertices not yet listed."""
    _check(G, mu)
    _check_permutation(G, order)
    U = set(G.vertices)
    for v in order:
        if mu[v] is not NEG_INF:
            if not G.degree(v) > mu[v] >= G.in_degree(U, v):
                return False
        U.remove(v)
    return True


def replay_order(G: Graph, mu: Configuration, order: Sequence[int]) -> Avalanche:
    """Fire each vertex of ``order`` once, in order, starting from ``mu``.

    A root fires whenever it comes up; a non-root must be ready at its
    turn, otherwise :class:`FiringError` is raised. Roots at the very start
    of ``order`` are recorded as a single root-block step.
    """
    _check(G, mu)
    _check_permutation(G, order)
    start = mu
    steps = []
    lead = 0
    while lead < len(order) and mu[order[lead]] is NEG_INF:
        lead += 1
    if lead:
        for r in order[:lead]:
            mu = _fire_root(G, mu, r)
        steps.append(Firing(tuple(order[:lead]), True, mu))
    for v in order[lead:]:
        if mu[v] is NEG_INF:
            mu = _fire_root(G, mu, v)
            steps.append(Firing((v,), True, mu))
        else:
            mu = fire(G, mu, v)
            steps.append(Firing((v,), False, mu))
    return Avalanche(start, tuple(steps))


def avalanche_from_certificate(G: Graph, mu: Configuration, order: Sequence[int]) -> Avalanche:
    if not is_certificate(G, mu, order):
        raise NotInFamily(f"{tuple(order)} is not a Dirichlet certificate for {mu}")
    try:
        av = replay_order(G, mu, order)
    except FiringError as exc:  # pragma: no cover - would contradict the certificate
        raise AssertionError(f"certificate {tuple(order)} failed to replay: {exc}") from exc
    if av.final != mu:  # pragma: no cover
        raise AssertionError(f"certificate {tuple(order)} replay ended at {av.final}, not {mu}")
    return av


def certificate_for(G: Graph, mu: Configuration) -> tuple[int, ...]:
    """A Dirichlet certificate for ``mu``, roots first.

    Built from the burning order of the matching multiparking function.
    Pulling the roots to the front only shrinks the in-degrees the
    non-roots are tested against, so the result is still a certificate,
    and its replay opens with the usual root block.
    """
    f = omega_inv(G, mu)
    cert = burning_sequence(G, f)
    assert isinstance(cert, BurningCertificate)
    order = cert.order
    return tuple(sorted(mu.roots)) + tuple(v for v in order if v not in mu.roots)


def enumerate_dc(G: Graph, R: Iterable[int]) -> set[Configuration]:
    roots = validate_roots(G, R)
    ranges = [(NEG_INF,) if v in roots else range(G.degree(v)) for v in G.vertices]
    return {mu for mu in (Configuration(c) for c in product(*ranges)) if is_dirichlet(G, mu)}
