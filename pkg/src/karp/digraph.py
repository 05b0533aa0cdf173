"""Small directed graphs on vertices 1..n, with optional rational weights.

``strong_power`` is the walk relation: ``(u, v)`` is an edge of
``G**(b)`` iff G has a walk of length exactly b from u to v.  For a
nonnegative matrix A this matches the support of A**b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .farey import mod_index


class BudgetError(RuntimeError):
    """An exhaustive operation was asked to exceed its size budget."""


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset
    weights: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{self.n}")
        if self.weights is not None:
            if set(self.weights) != set(self.edges):
                raise ValueError("weights must cover exactly the edge set")
            for w in self.weights.values():
                if w <= 0:
                    raise ValueError("weights must be positive")

    @staticmethod
    def from_edges(n: int, edges, weights=None) -> "Digraph":
        return Digraph(n, frozenset(edges), dict(weights) if weights else None)

    def out_neighbors(self) -> dict:
        adj = {u: [] for u in range(1, self.n + 1)}
        for u, v in sorted(self.edges):
            adj[u].append(v)
        return adj

    def union(self, other: "Digraph") -> "Digraph":
        if self.n != other.n:
            raise ValueError("vertex counts differ")
        w = None
        if self.weights is not None and other.weights is not None:
            w = {**self.weights, **other.weights}
        return Digraph(self.n, self.edges | other.edges, w)

    def to_text(self) -> str:
        lines = []
        for u, v in sorted(self.edges):
            if self.weights is not None:
                lines.append(f"{u} -> {v} [{self.weights[(u, v)]}]")
            else:
                lines.append(f"{u} -> {v}")
        return "\n".join(lines)


def seq(n: int) -> tuple[int, ...]:
    """a(n) = (1, 2, ..., n)."""
    return tuple(range(1, n + 1))


def seq0(n: int) -> tuple[int, ...]:
    """a0(n) = (0, 1, ..., n-1)."""
    return tuple(range(n))


def cycle(vertices, n: int | None = None) -> Digraph:
    """Directed cycle through ``vertices`` in order."""
    vs = tuple(vertices)
    if len(set(vs)) != len(vs):
        raise ValueError("cycle vertices must be distinct")
    if n is None:
        n = max(vs)
    edges = {(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))}
    return Digraph(n, frozenset(edges))


def path(vertices, n: int | None = None) -> Digraph:
    """Directed path through ``vertices`` in order."""
    vs = tuple(vertices)
    if len(set(vs)) != len(vs):
        raise ValueError("path vertices must be distinct")
    if n is None:
        n = max(vs)
    edges = {(vs[i], vs[i + 1]) for i in range(len(vs) - 1)}
    return Digraph(n, frozenset(edges))


def strong_power(g: Digraph, b: int) -> Digraph:
    """Walk relation of length exactly b, by relation squaring."""
    if b < 1:
        raise ValueError("power must be a positive integer")
    base = {u: set() for u in range(1, g.n + 1)}
    for u, v in g.edges:
        base[u].add(v)

    def compose(r1, r2):
        return {u: {w for v in r1[u] for w in r2[v]} for u in r1}

    result = None
    sq = base
    k = b
    while k:
        if k & 1:
            result = sq if result is None else compose(result, sq)
        k >>= 1
        if k:
            sq = compose(sq, sq)
    edges = {(u, v) for u, vs in result.items() for v in vs}
    return Digraph(g.n, frozenset(edges))


@dataclass(frozen=True)
class CycleDecomposition:
    """The b-th strong power of a k-cycle: gcd(b, k) disjoint cycles."""

    k: int
    power: int
    cycles: tuple  # tuple of vertex tuples

    @property
    def count(self) -> int:
        return len(self.cycles)

    @property
    def length(self) -> int:
        return len(self.cycles[0])


def cycle_power_decomposition(k: int, c: int) -> CycleDecomposition:
    """Decompose the c-th strong power of the standard k-cycle.

    With h = gcd(c, k) and k1 = k/h the power splits into h cycles of
    length k1; cycle i (1-indexed) visits ``<i + l*c>_k`` for
    l = 0, ..., k1 - 1.
    """
    if k < 1 or c < 1:
        raise ValueError("cycle length and power must be positive")
    h = gcd(c, k)
    k1 = k // h
    cycles = tuple(
        tuple(mod_index(i + l * c, k) for l in range(k1)) for i in range(1, h + 1)
    )
    return CycleDecomposition(k, c, cycles)


@dataclass(frozen=True)
class SimpleCycle:
    vertices: tuple
    weight: Fraction | None = None

    @property
    def length(self) -> int:
        return len(self.vertices)


def enumerate_simple_cycles(g: Digraph, budget: int = 64) -> list[SimpleCycle]:
    """All simple cycles, canonically rotated, via Johnson's algorithm.

    Exhaustive enumeration; refuses graphs above ``budget`` vertices.
    When the graph is weighted each cycle carries the product of its
    edge weights.
    """
    if g.n > budget:
        raise BudgetError(f"{g.n} vertices exceeds the cycle budget of {budget}")
    import networkx as nx

    G = nx.DiGraph()
    G.add_nodes_from(range(1, g.n + 1))
    G.add_edges_from(g.edges)
    out = []
    for cyc in nx.simple_cycles(G):
        vs = tuple(cyc)
        # canonical rotation: start at the smallest vertex
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        weight = None
        if g.weights is not None:
            weight = Fraction(1)
            for a, b in zip(vs, vs[1:] + vs[:1]):
                weight *= g.weights[(a, b)]
        out.append(SimpleCycle(vs, weight))
    out.sort(key=lambda c: (c.length, c.vertices))
    return out
