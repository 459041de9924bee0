"""Support digraphs of matrices and the graph algorithms the engine decides with.

Vertices are 1..n. Every routine breaks ties by the smallest vertex index so that
reports are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import networkx as nx
import numpy as np

from .errors import DimensionMismatch, NotADAG
from .logging_utils import setup_logging
from .matrix import Permutation, SuperMatrix, magnitudes
from .semiring import EPS, ExtReal

logger = setup_logging(__name__)

Edge = tuple[int, int]


@dataclass(frozen=True)
class SupportDigraph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) outside vertices 1..{self.n}")
        object.__setattr__(self, "edges", edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def successors(self, u: int) -> list[int]:
        return sorted(v for (a, v) in self.edges if a == u)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.sorted_edges())
        return graph

    def dump(self) -> str:
        """Edge list, one ``u v`` line per edge, lexicographically sorted."""
        return "".join(f"{u} {v}\n" for u, v in self.sorted_edges())

    def union(self, *others: "SupportDigraph") -> "SupportDigraph":
        edges = set(self.edges)
        for other in others:
            if other.n != self.n:
                raise DimensionMismatch(self.n, other.n, "graph")
            edges |= other.edges
        return SupportDigraph(self.n, frozenset(edges))


@dataclass(frozen=True)
class CycleWitness:
    """Directed cycle v0 -> v1 -> ... -> v(m-1) -> v0; a single vertex is a self-loop."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vertices = tuple(int(v) for v in self.vertices)
        if not vertices:
            raise ValueError("a cycle needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise ValueError(f"cycle vertices must be distinct: {list(vertices)}")
        object.__setattr__(self, "vertices", vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def cycle_edges(self) -> list[Edge]:
        m = len(self.vertices)
        return [(self.vertices[t], self.vertices[(t + 1) % m]) for t in range(m)]

    def is_in(self, graph: SupportDigraph) -> bool:
        return all(edge in graph.edges for edge in self.cycle_edges())


def support(a: SuperMatrix) -> SupportDigraph:
    """G_A: edge i -> j iff a_ij is not epsilon (ghost entries count)."""
    rows, cols = np.nonzero(a.support_mask())
    return SupportDigraph(a.n, frozenset((int(i) + 1, int(j) + 1) for i, j in zip(rows, cols)))


def find_cycle(graph: SupportDigraph) -> Optional[CycleWitness]:
    """Depth-first search from the smallest vertex; None iff the graph is a DAG."""
    try:
        cycle = nx.find_cycle(graph.to_networkx(), orientation="original")
    except nx.NetworkXNoCycle:
        return None
    return CycleWitness(tuple(u for u, _v, _direction in cycle))


def topological_order(graph: SupportDigraph) -> Permutation:
    """Labeling ℓ with ℓ(u) < ℓ(v) on every edge (Kahn, smallest ready vertex first)."""
    cycle = find_cycle(graph)
    if cycle is not None:
        raise NotADAG(cycle)
    order = list(nx.lexicographical_topological_sort(graph.to_networkx()))
    return Permutation.from_order(order)


def longest_path_length(graph: SupportDigraph) -> int:
    """Edges on the longest directed path; A^(L+1) = ℰ for any A with this support."""
    cycle = find_cycle(graph)
    if cycle is not None:
        raise NotADAG(cycle)
    return int(nx.dag_longest_path_length(graph.to_networkx()))


def shortest_path_length(graph: SupportDigraph, source: int, target: int) -> Optional[int]:
    """Fewest edges (at least one) on a walk source -> target, or None."""
    best: Optional[int] = None
    g = graph.to_networkx()
    for first in graph.successors(source):
        if first == target:
            return 1
        try:
            length = nx.shortest_path_length(g, first, target) + 1
        except nx.NetworkXNoPath:
            continue
        if best is None or length < best:
            best = length
    return best


@dataclass(frozen=True)
class Reachability:
    """Transitive closure as row bitsets: bit v-1 of ``rows[u-1]`` set iff a path
    of length >= 1 leads from u to v."""

    n: int
    rows: tuple[int, ...]

    def __contains__(self, pair: object) -> bool:
        u, v = pair  # type: ignore[misc]
        return bool(self.rows[u - 1] >> (v - 1) & 1)

    def reachable_from(self, u: int) -> list[int]:
        row = self.rows[u - 1]
        return [v for v in range(1, self.n + 1) if row >> (v - 1) & 1]

    def pairs(self) -> frozenset[Edge]:
        return frozenset((u, v) for u in range(1, self.n + 1) for v in self.reachable_from(u))

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.pairs()))


def reachability(graph: SupportDigraph) -> Reachability:
    """Closure computed on the condensation, sinks first, one OR per edge."""
    g = graph.to_networkx()
    dag = nx.condensation(g)
    members = dag.graph["mapping"]
    component_bits: dict[int, int] = {}
    for comp in reversed(list(nx.topological_sort(dag))):
        vertices = dag.nodes[comp]["members"]
        own = 0
        for v in vertices:
            own |= 1 << (v - 1)
        cyclic = len(vertices) > 1 or any(g.has_edge(v, v) for v in vertices)
        bits = own if cyclic else 0
        for succ in dag.successors(comp):
            bits |= component_bits[succ]
            for v in dag.nodes[succ]["members"]:
                bits |= 1 << (v - 1)
        component_bits[comp] = bits
    rows = tuple(component_bits[members[u]] for u in range(1, graph.n + 1))
    return Reachability(graph.n, rows)


def max_cycle_mean(a: SuperMatrix) -> ExtReal:
    """Maximum cycle mean of the magnitude matrix M_ij = re(a_ij) ⊕ gh(a_ij).

    Karp's characterisation with every vertex as a start: with D_k(v) the heaviest
    walk of exactly k edges ending at v,
    λ = max_v min_{0<=k<n} (D_n(v) - D_k(v)) / (n - k), over v with D_n(v) finite.
    Means are exact fractions; EPS is returned iff the support is acyclic.
    """
    n = a.n
    weights = magnitudes(a)
    # walks[k][v] = D_k(v), EPS when no walk of k edges ends at v
    walks = [np.zeros(n)]
    for _ in range(n):
        walks.append(np.max(walks[-1][:, None] + weights, axis=0))

    best: Optional[Fraction] = None
    for v in range(n):
        top = float(walks[n][v])
        if top == EPS:
            continue
        worst: Optional[Fraction] = None
        for k in range(n):
            dk = float(walks[k][v])
            if dk == EPS:
                continue
            mean = (Fraction(top) - Fraction(dk)) / (n - k)
            if worst is None or mean < worst:
                worst = mean
        if worst is not None and (best is None or worst > best):
            best = worst
    logger.debug("max_cycle_mean", n=n, value=None if best is None else str(best))
    return EPS if best is None else float(best)

