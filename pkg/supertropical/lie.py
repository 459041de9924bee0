"""Nilpotency of supertropical Lie algebras given by generators.

A Lie algebra is represented by a finite list of generator matrices; it is the
smallest subspace containing them and closed under the bracket. All decisions only
depend on supports: spanning never adds edges outside the union support, and
brackets only add edges of its transitive closure.

``decide`` either returns the relabeling that makes every generator strictly upper
triangular, or a bracket word whose value has a non-epsilon diagonal entry and is
therefore an element of the algebra that is not nilpotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .digraph import (
    CycleWitness,
    Edge,
    SupportDigraph,
    find_cycle,
    reachability,
    shortest_path_length,
    support,
    topological_order,
)
from .errors import DimensionMismatch
from .logging_utils import setup_logging
from .matrix import (
    Permutation,
    SuperMatrix,
    bracket,
    conjugate,
    dominates,
    is_max_plus,
    is_zero,
    mat_add,
    mat_pow,
    zero_matrix,
)

logger = setup_logging(__name__)


@dataclass(frozen=True)
class LieSystem:
    """Generators of a Lie subalgebra of M_n(T[i])."""

    n: int
    generators: tuple[SuperMatrix, ...]

    def __post_init__(self) -> None:
        generators = tuple(self.generators)
        if not generators:
            raise ValueError("a Lie system needs at least one generator")
        for g in generators:
            if g.n != self.n:
                raise DimensionMismatch(self.n, g.n, "system/generator")
        object.__setattr__(self, "generators", generators)

    @classmethod
    def of(cls, *generators: SuperMatrix) -> "LieSystem":
        return cls(generators[0].n, tuple(generators))

    def __len__(self) -> int:
        return len(self.generators)

    def generator(self, index: int) -> SuperMatrix:
        """1-based generator access."""
        if not 1 <= index <= len(self.generators):
            raise IndexError(f"generator g{index} outside g1..g{len(self.generators)}")
        return self.generators[index - 1]

    @property
    def is_max_plus(self) -> bool:
        return all(is_max_plus(g) for g in self.generators)

    def supports(self) -> list[SupportDigraph]:
        return [support(g) for g in self.generators]

    def union_support(self) -> SupportDigraph:
        graphs = self.supports()
        return graphs[0].union(*graphs[1:])

    def conjugated(self, perm: Permutation) -> "LieSystem":
        return LieSystem(self.n, tuple(conjugate(g, perm) for g in self.generators))


# -- bracket words ------------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Bracket:
    left: "BracketWord"
    right: "BracketWord"


@dataclass(frozen=True)
class Sum:
    terms: tuple["BracketWord", ...]


@dataclass(frozen=True)
class Power:
    base: "BracketWord"
    exponent: int


BracketWord = Union[Gen, Bracket, Sum, Power]


def render(word: BracketWord) -> str:
    """S-expression text, generators 1-based: ``(bracket g1 (bracket g2 g3))``."""
    if isinstance(word, Gen):
        return f"g{word.index}"
    if isinstance(word, Bracket):
        return f"(bracket {render(word.left)} {render(word.right)})"
    if isinstance(word, Sum):
        return "(sum " + " ".join(render(t) for t in word.terms) + ")"
    if isinstance(word, Power):
        return f"(power {render(word.base)} {word.exponent})"
    raise TypeError(f"not a bracket word: {word!r}")


def evaluate(word: BracketWord, system: LieSystem) -> SuperMatrix:
    if isinstance(word, Gen):
        return system.generator(word.index)
    if isinstance(word, Bracket):
        return bracket(evaluate(word.left, system), evaluate(word.right, system))
    if isinstance(word, Sum):
        return reduce(mat_add, (evaluate(t, system) for t in word.terms))
    if isinstance(word, Power):
        return mat_pow(evaluate(word.base, system), word.exponent)
    raise TypeError(f"not a bracket word: {word!r}")


def power_as_brackets(base: BracketWord, k: int) -> BracketWord:
    """A^k written as [A, [A, ... A]]; [A, A^j] = A^(j+1) since ⊕ is idempotent."""
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    word = base
    for _ in range(k - 1):
        word = Bracket(base, word)
    return word


def expand_powers(word: BracketWord) -> BracketWord:
    """Rewrite every power node into nested brackets, leaving only span and bracket."""
    if isinstance(word, Gen):
        return word
    if isinstance(word, Bracket):
        return Bracket(expand_powers(word.left), expand_powers(word.right))
    if isinstance(word, Sum):
        return Sum(tuple(expand_powers(t) for t in word.terms))
    return power_as_brackets(expand_powers(word.base), word.exponent)


# -- decision -----------------------------------------------------------------------


@dataclass(frozen=True)
class Triangularized:
    perm: Permutation
    conjugated: tuple[SuperMatrix, ...]

    nilpotent = True


@dataclass(frozen=True)
class Obstructed:
    cycle: CycleWitness
    certificate: BracketWord
    certificate_value: SuperMatrix

    nilpotent = False


TriangularizationOutcome = Union[Triangularized, Obstructed]


def dominant_matrix(system: LieSystem) -> SuperMatrix:
    """⊕ of all generators; its support is the union of generator supports."""
    return reduce(mat_add, system.generators)


def cycle_certificate(system: LieSystem, cycle: CycleWitness) -> BracketWord:
    """Right-folded bracket of one generator per cycle edge.

    [g1, [g2, [..., gm]]] contains the walk along the whole cycle, so its entry at
    the cycle's first vertex is not epsilon.
    """
    graphs = system.supports()
    chosen: list[int] = []
    for edge in cycle.cycle_edges():
        index = next(i for i, g in enumerate(graphs, start=1) if edge in g.edges)
        chosen.append(index)
    word: BracketWord = Gen(chosen[-1])
    for index in reversed(chosen[:-1]):
        word = Bracket(Gen(index), word)
    return word


def decide(system: LieSystem) -> TriangularizationOutcome:
    union = support(dominant_matrix(system))
    cycle = find_cycle(union)
    if cycle is None:
        perm = topological_order(union)
        conjugated = tuple(conjugate(g, perm) for g in system.generators)
        logger.info(
            "decide", n=system.n, generators=len(system), max_plus=system.is_max_plus,
            nilpotent=True, perm=perm.one_line(),
        )
        return Triangularized(perm, conjugated)

    word = cycle_certificate(system, cycle)
    value = evaluate(word, system)
    logger.info(
        "decide", n=system.n, generators=len(system), max_plus=system.is_max_plus, nilpotent=False,
        cycle=list(cycle.vertices), certificate=render(word),
    )
    return Obstructed(cycle, word, value)


# -- support-level oracle -----------------------------------------------------------


def _compose(left: frozenset[Edge], right: frozenset[Edge]) -> frozenset[Edge]:
    by_tail: dict[int, list[int]] = {}
    for b, c in right:
        by_tail.setdefault(b, []).append(c)
    return frozenset((a, c) for a, b in left for c in by_tail.get(b, ()))


def support_closure_oracle(system: LieSystem) -> frozenset[Edge]:
    """Brute-force fixpoint R <- R ∪ R∘R0 ∪ R0∘R from R0 = union of supports."""
    base = system.union_support().edges
    relation = base
    while True:
        grown = relation | _compose(relation, base) | _compose(base, relation)
        if grown == relation:
            return relation
        relation = grown


# -- lower central and derived series -----------------------------------------------


@dataclass(frozen=True)
class BracketSeries:
    """Generator lists of a descending series; ``index`` is the first k whose level
    is {ℰ}, ``truncated`` marks a level that exceeded the cap."""

    levels: tuple[tuple[SuperMatrix, ...], ...]
    index: Optional[int]
    truncated: bool = False

    @property
    def counts(self) -> list[int]:
        return [len(level) for level in self.levels]


LowerCentralSeries = BracketSeries
DerivedSeries = BracketSeries

PairSource = Callable[[tuple[SuperMatrix, ...]], Iterable[tuple[SuperMatrix, SuperMatrix]]]


def _unique(matrices: Sequence[SuperMatrix]) -> tuple[SuperMatrix, ...]:
    return tuple(dict.fromkeys(matrices))


def _bracket_series(
    system: LieSystem, max_depth: int, cap: int, pairs: PairSource, event: str
) -> BracketSeries:
    if max_depth < 1:
        raise ValueError(f"max_depth must be >= 1, got {max_depth}")
    levels = [_unique(system.generators)]
    if len(levels[0]) > cap:
        logger.warning(f"{event}.truncated", level=0, cap=cap)
        return BracketSeries(tuple(levels), index=None, truncated=True)
    if all(is_zero(g) for g in levels[0]):
        return BracketSeries(tuple(levels), index=0)

    for k in range(1, max_depth + 1):
        seen: dict[SuperMatrix, None] = {}
        for left, right in pairs(levels[-1]):
            seen.setdefault(bracket(left, right), None)
            if len(seen) > cap:
                logger.warning(f"{event}.truncated", level=k, cap=cap)
                return BracketSeries(tuple(levels), index=None, truncated=True)
        levels.append(tuple(seen))
        if all(is_zero(d) for d in levels[-1]):
            return BracketSeries(tuple(levels), index=k)
    return BracketSeries(tuple(levels), index=None)


def lower_central_series(system: LieSystem, max_depth: int, cap: int = 10_000) -> LowerCentralSeries:
    """D^k generators are the brackets [g, d], g a generator, d a D^(k-1) generator.

    Exact duplicates are dropped from each level, which leaves the span unchanged.
    A level with more than ``cap`` generators stops the computation and the partial
    series is returned with ``truncated`` set.
    """

    def pairs(level: tuple[SuperMatrix, ...]) -> Iterator[tuple[SuperMatrix, SuperMatrix]]:
        return ((g, d) for g in system.generators for d in level)

    return _bracket_series(system, max_depth, cap, pairs, "lower_central_series")


def derived_series(system: LieSystem, max_depth: int, cap: int = 10_000) -> DerivedSeries:
    """G^(k) generators are the brackets [d, e] of all pairs of G^(k-1) generators.

    The bracket is symmetric, so unordered pairs (with repetition) suffice. Duplicates
    and the cap are handled as in :func:`lower_central_series`.
    """
    return _bracket_series(
        system, max_depth, cap, lambda level: combinations_with_replacement(level, 2), "derived_series"
    )


def _level_sum(level: Sequence[SuperMatrix], n: int) -> SuperMatrix:
    return reduce(mat_add, level, zero_matrix(n))


def check_derived_containment(system: LieSystem, max_depth: int = 3, cap: int = 10_000) -> Optional[int]:
    """First k whose G^(k) generators use an edge outside D^k, or None.

    A G^(k) generator is a bracket of 2^k generators, so its support lies in level
    2^k - 1 of the lower central series; the series descends, so D^k covers every
    computed level j >= k. Levels the capped central series cannot cover are skipped.
    """
    derived = derived_series(system, max_depth, cap)
    top = len(derived.levels) - 1
    central = lower_central_series(system, max(1, 2**top - 1), cap)
    complete = central.index is not None

    # covers[k] is the ⊕ of central levels k, k+1, ...
    covers = [zero_matrix(system.n)] * (len(central.levels) + 1)
    for j in reversed(range(len(central.levels))):
        covers[j] = mat_add(covers[j + 1], _level_sum(central.levels[j], system.n))

    for k, level in enumerate(derived.levels):
        if not complete and 2**k - 1 >= len(central.levels):
            break
        cover = covers[min(k, len(central.levels))]
        if not dominates(cover, _level_sum(level, system.n)):
            logger.info("derived_containment.violation", level=k)
            return k
    return None


# -- two-way obstruction ------------------------------------------------------------


@dataclass(frozen=True)
class TwoWayObstruction:
    """Path v -> w in G_A and path w -> v in G_B, A = g_a and B = g_b."""

    generators: tuple[int, int]
    vertices: tuple[int, int]


def check_two_way_obstruction(system: LieSystem) -> Optional[TwoWayObstruction]:
    """First violation scanning generator pairs (a, b), then vertices v != w."""
    closures = [reachability(g) for g in system.supports()]
    m = len(closures)
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            ra, rb = closures[a - 1], closures[b - 1]
            for v in range(1, system.n + 1):
                for w in ra.reachable_from(v):
                    if w != v and (w, v) in rb:
                        return TwoWayObstruction((a, b), (v, w))
    return None


def obstruction_certificate(
    system: LieSystem, obstruction: TwoWayObstruction
) -> tuple[BracketWord, SuperMatrix]:
    """C = [A^l, B^m] with l, m the shortest path lengths; C has C_vv != eps."""
    a, b = obstruction.generators
    v, w = obstruction.vertices
    l = shortest_path_length(support(system.generator(a)), v, w)
    m = shortest_path_length(support(system.generator(b)), w, v)
    if l is None or m is None:
        raise ValueError(f"no two-way paths between {v} and {w} in g{a}, g{b}")
    left: BracketWord = Gen(a) if l == 1 else Power(Gen(a), l)
    right: BracketWord = Gen(b) if m == 1 else Power(Gen(b), m)
    word = Bracket(left, right)
    return word, evaluate(word, system)
