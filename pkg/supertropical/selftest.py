"""Randomized property suites run by ``supertropical selftest``.

Every suite draws from its own ``random.Random`` seeded from the job seed and the
suite position, so a suite's verdict does not depend on which other suites ran.
Scalars are integers in [-20, 20] or epsilon, which keeps every comparison exact.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from .config import SelftestSizes
from .digraph import find_cycle, max_cycle_mean, reachability, support
from .lie import (
    Bracket,
    BracketWord,
    Gen,
    LieSystem,
    Obstructed,
    Sum,
    Triangularized,
    check_derived_containment,
    check_two_way_obstruction,
    decide,
    evaluate,
    lower_central_series,
    power_as_brackets,
    support_closure_oracle,
)
from .logging_utils import setup_logging
from .matrix import (
    Permutation,
    SuperMatrix,
    bracket,
    conjugate,
    is_nilpotent_by_power,
    is_strictly_upper,
    is_zero,
    mat_pow,
)
from .semiring import (
    EPS,
    I,
    ONE,
    ZERO,
    SuperScalar,
    is_eps,
    is_ghost,
    super_add,
    super_mul,
)

logger = setup_logging(__name__)

MAX_REPORTED_FAILURES = 5


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def check(self, condition: bool, describe: Callable[[], str]) -> None:
        self.checked += 1
        if not condition:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(describe())


# -- random generation --------------------------------------------------------------


def random_ext(rng: random.Random, eps_rate: float = 0.125) -> float:
    if rng.random() < eps_rate:
        return EPS
    return float(rng.randint(-20, 20))


def random_scalar(rng: random.Random, ghost_rate: float = 0.0) -> SuperScalar:
    if ghost_rate and rng.random() < ghost_rate:
        a = random_ext(rng)
        return SuperScalar(a, a)
    return SuperScalar(random_ext(rng), random_ext(rng))


def random_entry(rng: random.Random) -> SuperScalar:
    """A non-epsilon entry: real, ghost, ghost-part only, or mixed."""
    a = float(rng.randint(-20, 20))
    kind = rng.randrange(4)
    if kind == 0:
        return SuperScalar(a, EPS)
    if kind == 1:
        return SuperScalar(a, a)
    if kind == 2:
        return SuperScalar(EPS, a)
    return SuperScalar(a, float(rng.randint(-20, 20)))


def random_matrix(rng: random.Random, n: int, density: float, upper_only: bool = False) -> SuperMatrix:
    re = np.full((n, n), EPS)
    gh = np.full((n, n), EPS)
    for i in range(n):
        for j in range(n):
            if upper_only and j <= i:
                continue
            if rng.random() < density:
                x = random_entry(rng)
                re[i, j], gh[i, j] = x.re, x.gh
    return SuperMatrix(re, gh)


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_system(rng: random.Random, n: int, count: int, nilpotent: Optional[bool] = None) -> LieSystem:
    """Random generators; ``nilpotent=True`` hides a strictly upper system behind a
    random relabeling, ``None`` lets the density decide."""
    density = rng.uniform(0.1, 0.6)
    if nilpotent:
        perm = random_permutation(rng, n)
        gens = tuple(conjugate(random_matrix(rng, n, density, upper_only=True), perm) for _ in range(count))
    else:
        gens = tuple(random_matrix(rng, n, density) for _ in range(count))
    return LieSystem(n, gens)


def random_word(rng: random.Random, generator_count: int, depth: int) -> BracketWord:
    """Bracket word of nesting depth at most ``depth`` over g1..g(generator_count)."""
    if depth == 0 or rng.random() < 0.25:
        return Gen(rng.randint(1, generator_count))
    if rng.random() < 0.2:
        return Sum((random_word(rng, generator_count, depth - 1), random_word(rng, generator_count, depth - 1)))
    return Bracket(random_word(rng, generator_count, depth - 1), random_word(rng, generator_count, depth - 1))


def _systems(rng: random.Random, count: int, n_max: int, gen_max: int) -> Iterator[LieSystem]:
    for t in range(count):
        n = rng.randint(2, n_max)
        yield random_system(rng, n, rng.randint(1, gen_max), nilpotent=(t % 2 == 0) or None)


# -- suites -------------------------------------------------------------------------


def semiring_laws(rng: random.Random, sizes: SelftestSizes) -> SuiteResult:
    result = SuiteResult("semiring_laws")
    for _ in range(sizes.scalars):
        x, y, z = random_scalar(rng), random_scalar(rng), random_scalar(rng)
        laws = {
            "add commutative": super_add(x, y) == super_add(y, x),
            "add associative": super_add(super_add(x, y), z) == super_add(x, super_add(y, z)),
            "add idempotent": super_add(x, x) == x,
            "add identity": super_add(x, ZERO) == x,
            "mul commutative": super_mul(x, y) == super_mul(y, x),
            "mul associative": super_mul(super_mul(x, y), z) == super_mul(x, super_mul(y, z)),
            "mul identity": super_mul(x, ONE) == x,
            "mul absorbing": super_mul(x, ZERO) == ZERO,
            "distributive": super_mul(x, super_add(y, z)) == super_add(super_mul(x, y), super_mul(x, z)),
        }
        for law, holds in laws.items():
            result.check(holds, lambda law=law: f"{law} fails for {x}, {y}, {z}")
    return result


def ghost_ideal(rng: random.Random, sizes: SelftestSizes) -> SuiteResult:
    result = SuiteResult("ghost_ideal")
    result.check(super_mul(I, I) == ONE, lambda: f"i*i = {super_mul(I, I)}, expected 0")
    for _ in range(sizes.scalars):
        x, y = random_scalar(rng, ghost_rate=0.5), random_scalar(rng, ghost_rate=0.5)
        result.check(
            not is_eps(super_mul(x, y)) or is_eps(x) or is_eps(y),
            lambda: f"zero divisors {x}, {y}",
        )
        if is_ghost(x):
            result.check(
                is_ghost(super_mul(x, y)) and is_ghost(super_mul(y, x)),
                lambda: f"ghost {x} not absorbing against {y}",
            )
            if is_ghost(y):
                result.check(is_ghost(super_add(x, y)), lambda: f"ghost sum {x} + {y} left the ideal")
    return result


def nilpotency_equivalence(rng: random.Random, sizes: SelftestSizes) -> SuiteResult:
    result = SuiteResult("nilpotency_equivalence")
    count = sizes.matrices_per_n
    for n in range(2, 7):
        for t in range(count):
            density = 0.1 + 0.8 * t / max(count - 1, 1)
            a = random_matrix(rng, n, density)
            by_power = is_nilpotent_by_power(a)
            acyclic = find_cycle(support(a)) is None
            no_spectrum = max_cycle_mean(a) == EPS
            result.check(
                by_power == acyclic == no_spectrum,
                lambda: f"power={by_power} acyclic={acyclic} spectrum_eps={no_spectrum} for {a!r}",
            )
    return result


def bracket_square(rng: random.Random, sizes: SelftestSizes) -> SuiteResult:
    result = SuiteResult("bracket_square")
    for _ in range(sizes.bracket_identity):
        a = random_matrix(rng, rng.randint(1, 6), rng.uniform(0.1, 0.9))
        result.check(bracket(a, a) == mat_pow(a, 2), lambda: f"[A,A] != A^2 for {a!r}")
    words = 0
    while words < sizes.sampled_words:
        system = random_system(rng, rng.randint(2, 6), rng.randint(1, 4), nilpotent=True)
        for _ in range(10):
            word = random_word(rng, len(system), 3)
            value = evaluate(word, system)
            result.check(is_nilpotent_by_power(value), lambda: f"element {word} is not nilpotent")
            words += 1
    for _ in range(max(1, sizes.bracket_identity // 10)):
        n = rng.randint(1, 5)
        e = random_matrix(rng, n, rng.uniform(0.1, 0.9))
        single = LieSystem(n, (e,))
        power = e
        for k in range(1, n + 1):
            following = mat_pow(e, k + 1)
            result.check(bracket(e, power) == following, lambda: f"[E, E^{k}] != E^{k + 1} for {e!r}")
            result.check(
                evaluate(power_as_brackets(Gen(1), k + 1), single) == following,
                lambda: f"nested brackets of depth {k + 1} != E^{k + 1} for {e!r}",
            )
            power = following
    return result


def two_way_consistency(rng: random.Random, sizes: SelftestSizes) -> SuiteResult:
    result = SuiteResult("two_way_consistency")
    for system in _systems(rng, sizes.systems, 6, 4):
        outcome = decide(system)
        if isinstance(outcome, Obstructed):
            value = outcome.certificate_value
            diagonal = any(not is_eps(value[v, v]) for v in range(1, system.n + 1))
            result.check(diagonal, lambda: f"certificate {outcome.certificate} has an epsilon diagonal")
            result.check(not is_nilpotent_by_power(value), lambda: "certificate value is nilpotent")
        else:
            obstruction = check_two_way_obstruction(system)
            result.check(obstruction is None, lambda: f"nilpotent system has obstruction {obstruction}")
            sigma = random_permutation(rng, system.n)
            result.check(
                isinstance(decide(system.conjugated(sigma)), Triangularized),
                lambda: f"relabeling by {sigma.one_line()} lost nilpotency",
            )
        closure = support_closure_oracle(system)
        loops = any((v, v) in closure for v in range(1, system.n + 1))
        result.check(
            loops == isinstance(outcome, Obstructed),
            lambda: f"oracle diagonal={loops} disagrees with {type(outcome).__name__}",
        )
    return result


def triangularization(rng: random.Random, sizes: SelftestSizes) -> SuiteResult:
    result = SuiteResult("triangularization")
    for system in _systems(rng, sizes.systems, 6, 4):
        outcome = decide(system)
        if isinstance(outcome, Obstructed):
            continue
        perm = outcome.perm.one_line()
        for k, g in enumerate(outcome.conjugated, start=1):
            result.check(is_strictly_upper(g), lambda: f"g{k} not strictly upper under {perm}")
        relabeled = LieSystem(system.n, outcome.conjugated)
        for _ in range(5):
            word = random_word(rng, len(relabeled), 3)
            result.check(
                is_strictly_upper(evaluate(word, relabeled)),
                lambda: f"word {word} not strictly upper under {perm}",
            )
    return result


def oracle_equivalence(rng: random.Random, sizes: SelftestSizes) -> SuiteResult:
    result = SuiteResult("oracle_equivalence")
    for system in _systems(rng, sizes.oracle_systems, 5, 4):
        closure = reachability(system.union_support()).pairs()
        result.check(support_closure_oracle(system) == closure, lambda: "oracle fixpoint != closure")
    return result


def lcs_termination(rng: random.Random, sizes: SelftestSizes, cap: int, max_depth: int) -> SuiteResult:
    result = SuiteResult("lcs_termination")
    for _ in range(sizes.lcs_systems):
        n = rng.randint(2, 6)
        system = random_system(rng, n, rng.randint(1, 3), nilpotent=True)
        series = lower_central_series(system, max(max_depth, n), cap)
        result.check(not series.truncated, lambda: f"truncated at cap {cap}")
        result.check(
            series.index is not None and series.index <= n - 1,
            lambda: f"index {series.index} exceeds n-1 = {n - 1}",
        )
        if series.index is not None:
            result.check(all(is_zero(d) for d in series.levels[-1]), lambda: "last level is not {ℰ}")
    return result


def derived_containment(rng: random.Random, sizes: SelftestSizes, cap: int) -> SuiteResult:
    result = SuiteResult("derived_containment")
    for system in _systems(rng, sizes.lcs_systems, 5, 2):
        level = check_derived_containment(system, 3, cap)
        result.check(level is None, lambda: f"derived level {level} leaves the lower central series")
    return result


def run_selftest(seed: int, sizes: SelftestSizes, cap: int = 10_000, max_depth: int = 8) -> list[SuiteResult]:
    suites: list[Callable[[random.Random], SuiteResult]] = [
        lambda rng: semiring_laws(rng, sizes),
        lambda rng: ghost_ideal(rng, sizes),
        lambda rng: nilpotency_equivalence(rng, sizes),
        lambda rng: bracket_square(rng, sizes),
        lambda rng: two_way_consistency(rng, sizes),
        lambda rng: triangularization(rng, sizes),
        lambda rng: oracle_equivalence(rng, sizes),
        lambda rng: lcs_termination(rng, sizes, cap, max_depth),
        lambda rng: derived_containment(rng, sizes, cap),
    ]
    results = []
    for position, suite in enumerate(suites):
        started = time.perf_counter()
        res = suite(random.Random(seed * 1_000 + position))
        res.seconds = time.perf_counter() - started
        logger.info("selftest.suite", suite=res.name, checked=res.checked, failed=res.failed, seconds=round(res.seconds, 3))
        results.append(res)
    return results
