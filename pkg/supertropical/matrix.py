"""Square matrices over T[i] and the operations of the matrix semiring.

A :class:`SuperMatrix` keeps its real and ghost parts as two read-only ``float64``
arrays. Products take ``max`` over the terms ``X[:, k, None] + Y[None, k, :]``;
epsilon is ``-inf`` so the ``+`` is absorbing at epsilon without special cases.

Indices are 1-based everywhere in the public API (``A[i, j]``, permutations,
graph vertices); the 0-based arrays never leak.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidPermutation
from .semiring import EPS, SuperScalar, format_scalar


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    arr.flags.writeable = False
    return arr


def _maxplus(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Max-plus product over T: out[p, q] = max_k x[p, k] + y[k, q].

    Accumulates one rank-one term per k so memory stays at n x n.
    """
    out = np.full(x.shape, EPS)
    for k in range(x.shape[1]):
        np.maximum(out, x[:, k, None] + y[None, k, :], out=out)
    return out


class SuperMatrix:
    """An immutable n x n matrix over T[i]."""

    __slots__ = ("n", "re", "gh", "_key")

    def __init__(self, re: np.ndarray, gh: np.ndarray):
        re = np.asarray(re, dtype=np.float64)
        gh = np.asarray(gh, dtype=np.float64)
        if re.ndim != 2 or re.shape[0] != re.shape[1] or re.shape[0] < 1:
            raise ValueError(f"expected a non-empty square array, got shape {re.shape}")
        if gh.shape != re.shape:
            raise DimensionMismatch(re.shape[0], gh.shape[0], "real/ghost part")
        if np.isnan(re).any() or np.isnan(gh).any() or (re == np.inf).any() or (gh == np.inf).any():
            raise ValueError("matrix entries must be finite reals or epsilon")
        self.n: int = re.shape[0]
        self.re = _frozen(re)
        self.gh = _frozen(gh)
        self._key: Optional[bytes] = None

    # -- construction ---------------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[SuperScalar]]) -> "SuperMatrix":
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise DimensionMismatch(n, max((len(r) for r in rows), default=0), "row")
        re = np.array([[x.re for x in row] for row in rows], dtype=np.float64).reshape(n, n)
        gh = np.array([[x.gh for x in row] for row in rows], dtype=np.float64).reshape(n, n)
        return cls(re, gh)

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], SuperScalar]) -> "SuperMatrix":
        """Build a matrix that is epsilon except at the given 1-based positions."""
        re = np.full((n, n), EPS)
        gh = np.full((n, n), EPS)
        for (i, j), x in entries.items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexError(f"entry ({i}, {j}) outside 1..{n}")
            re[i - 1, j - 1] = x.re
            gh[i - 1, j - 1] = x.gh
        return cls(re, gh)

    # -- access ---------------------------------------------------------------------

    def __getitem__(self, index: tuple[int, int]) -> SuperScalar:
        i, j = index
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"entry ({i}, {j}) outside 1..{self.n}")
        return SuperScalar(float(self.re[i - 1, j - 1]), float(self.gh[i - 1, j - 1]))

    def rows(self) -> list[list[SuperScalar]]:
        return [[self[i, j] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def nonzero_entries(self) -> Iterator[tuple[int, int, SuperScalar]]:
        """Yield ``(i, j, a_ij)`` for every non-epsilon entry in row-major order."""
        mask = self.support_mask()
        for i, j in zip(*np.nonzero(mask)):
            yield int(i) + 1, int(j) + 1, self[int(i) + 1, int(j) + 1]

    def support_mask(self) -> np.ndarray:
        return (self.re != EPS) | (self.gh != EPS)

    # -- comparison -----------------------------------------------------------------

    def _identity_key(self) -> bytes:
        if self._key is None:
            # +0.0 makes -0.0 and 0.0 share a key, matching float equality
            self._key = (self.re + 0.0).tobytes() + (self.gh + 0.0).tobytes()
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.re, other.re)
            and np.array_equal(self.gh, other.gh)
        )

    def __hash__(self) -> int:
        return hash((self.n, self._identity_key()))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in row) for row in self.rows())
        return f"SuperMatrix(n={self.n}, [{body}])"

    # -- semiring operators ---------------------------------------------------------

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        return mat_add(self, other)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return mat_mul(self, other)

    def __pow__(self, k: int) -> "SuperMatrix":
        return mat_pow(self, k)


def zero_matrix(n: int) -> SuperMatrix:
    """The all-epsilon matrix ℰ."""
    return SuperMatrix(np.full((n, n), EPS), np.full((n, n), EPS))


def identity_matrix(n: int) -> SuperMatrix:
    re = np.full((n, n), EPS)
    np.fill_diagonal(re, 0.0)
    return SuperMatrix(re, np.full((n, n), EPS))


def _same_dim(a: SuperMatrix, b: SuperMatrix) -> None:
    if a.n != b.n:
        raise DimensionMismatch(a.n, b.n)


def mat_add(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    _same_dim(a, b)
    return SuperMatrix(np.maximum(a.re, b.re), np.maximum(a.gh, b.gh))


def mat_mul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """(A ⊗ B)_pq = ⊕_k A_pk ⊗ B_kq with the supertropical scalar product."""
    _same_dim(a, b)
    re = np.maximum(_maxplus(a.re, b.re), _maxplus(a.gh, b.gh))
    gh = np.maximum(_maxplus(a.gh, b.re), _maxplus(a.re, b.gh))
    return SuperMatrix(re, gh)


def mat_pow(a: SuperMatrix, k: int) -> SuperMatrix:
    """k-fold product, k >= 1, by repeated squaring."""
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    result: Optional[SuperMatrix] = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    assert result is not None
    return result


def bracket(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """[A, B] = AB ⊕ BA."""
    return mat_add(mat_mul(a, b), mat_mul(b, a))


def transpose(a: SuperMatrix) -> SuperMatrix:
    return SuperMatrix(a.re.T, a.gh.T)


def is_zero(a: SuperMatrix) -> bool:
    return not a.support_mask().any()


def is_strictly_upper(a: SuperMatrix) -> bool:
    """True iff every entry on or below the diagonal is epsilon."""
    return not np.tril(a.support_mask()).any()


def magnitudes(a: SuperMatrix) -> np.ndarray:
    """Entrywise magnitude re ⊕ gh, the projection of A onto a plain max-plus weight array."""
    return np.maximum(a.re, a.gh)


def is_max_plus(a: SuperMatrix) -> bool:
    """True iff the matrix lies in M_n(T), i.e. every ghost part is epsilon."""
    return bool((a.gh == EPS).all())


def is_nilpotent_by_power(a: SuperMatrix) -> bool:
    """A^n = ℰ; a walk of n edges repeats a vertex, so higher powers add nothing."""
    return is_zero(mat_pow(a, a.n))


def nilpotency_index(a: SuperMatrix) -> Optional[int]:
    """Least k >= 1 with A^k = ℰ, or None when A is not nilpotent."""
    power = a
    for k in range(1, a.n + 1):
        if is_zero(power):
            return k
        power = mat_mul(power, a)
    return None


def dominates(a: SuperMatrix, b: SuperMatrix) -> bool:
    """A >= B in the edge-containment order: every edge of G_B is an edge of G_A."""
    _same_dim(a, b)
    return not (b.support_mask() & ~a.support_mask()).any()


@dataclass(frozen=True)
class Permutation:
    """A bijection π of {1..n}, stored in one-line form ``images[k-1] = π(k)``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        n = len(images)
        if n < 1 or sorted(images) != list(range(1, n + 1)):
            raise InvalidPermutation(f"not a bijection of 1..{n}: {list(images)}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Permutation":
        n = len(mapping)
        try:
            return cls(tuple(mapping[k] for k in range(1, n + 1)))
        except KeyError as e:
            raise InvalidPermutation(f"mapping misses vertex {e.args[0]}") from e

    @classmethod
    def from_order(cls, order: Iterable[int]) -> "Permutation":
        """The labeling that gives the k-th listed vertex label k."""
        return cls.from_mapping({v: k for k, v in enumerate(order, start=1)})

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def inverse(self) -> "Permutation":
        return Permutation.from_order(self.images)

    def compose(self, other: "Permutation") -> "Permutation":
        """(self ∘ other)(k) = self(other(k))."""
        if self.n != other.n:
            raise DimensionMismatch(self.n, other.n, "permutation")
        return Permutation(tuple(self(other(k)) for k in range(1, self.n + 1)))

    def vertex_order(self) -> tuple[int, ...]:
        """Vertices listed by increasing label."""
        return self.inverse().images

    def one_line(self) -> str:
        return " ".join(str(v) for v in self.images)


def conjugate(a: SuperMatrix, perm: Permutation) -> SuperMatrix:
    """Relabel indices: B[π(i), π(j)] = A[i, j]; equals Pᵀ ⊗ A ⊗ P."""
    if a.n != perm.n:
        raise DimensionMismatch(a.n, perm.n, "matrix/permutation")
    idx = np.array(perm.images) - 1
    re = np.empty_like(a.re)
    gh = np.empty_like(a.gh)
    re[np.ix_(idx, idx)] = a.re
    gh[np.ix_(idx, idx)] = a.gh
    return SuperMatrix(re, gh)


def permutation_matrix(perm: Permutation) -> SuperMatrix:
    """The 0/epsilon matrix P with P[k, π(k)] = 0."""
    n = perm.n
    re = np.full((n, n), EPS)
    re[np.arange(n), np.array(perm.images) - 1] = 0.0
    return SuperMatrix(re, np.full((n, n), EPS))
