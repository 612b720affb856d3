"""Exact matrix-algebra oracle for the Terwilliger algebra.

The relation matrices and dual idempotents are built densely, the algebra they
generate is found by closing their rational span under multiplication, and its
dimension is compared with the prediction from the base-point permutation. All
generators are 0/1 integer matrices, so every product is an integer matrix and the
dimension over Q equals the dimension over C. No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from . import exact
from .exceptions import NotClosed, OrderTooSmall, SizeMismatch
from .quasigroup import LatinSquare
from .scheme import check_point, intersection_numbers, point_index, relation_table
from .subconstituent import predict


def relation_matrices(L: LatinSquare) -> list[np.ndarray]:
    """``A_0..A_4`` indexed in orthogonal-array order."""
    R = relation_table(L)
    return [(R == i).astype(np.int64) for i in range(5)]


def dual_idempotent_matrices(L: LatinSquare, p) -> list[np.ndarray]:
    """Diagonal ``E*_0..E*_4``: ``E*_i[x, x] = A_i[p, x]``."""
    p = check_point(L, p)
    row = relation_table(L)[point_index(L, p)]
    return [np.diag((row == i).astype(np.int64)) for i in range(5)]


def verify_intersection_identity(L: LatinSquare, tensor: np.ndarray | None = None) -> bool:
    """Check ``A_i A_j == sum_h p[h, i, j] A_h`` entrywise for all 25 pairs."""
    A = relation_matrices(L)
    p = intersection_numbers(L) if tensor is None else tensor
    for i in range(5):
        for j in range(5):
            lhs = exact.matmul(A[i], A[j])
            rhs = sum(int(p[h, i, j]) * A[h] for h in range(5))
            if not np.array_equal(lhs, rhs):
                return False
    return True


@dataclass
class MatrixSpan:
    """A rational span of integer matrices.

    ``elements`` are linearly independent integer matrices spanning the space (each
    is a generator or a product of earlier elements); ``echelon`` holds the same
    space in reduced row echelon form, vectorized row-major.
    """

    size: int
    elements: list[np.ndarray] = field(default_factory=list)
    generators: list[np.ndarray] = field(default_factory=list)
    closed: bool = False

    def __post_init__(self):
        self.echelon = exact.RowEchelon(self.size * self.size)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def add(self, m: np.ndarray) -> bool:
        if self.echelon.add(m.ravel()):
            self.elements.append(m)
            self.closed = False
            return True
        return False

    def contains(self, m: np.ndarray) -> bool:
        return self.echelon.contains(m.ravel())


Strategy = Literal["generators", "pairs"]


def _check_generators(generators: Sequence[np.ndarray]) -> list[np.ndarray]:
    if not generators:
        raise SizeMismatch("need at least one generator")
    gens = [exact.as_integer_array(g) for g in generators]
    size = gens[0].shape[0]
    for g in gens:
        if g.shape != (size, size):
            raise SizeMismatch(f"generator of shape {g.shape}, expected {(size, size)}")
    return gens


def span_closure(generators: Sequence[np.ndarray], strategy: Strategy = "generators") -> MatrixSpan:
    """Smallest multiplication-closed rational span containing ``generators``.

    ``"generators"`` multiplies each new element on the left by every generator;
    since the algebra is spanned by words in the generators this reaches the same
    fixed point. ``"pairs"`` multiplies every new element by every element on both
    sides each round, which is slower and kept as a cross-check.
    """
    gens = _check_generators(generators)
    span = MatrixSpan(gens[0].shape[0], generators=gens)
    for g in gens:
        span.add(g)

    if strategy == "generators":
        work = list(span.elements)
        while work:
            w = work.pop()
            for g in gens:
                prod = exact.matmul(g, w)
                if span.add(prod):
                    work.append(prod)
    elif strategy == "pairs":
        new = list(span.elements)
        while new:
            old = span.elements[: len(span.elements) - len(new)]
            fresh = []
            for a in new:
                for b in old + new:
                    for prod in (exact.matmul(a, b), exact.matmul(b, a)):
                        if span.add(prod):
                            fresh.append(prod)
            new = fresh
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    span.closed = True
    return span


def span_closure_dimension(generators: Sequence[np.ndarray], strategy: Strategy = "generators") -> int:
    return span_closure(generators, strategy).dimension


def center_dimension(span: MatrixSpan) -> int:
    """Dimension of the center of a closed span.

    Solves ``sum_i x_i [B_i, G] = 0`` for every generator ``G`` (or every element
    when the span records no generators); commuting with a generating set is the
    same as commuting with the whole algebra.
    """
    if not span.closed:
        raise NotClosed("center_dimension needs a multiplication-closed span")
    tests = span.generators or span.elements
    rows = []
    for b in span.elements:
        rows.append(np.concatenate([
            (exact.matmul(b, g) - exact.matmul(g, b)).ravel() for g in tests
        ]))
    if not rows:
        return 0
    dtype = object if any(r.dtype == object for r in rows) else np.int64
    return span.dimension - exact.matrix_rank(np.array(rows, dtype=dtype))


@dataclass(frozen=True)
class WedderburnReport:
    base: tuple[int, int, int]
    oracle_dim: int
    predicted_dim: int | None
    predicted_summands: tuple[int, ...] | None
    center_dim: int | None = None

    @property
    def dim_match(self) -> bool | None:
        if self.predicted_dim is None:
            return None
        return self.predicted_dim == self.oracle_dim

    @property
    def center_match(self) -> bool | None:
        if self.predicted_summands is None or self.center_dim is None:
            return None
        return len(self.predicted_summands) == self.center_dim

    @property
    def match(self) -> bool | None:
        flags = [f for f in (self.dim_match, self.center_match) if f is not None]
        return all(flags) if flags else None


def terwilliger_generators(L: LatinSquare, p) -> list[np.ndarray]:
    return relation_matrices(L) + dual_idempotent_matrices(L, p)


def verify_wedderburn(L: LatinSquare, p, center: bool = False, strict: bool = False) -> WedderburnReport:
    """Compare the oracle dimension (and optionally center) with the prediction.

    For ``n <= 4`` there is no prediction; the oracle figures are still reported
    unless ``strict`` is set, in which case :class:`OrderTooSmall` is raised.
    """
    p = check_point(L, p)
    if L.order < 2:
        raise OrderTooSmall("the oracle needs n >= 2")
    predicted_dim = summands = None
    if L.order >= 5:
        _, _, sig = predict(L, p)
        predicted_dim, summands = sig.dimension, sig.summands
    elif strict:
        raise OrderTooSmall(f"no prediction for n = {L.order}")
    span = span_closure(terwilliger_generators(L, p))
    cdim = center_dimension(span) if center else None
    return WedderburnReport(tuple(p), span.dimension, predicted_dim, summands, cdim)
