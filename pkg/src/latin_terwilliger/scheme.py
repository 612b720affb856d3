"""The four-class association scheme of a Latin square.

Points are the ``n**2`` triples ``(row, column, entry)``; two points are in relation
``i`` (1, 2, 3) when they agree only in component ``i``, relation 0 when equal and
relation 4 when they agree nowhere. Relation matrices are never materialized here;
see :mod:`latin_terwilliger.oracle` for the dense versions.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .exceptions import (
    LatinSquareError,
    NotWellDefined,
    PointNotInArray,
    TwoComponentAgreement,
)
from .quasigroup import LatinSquare


class OrthogonalArrayPoint(NamedTuple):
    row: int
    column: int
    entry: int

    def __str__(self) -> str:
        return f"({self.row},{self.column},{self.entry})"


def orthogonal_array(L: LatinSquare) -> list[OrthogonalArrayPoint]:
    """All points of X(L), row-major."""
    return [
        OrthogonalArrayPoint(r, c, L.grid[r - 1][c - 1])
        for r in L.symbols
        for c in L.symbols
    ]


def point_index(L: LatinSquare, p: OrthogonalArrayPoint) -> int:
    """Position of ``p`` in :func:`orthogonal_array` order."""
    p = check_point(L, p)
    return (p.row - 1) * L.order + (p.column - 1)


def check_point(L: LatinSquare, p) -> OrthogonalArrayPoint:
    p = OrthogonalArrayPoint(*p)
    n = L.order
    if not (1 <= p.row <= n and 1 <= p.column <= n) or L.grid[p.row - 1][p.column - 1] != p.entry:
        raise PointNotInArray(f"{tuple(p)} is not a point of X(L)")
    return p


def base_point(L: LatinSquare, row: int, column: int) -> OrthogonalArrayPoint:
    """The point of X(L) in the given cell."""
    n = L.order
    if not (1 <= row <= n and 1 <= column <= n):
        raise PointNotInArray(f"cell ({row},{column}) is outside a square of order {n}")
    return OrthogonalArrayPoint(row, column, L.grid[row - 1][column - 1])


def relation_of(x, y) -> int:
    agree = [u == v for u, v in zip(x, y)]
    k = sum(agree)
    if k == 3:
        return 0
    if k == 0:
        return 4
    if k == 2:
        raise TwoComponentAgreement(f"{tuple(x)} and {tuple(y)} agree in exactly two components")
    return agree.index(True) + 1


def valencies(n: int) -> tuple[int, int, int, int, int]:
    return (1, n - 1, n - 1, n - 1, (n - 1) * (n - 2))


def relation_table(L: LatinSquare) -> np.ndarray:
    """``R[x, y] = relation_of(X[x], X[y])`` as an int8 array, for all point pairs."""
    P = np.array(orthogonal_array(L), dtype=np.int64)
    eq = P[:, None, :] == P[None, :, :]
    count = eq.sum(axis=-1)
    if np.any(count == 2):
        raise TwoComponentAgreement("two points agree in exactly two components")
    R = np.full(count.shape, 4, dtype=np.int8)
    R[count == 3] = 0
    for i in range(3):
        R[(count == 1) & eq[..., i]] = i + 1
    return R


def subconstituent_partition(L: LatinSquare, p) -> list[list[OrthogonalArrayPoint]]:
    """Cells ``{x : relation_of(p, x) == i}`` for ``i = 0..4``."""
    p = check_point(L, p)
    cells: list[list[OrthogonalArrayPoint]] = [[] for _ in range(5)]
    for x in orthogonal_array(L):
        cells[relation_of(p, x)].append(x)
    return cells


def _tensor(L: LatinSquare) -> np.ndarray:
    R = relation_table(L)
    N = R.shape[0]
    onehot = np.zeros((N, N, 5), dtype=np.int64)
    onehot[np.arange(N)[:, None], np.arange(N)[None, :], R] = 1
    tensor = np.full((5, 5, 5), -1, dtype=np.int64)
    for x in range(N):
        # counts[y, i, j] = #{z : R[x, z] = i and R[z, y] = j}
        counts = np.einsum("zi,zyj->yij", onehot[x], onehot)
        for h in range(5):
            ys = np.flatnonzero(R[x] == h)
            if ys.size == 0:
                continue
            block = counts[ys]
            rep = block[0]
            if not np.all(block == rep):
                raise NotWellDefined(f"counts for relation {h} vary with the pair")
            if tensor[h, 0, 0] < 0:
                tensor[h] = rep
            elif not np.array_equal(tensor[h], rep):
                raise NotWellDefined(f"counts for relation {h} vary with the pair")
    # relations with no pairs (relation 4 when n = 2) count nothing
    tensor[tensor[:, 0, 0] < 0] = 0
    return tensor


@lru_cache(maxsize=None)
def _reference_tensor(n: int) -> np.ndarray:
    cyclic = LatinSquare(tuple(tuple((r + c) % n + 1 for c in range(n)) for r in range(n)))
    t = _tensor(cyclic)
    t.setflags(write=False)
    return t


def intersection_numbers(L: LatinSquare) -> np.ndarray:
    """The tensor ``p[h, i, j]``, brute-forced over every pair of points.

    Every pair in a class must give the same counts, and the result must equal the
    tensor of the cyclic square of the same order; either failure raises
    :class:`NotWellDefined`.
    """
    n = L.order
    if n < 2:
        raise LatinSquareError("intersection numbers need n >= 2")
    t = _tensor(L)
    if not np.array_equal(t, _reference_tensor(n)):
        raise NotWellDefined(f"intersection numbers differ from other squares of order {n}")
    return t
