"""Exact integer row reduction.

Vectors are integer numpy arrays. Elimination is fraction free: a row operation
``v <- a*v - b*w`` keeps everything integral, and every stored row is divided by
the gcd of its entries afterwards so entries stay small. Arithmetic runs in int64
whenever a bound check proves it cannot overflow and falls back to Python
integers (``dtype=object``) otherwise, so results are exact either way.
"""

from __future__ import annotations

import math
from functools import reduce

import numpy as np

# Largest magnitude we allow an int64 intermediate to reach.
_SAFE = 1 << 62


def _maxabs(v: np.ndarray) -> int:
    if v.size == 0:
        return 0
    if v.dtype == object:
        return max(abs(int(x)) for x in v.flat)
    return int(np.abs(v).max())


def _to_object(v: np.ndarray) -> np.ndarray:
    if v.dtype == object:
        return v
    out = np.empty(v.shape, dtype=object)
    out.flat[:] = [int(x) for x in v.flat]
    return out


def _shrink(v: np.ndarray) -> np.ndarray:
    """Return an int64 copy of ``v`` when its entries fit, else ``v`` itself."""
    if v.dtype == object and _maxabs(v) < _SAFE:
        return v.astype(np.int64)
    return v


def as_integer_array(a) -> np.ndarray:
    """Coerce ``a`` into an exact integer array (int64 or object)."""
    arr = np.asarray(a)
    if arr.dtype == object:
        if not all(isinstance(x, (int, np.integer)) for x in arr.flat):
            raise TypeError("exact arrays must hold integers")
        return _shrink(arr)
    if not np.issubdtype(arr.dtype, np.integer) and arr.dtype != bool:
        raise TypeError(f"exact arrays must hold integers, got {arr.dtype}")
    return arr.astype(np.int64)


def combine(a: int, v: np.ndarray, b: int, w: np.ndarray) -> np.ndarray:
    """Exact ``a*v - b*w``."""
    a, b = int(a), int(b)
    bound = abs(a) * _maxabs(v) + abs(b) * _maxabs(w)
    if bound < _SAFE and v.dtype != object and w.dtype != object:
        return a * v - b * w
    return _shrink(a * _to_object(v) - b * _to_object(w))


def matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exact matrix product of two integer matrices."""
    bound = _maxabs(x) * _maxabs(y) * max(x.shape[1], 1)
    if bound < _SAFE and x.dtype != object and y.dtype != object:
        return x @ y
    return _shrink(_to_object(x) @ _to_object(y))


def primitive(v: np.ndarray) -> np.ndarray:
    """Divide out the content of ``v`` and make its leading entry positive."""
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return v
    if v.dtype == object:
        g = reduce(math.gcd, (abs(int(x)) for x in v[nz]))
    else:
        g = int(np.gcd.reduce(np.abs(v[nz])))
    if v[nz[0]] < 0:
        g = -g
    if g != 1:
        v = v // g
    return v


class RowEchelon:
    """Reduced row echelon basis of a subspace of Q^length, built one vector at a time.

    Rows are primitive integer vectors. Each row has a pivot column in which every
    other row is zero.
    """

    def __init__(self, length: int):
        self.length = length
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v) -> np.ndarray:
        """Return the primitive remainder of ``v`` modulo the current span."""
        v = as_integer_array(v).ravel()
        if v.shape[0] != self.length:
            raise ValueError(f"expected a vector of length {self.length}, got {v.shape[0]}")
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                v = primitive(combine(row[p], v, v[p], row))
        return primitive(v)

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def add(self, v) -> bool:
        """Adjoin ``v``; return True when it enlarged the span."""
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        q = int(nz[0])
        for i, row in enumerate(self.rows):
            if row[q] != 0:
                self.rows[i] = primitive(combine(r[q], row, row[q], r))
        self.rows.append(r)
        self.pivots.append(q)
        return True

    def extend(self, vectors) -> int:
        """Adjoin several vectors and return how many enlarged the span."""
        return sum(self.add(v) for v in vectors)


def rank(vectors, length: int | None = None) -> int:
    """Exact rank over the rationals of a collection of integer vectors."""
    vectors = [as_integer_array(v).ravel() for v in vectors]
    if not vectors:
        return 0
    ech = RowEchelon(length if length is not None else vectors[0].shape[0])
    ech.extend(vectors)
    return ech.rank


def nullity(vectors) -> int:
    """Dimension of the space of rational relations among ``vectors``."""
    vectors = list(vectors)
    return len(vectors) - rank(vectors)


def _row_contents(M: np.ndarray) -> np.ndarray:
    if M.dtype == object:
        g = np.array([reduce(math.gcd, (abs(int(x)) for x in row), 0) for row in M], dtype=object)
    else:
        g = np.gcd.reduce(np.abs(M), axis=1)
    g[g == 0] = 1
    return g


def matrix_rank(M) -> int:
    """Exact rank of an integer matrix by whole-matrix fraction-free elimination.

    Equivalent to :func:`rank` on the rows but vectorized: each pivot step updates
    every remaining row at once, then divides each row by its content.
    """
    M = as_integer_array(M)
    if M.ndim != 2 or M.size == 0:
        return 0
    # identical columns cannot change the rank
    if M.dtype != object:
        M = np.unique(M, axis=1)
    r = 0
    rows, cols = M.shape
    for col in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, col])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        below = M[r + 1:]
        factors = below[:, col].copy()
        hit = np.flatnonzero(factors)
        if hit.size:
            a = M[r, col]
            sub = below[hit]
            f = factors[hit][:, None]
            bound = abs(int(a)) * _maxabs(sub) + _maxabs(f) * _maxabs(M[r])
            if bound >= _SAFE and M.dtype != object:
                M = _to_object(M)
                below, sub, f = M[r + 1:], M[r + 1:][hit], _to_object(f)
            new = a * sub - f * M[r][None, :]
            new //= _row_contents(new)[:, None]
            below[hit] = new
            M[r + 1:] = below
        r += 1
    return r
