"""Random loops with the right inverse property, for probing the pi^2 criterion."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .quasigroup import LatinSquare
from .scheme import orthogonal_array
from .subconstituent import pi_square_criterion, properties


class _Budget(Exception):
    pass


def _random_involution(n: int, rng: np.random.Generator) -> list[int]:
    """A random involution of 0..n-1 fixing 0."""
    J = list(range(n))
    rest = [int(x) for x in rng.permutation(np.arange(1, n))]
    while len(rest) >= 2 and rng.random() < 0.75:
        a, b = rest.pop(), rest.pop()
        J[a], J[b] = b, a
    return J


def random_rip_loop(n: int, rng: np.random.Generator, node_limit: int = 20000) -> LatinSquare | None:
    """Randomized backtracking search for a loop of order ``n`` with ``(ab)b^-1 = a``.

    Identity is symbol 1. The inverse map is drawn first; placing ``ab = v`` then
    forces ``v * b^-1 = a``. Returns None when the node budget runs out.
    """
    J = _random_involution(n, rng)
    T = [[-1] * n for _ in range(n)]
    rows = [set() for _ in range(n)]
    cols = [set() for _ in range(n)]
    stack: list[tuple[int, int]] = []

    def put(a: int, b: int, v: int) -> bool:
        if T[a][b] == v:
            return True
        if T[a][b] != -1 or v in rows[a] or v in cols[b]:
            return False
        T[a][b] = v
        rows[a].add(v)
        cols[b].add(v)
        stack.append((a, b))
        return True

    def undo(mark: int) -> None:
        while len(stack) > mark:
            a, b = stack.pop()
            v = T[a][b]
            rows[a].discard(v)
            cols[b].discard(v)
            T[a][b] = -1

    def assign(a: int, b: int, v: int) -> bool:
        return put(a, b, v) and put(v, J[b], a)

    for x in range(n):
        if not (assign(0, x, x) and assign(x, 0, x)):
            return None

    nodes = 0

    def solve() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise _Budget
        best = None
        for a in range(n):
            for b in range(n):
                if T[a][b] == -1:
                    cand = [v for v in range(n) if v not in rows[a] and v not in cols[b]]
                    if best is None or len(cand) < len(best[2]):
                        best = (a, b, cand)
        if best is None:
            return True
        a, b, cand = best
        for v in rng.permutation(cand):
            mark = len(stack)
            if assign(a, b, int(v)) and solve():
                return True
            undo(mark)
        return False

    try:
        if not solve():
            return None
    except _Budget:
        return None
    return LatinSquare(tuple(tuple(v + 1 for v in row) for row in T))


def random_latin_square(n: int, rng: np.random.Generator) -> LatinSquare:
    """A random Latin square by row-by-row randomized backtracking (not uniform)."""
    while True:
        grid = [[-1] * n for _ in range(n)]
        cols = [set() for _ in range(n)]

        def fill(r: int, c: int, used: set) -> bool:
            if c == n:
                return True
            for v in rng.permutation(n):
                v = int(v)
                if v in used or v in cols[c]:
                    continue
                grid[r][c] = v
                used.add(v)
                cols[c].add(v)
                if fill(r, c + 1, used):
                    return True
                used.discard(v)
                cols[c].discard(v)
            return False

        ok = True
        for r in range(n):
            if not fill(r, 0, set()):
                ok = False
                break
        if ok:
            return LatinSquare(tuple(tuple(v + 1 for v in row) for row in grid))


@dataclass
class CriterionSearchResult:
    seed: int
    loops: int = 0
    checks: int = 0
    agreements: int = 0
    # (order, base point, c) where pi^2(c) != c and both sides of the identity differ
    both_false: list[tuple[int, tuple[int, int, int], int]] = field(default_factory=list)
    non_bol_loops: int = 0

    @property
    def all_agree(self) -> bool:
        return self.agreements == self.checks


def criterion_search(budget: int = 20, orders=(5, 6, 7, 8), seed: int = 0,
                     attempts_per_loop: int = 50) -> CriterionSearchResult:
    """Draw ``budget`` random RIP loops over ``orders`` and evaluate the pi^2 criterion
    at every base point and column."""
    rng = np.random.default_rng(seed)
    res = CriterionSearchResult(seed)
    orders = tuple(orders)
    for i in range(budget):
        n = orders[i % len(orders)]
        L = None
        for _ in range(attempts_per_loop):
            L = random_rip_loop(n, rng)
            if L is not None:
                break
        if L is None:
            continue
        res.loops += 1
        if not properties(L).is_right_bol:
            res.non_bol_loops += 1
        for p in orthogonal_array(L):
            for c in L.symbols:
                if c == p.column:
                    continue
                ident, square = pi_square_criterion(L, p, c)
                res.checks += 1
                res.agreements += ident == square
                if not square and len(res.both_false) < 10:
                    res.both_false.append((n, tuple(p), c))
    return res
