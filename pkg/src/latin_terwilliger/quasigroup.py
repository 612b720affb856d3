"""Latin squares as quasigroup Cayley tables, and loop-theoretic property checks.

Symbols are the integers ``1..n``. Element ``a`` labels row ``a`` and column ``a``,
so the entry at ``(a, b)`` is the product ``a*b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal

import numpy as np

from .exceptions import (
    ColumnRepeat,
    NotALoop,
    RaggedGrid,
    RowRepeat,
    SymbolOutOfRange,
)

Side = Literal["left", "right"]


@dataclass(frozen=True)
class LatinSquare:
    """An ``n x n`` Latin square over the symbols ``1..n``.

    ``labels`` optionally records the original tokens (``labels[s-1]`` is the
    token for symbol ``s``) when the input used non-numeric symbols; it is
    display-only and ignored by equality.
    """

    grid: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        grid = tuple(tuple(int(x) for x in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        n = len(grid)
        if n == 0:
            raise RaggedGrid("empty grid")
        for i, row in enumerate(grid, 1):
            if len(row) != n:
                raise RaggedGrid(f"row {i} has {len(row)} entries, expected {n}")
        symbols = set(range(1, n + 1))
        for i, row in enumerate(grid, 1):
            for x in row:
                if x not in symbols:
                    raise SymbolOutOfRange(f"symbol {x} in row {i} is outside 1..{n}")
            if len(set(row)) != n:
                raise RowRepeat(f"row {i} repeats a symbol")
        for j in range(n):
            if len({row[j] for row in grid}) != n:
                raise ColumnRepeat(f"column {j + 1} repeats a symbol")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "LatinSquare":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def order(self) -> int:
        return len(self.grid)

    @property
    def symbols(self) -> range:
        return range(1, self.order + 1)

    @cached_property
    def table(self) -> np.ndarray:
        """0-based Cayley table: ``table[a-1, b-1] == a*b - 1``. Read-only."""
        t = np.array(self.grid, dtype=np.intp) - 1
        t.setflags(write=False)
        return t

    @cached_property
    def _ldiv(self) -> np.ndarray:
        # _ldiv[a, b] = c with a*c = b   (0-based)
        n = self.order
        out = np.empty((n, n), dtype=np.intp)
        rows = np.arange(n)[:, None]
        out[rows, self.table] = np.arange(n)[None, :]
        out.setflags(write=False)
        return out

    @cached_property
    def _rdiv(self) -> np.ndarray:
        # _rdiv[a, b] = d with d*a = b   (0-based)
        n = self.order
        out = np.empty((n, n), dtype=np.intp)
        cols = np.arange(n)[None, :]
        out[cols, self.table] = np.arange(n)[:, None]
        out.setflags(write=False)
        return out

    def _check(self, *syms: int) -> None:
        n = self.order
        for s in syms:
            if not 1 <= s <= n:
                raise SymbolOutOfRange(f"symbol {s} is outside 1..{n}")

    def product(self, a: int, b: int) -> int:
        self._check(a, b)
        return self.grid[a - 1][b - 1]

    def left_divide(self, a: int, b: int) -> int:
        """The unique ``c`` with ``a*c == b``."""
        self._check(a, b)
        return int(self._ldiv[a - 1, b - 1]) + 1

    def right_divide(self, a: int, b: int) -> int:
        """The unique ``d`` with ``d*a == b``."""
        self._check(a, b)
        return int(self._rdiv[a - 1, b - 1]) + 1

    def transpose(self) -> "LatinSquare":
        return LatinSquare(tuple(zip(*self.grid)), self.labels)

    def to_text(self) -> str:
        width = len(str(self.order))
        return "".join(" ".join(f"{x:>{width}}" for x in row) + "\n" for row in self.grid)

    def __str__(self) -> str:
        return self.to_text()


def parse_latin_square(text: str) -> LatinSquare:
    """Parse the whitespace-separated text format.

    Lines whose first non-blank character is ``#`` are comments, blank lines are
    skipped, and the order is the length of the first row. Integer tokens must lie
    in ``1..n``. If any token is non-numeric, all tokens are relabelled ``1..n`` in
    order of first appearance and the originals are kept as ``labels``.
    """
    rows = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append(stripped.split())
    if not rows:
        raise RaggedGrid("no rows found")
    n = len(rows[0])
    for i, row in enumerate(rows, 1):
        if len(row) != n:
            raise RaggedGrid(f"row {i} has {len(row)} entries, expected {n}")
    if len(rows) != n:
        raise RaggedGrid(f"found {len(rows)} rows, expected {n}")

    tokens = [tok for row in rows for tok in row]
    if all(tok.lstrip("+-").isdigit() for tok in tokens):
        return LatinSquare(tuple(tuple(int(t) for t in row) for row in rows))

    index: dict[str, int] = {}
    for tok in tokens:
        if tok not in index:
            index[tok] = len(index) + 1
    if len(index) > n:
        raise SymbolOutOfRange(f"{len(index)} distinct symbols in a square of order {n}")
    labels = tuple(index)
    return LatinSquare(tuple(tuple(index[t] for t in row) for row in rows), labels)


def product(L: LatinSquare, a: int, b: int) -> int:
    return L.product(a, b)


def divide(L: LatinSquare, side: Side, a: int, b: int) -> int:
    """``side='left'``: the ``c`` with ``a*c == b``; ``side='right'``: the ``d`` with ``d*a == b``."""
    if side == "left":
        return L.left_divide(a, b)
    if side == "right":
        return L.right_divide(a, b)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


# ---------------------------------------------------------------------------
# Loops


@dataclass(frozen=True)
class LoopStructure:
    identity: int
    left_inv: dict[int, int]
    right_inv: dict[int, int]
    two_sided: dict[int, int]

    @property
    def s(self) -> int:
        """Number of self-inverse elements, the identity included."""
        return sum(1 for c, ci in self.two_sided.items() if c == ci)

    @property
    def all_two_sided(self) -> bool:
        return len(self.two_sided) == len(self.left_inv)

    def inverse(self, c: int) -> int:
        try:
            return self.two_sided[c]
        except KeyError:
            raise NotALoop(f"element {c} has no two-sided inverse") from None


def _identity_index(T: np.ndarray) -> int | None:
    idx = np.arange(T.shape[0])
    for e in range(T.shape[0]):
        if np.array_equal(T[e], idx) and np.array_equal(T[:, e], idx):
            return e
    return None


def loop_structure(L: LatinSquare) -> LoopStructure | None:
    """Identity and inverse maps, or ``None`` when ``L`` has no two-sided identity."""
    e = _identity_index(L.table)
    if e is None:
        return None
    iota = e + 1
    left = {c: L.right_divide(c, iota) for c in L.symbols}
    right = {c: L.left_divide(c, iota) for c in L.symbols}
    two = {c: left[c] for c in L.symbols if left[c] == right[c]}
    return LoopStructure(iota, left, right, two)


def require_loop(L: LatinSquare) -> LoopStructure:
    loop = loop_structure(L)
    if loop is None:
        raise NotALoop("the table has no two-sided identity")
    return loop


@dataclass(frozen=True)
class PropertyRecord:
    is_quasigroup: bool
    is_loop: bool
    is_group: bool
    is_right_bol: bool
    is_left_bol: bool
    is_moufang: bool
    has_rip: bool
    has_lip: bool
    has_aaip: bool
    is_commutative: bool
    # flag name -> "NoIdentity" | "NoTwoSidedInverse" | "Counterexample"
    reasons: dict[str, str] = field(default_factory=dict, compare=False)
    # flag name -> first failing tuple, 1-based, in lexicographic order
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict, compare=False)

    FLAGS = (
        "is_quasigroup", "is_loop", "is_group", "is_right_bol", "is_left_bol",
        "is_moufang", "has_rip", "has_lip", "has_aaip", "is_commutative",
    )

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.FLAGS}
        out["reasons"] = dict(sorted(self.reasons.items()))
        out["witnesses"] = {k: list(v) for k, v in sorted(self.witnesses.items())}
        return out


def _first_failure(ok: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(~ok)
    if bad.size == 0:
        return None
    return tuple(int(i) + 1 for i in bad[0])


def loop_properties(L: LatinSquare) -> PropertyRecord:
    """Decide every flag by exhaustive evaluation over all pairs or triples."""
    T = L.table
    n = L.order
    i = np.arange(n)
    reasons: dict[str, str] = {}
    witnesses: dict[str, tuple[int, ...]] = {}

    def decide(name: str, ok: np.ndarray) -> bool:
        w = _first_failure(ok)
        if w is None:
            return True
        reasons[name] = "Counterexample"
        witnesses[name] = w
        return False

    is_commutative = decide("is_commutative", T == T.T)

    a, b, c = i[:, None, None], i[None, :, None], i[None, None, :]
    associative = decide("is_group", T[T[a, b], c] == T[a, T[b, c]])

    loop = loop_structure(L)
    if loop is None:
        for name in ("is_loop", "is_group", "is_right_bol", "is_left_bol", "is_moufang",
                     "has_rip", "has_lip", "has_aaip"):
            reasons[name] = "NoIdentity"
        witnesses.pop("is_group", None)
        return PropertyRecord(True, False, False, False, False, False, False, False, False,
                              is_commutative, reasons, witnesses)

    # ((c a) b) a == c ((a b) a), indices ordered (a, b, c)
    right_bol = decide("is_right_bol", T[T[T[c, a], b], a] == T[c, T[T[a, b], a]])
    # a (b (a c)) == (a (b a)) c
    left_bol = decide("is_left_bol", T[a, T[b, T[a, c]]] == T[T[a, T[b, a]], c])
    moufang = right_bol and left_bol
    if not moufang:
        reasons["is_moufang"] = "Counterexample"

    if loop.all_two_sided:
        inv = np.array([loop.two_sided[x] - 1 for x in L.symbols])
        aa, bb = i[:, None], i[None, :]
        rip = decide("has_rip", T[T[aa, bb], inv[bb]] == aa)
        lip = decide("has_lip", T[inv[bb], T[bb, aa]] == aa)
        aaip = decide("has_aaip", inv[T[aa, bb]] == T[inv[bb], inv[aa]])
    else:
        rip = lip = aaip = False
        for name in ("has_rip", "has_lip", "has_aaip"):
            reasons[name] = "NoTwoSidedInverse"

    return PropertyRecord(
        is_quasigroup=True,
        is_loop=True,
        is_group=associative,
        is_right_bol=right_bol,
        is_left_bol=left_bol,
        is_moufang=moufang,
        has_rip=rip,
        has_lip=lip,
        has_aaip=aaip,
        is_commutative=is_commutative,
        reasons=reasons,
        witnesses=witnesses,
    )
