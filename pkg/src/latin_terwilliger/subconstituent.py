"""The base-point permutation of a Latin square and what it predicts.

For a base point ``p = (r_p, c_p, e_p)`` the permutation ``pi`` acts on the columns
other than ``c_p``. Its cycle type fixes the irreducible modules of the Terwilliger
algebra at ``p`` and hence the algebra's Wedderburn shape
``M5 + N*M6 + M1``. Roots of unity are kept as exact fractions of a full turn.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Mapping, Union

from .exceptions import (
    InternalConsistencyError,
    NoRIP,
    NotALoop,
    NotMoufang,
    NotRightBol,
    OrderTooSmall,
)
from .quasigroup import LatinSquare, loop_properties, loop_structure, require_loop
from .scheme import OrthogonalArrayPoint, base_point, check_point, orthogonal_array


@lru_cache(maxsize=256)
def properties(L: LatinSquare):
    """Cached :func:`loop_properties`; squares are immutable and hashable."""
    return loop_properties(L)


# ---------------------------------------------------------------------------
# Permutations and cycle types


@dataclass(frozen=True)
class SubPermutation:
    """A permutation of ``{1..n} - {c_p}``."""

    c_p: int
    mapping: Mapping[int, int]

    def __post_init__(self):
        mapping = dict(sorted(self.mapping.items()))
        if set(mapping) != set(mapping.values()):
            raise InternalConsistencyError("pi is not a bijection of its domain")
        object.__setattr__(self, "mapping", mapping)

    def __call__(self, c: int) -> int:
        return self.mapping[c]

    def __eq__(self, other):
        if not isinstance(other, SubPermutation):
            return NotImplemented
        return self.c_p == other.c_p and self.mapping == other.mapping

    def __hash__(self):
        return hash((self.c_p, tuple(self.mapping.items())))

    @property
    def domain(self) -> list[int]:
        return list(self.mapping)

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles including 1-cycles, each starting at its least element,
        ordered by that element."""
        seen: set[int] = set()
        out = []
        for start in self.mapping:
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            c = self.mapping[start]
            while c != start:
                cyc.append(c)
                seen.add(c)
                c = self.mapping[c]
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def fixed_points(self) -> list[int]:
        return [c for c, d in self.mapping.items() if c == d]

    def is_involution(self) -> bool:
        return all(self.mapping[d] == c for c, d in self.mapping.items())

    def cycle_structure(self) -> "CycleStructure":
        return cycle_structure(self)

    def __str__(self) -> str:
        moved = [c for c in self.cycles if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in moved)


@dataclass(frozen=True)
class CycleStructure:
    """Multiset of cycle lengths, ``lengths[m]`` = number of cycles of length ``m``."""

    lengths: tuple[tuple[int, int], ...]

    @classmethod
    def from_lengths(cls, lengths) -> "CycleStructure":
        return cls(tuple(sorted(Counter(lengths).items())))

    @classmethod
    def parse(cls, text: str) -> "CycleStructure":
        """Read the ``"1^3 2^2"`` notation (an exponent of 1 may be omitted)."""
        counts: Counter = Counter()
        for tok in text.split():
            base, _, exp = tok.partition("^")
            counts[int(base)] += int(exp) if exp else 1
        return cls(tuple(sorted(counts.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.lengths)

    @property
    def k(self) -> int:
        """Number of cycles."""
        return sum(m for _, m in self.lengths)

    @property
    def size(self) -> int:
        return sum(length * m for length, m in self.lengths)

    @property
    def fixed(self) -> int:
        return self.as_dict().get(1, 0)

    def __str__(self) -> str:
        if not self.lengths:
            return "-"
        return " ".join(f"{ln}^{m}" if m > 1 else f"{ln}" for ln, m in self.lengths)


def cycle_structure(perm: SubPermutation) -> CycleStructure:
    return CycleStructure.from_lengths(len(c) for c in perm.cycles)


# ---------------------------------------------------------------------------
# Computing pi


def pi_of(L: LatinSquare, p) -> SubPermutation:
    """Follow the auxiliary-point walk x -> y -> z through X(L) for every column.

    This walks the orthogonal array by search and never uses the division tables,
    so it is an independent route to :func:`pi_via_division`.
    """
    r_p, c_p, e_p = check_point(L, p)
    X = orthogonal_array(L)
    by_column: dict[int, list[OrthogonalArrayPoint]] = {}
    by_row: dict[int, list[OrthogonalArrayPoint]] = {}
    for pt in X:
        by_column.setdefault(pt.column, []).append(pt)
        by_row.setdefault(pt.row, []).append(pt)
    mapping = {}
    for c in L.symbols:
        if c == c_p:
            continue
        x = next(pt for pt in by_row[r_p] if pt.column == c)
        y = next(pt for pt in by_column[c_p] if pt.entry == x.entry)
        z = next(pt for pt in by_row[y.row] if pt.entry == e_p)
        mapping[c] = z.column
    return SubPermutation(c_p, mapping)


def pi_via_division(L: LatinSquare, p) -> SubPermutation:
    """pi from quasigroup division: ``r*c_p = r_p*c`` and ``r*pi(c) = r_p*c_p``."""
    r_p, c_p, e_p = check_point(L, p)
    mapping = {}
    for c in L.symbols:
        if c == c_p:
            continue
        r = L.right_divide(c_p, L.product(r_p, c))
        mapping[c] = L.left_divide(r, e_p)
    return SubPermutation(c_p, mapping)


def _pi_fast(L: LatinSquare, r_p: int, c_p: int) -> dict[int, int]:
    T, rdiv, ldiv = L.table, L._rdiv, L._ldiv
    r0, c0 = r_p - 1, c_p - 1
    e0 = T[r0, c0]
    return {
        c + 1: int(ldiv[rdiv[c0, T[r0, c]], e0]) + 1
        for c in range(L.order)
        if c != c0
    }


def bol_pi_formula(L: LatinSquare, p) -> SubPermutation:
    """pi for a right Bol loop, from ``pi(c) = (c_p c^-1) c_p``."""
    r_p, c_p, e_p = check_point(L, p)
    if not properties(L).is_right_bol:
        raise NotRightBol("bol_pi_formula needs a right Bol loop table")
    loop = require_loop(L)
    mapping = {
        c: L.product(L.product(c_p, loop.inverse(c)), c_p)
        for c in L.symbols
        if c != c_p
    }
    return SubPermutation(c_p, mapping)


# ---------------------------------------------------------------------------
# Module table and Wedderburn shape

Label = Union[str, Fraction]


def root_label(eps: Fraction) -> str:
    """Render ``exp(2 pi i * eps)`` compactly: ``"1"``, ``"-1"`` or ``"e(j/m)"``."""
    if eps == 0:
        return "1"
    if eps == Fraction(1, 2):
        return "-1"
    return f"e({eps.numerator}/{eps.denominator})"


@dataclass(frozen=True)
class ModuleEntry:
    dimension: int
    multiplicity: int
    label: Label

    @property
    def label_str(self) -> str:
        if isinstance(self.label, Fraction):
            return root_label(self.label)
        return self.label


@dataclass(frozen=True)
class ModuleTable:
    """Irreducible-module classes predicted from a cycle type.

    ``roots`` is the set U of all ``|C_i|``-th roots of unity, as turns in [0, 1).
    """

    n: int
    cycles: CycleStructure
    entries: tuple[ModuleEntry, ...]
    roots: frozenset[Fraction] = field(repr=False)

    @property
    def k(self) -> int:
        return self.cycles.k

    @property
    def balance(self) -> int:
        return sum(e.dimension * e.multiplicity for e in self.entries)

    def multiplicity_of(self, eps: Fraction) -> int:
        for e in self.entries:
            if e.label == eps:
                return e.multiplicity
        return 0


def roots_of_unity(cycles: CycleStructure) -> frozenset[Fraction]:
    return frozenset(Fraction(j, m) for m, _ in cycles.lengths for j in range(m))


def module_table(n: int, cycles: CycleStructure) -> ModuleTable:
    if n <= 4:
        raise OrderTooSmall(f"the module table is only defined for n >= 5, got n = {n}")
    if cycles.size != n - 1:
        raise ValueError(f"cycle type {cycles} does not act on {n - 1} points")
    lengths = cycles.as_dict()
    U = roots_of_unity(cycles)
    entries = [ModuleEntry(5, 1, "primary"), ModuleEntry(1, n * n - 6 * n + 7, "one-dim")]
    for eps in sorted(U - {Fraction(0)}):
        # eps lies in u_i exactly when its order divides |C_i|
        mult = sum(m for length, m in lengths.items() if length % eps.denominator == 0)
        entries.append(ModuleEntry(6, mult, eps))
    if cycles.k > 1:
        entries.append(ModuleEntry(6, cycles.k - 1, "class-(iv)"))
    return ModuleTable(n, cycles, tuple(entries), U)


@dataclass(frozen=True)
class WedderburnSignature:
    N: int

    @property
    def summands(self) -> tuple[int, ...]:
        return (5,) + (6,) * self.N + (1,)

    @property
    def dimension(self) -> int:
        return sum(d * d for d in self.summands)

    @property
    def center_dimension(self) -> int:
        return self.N + 2

    def __str__(self) -> str:
        six = "M6" if self.N == 1 else f"M6^{self.N}"
        return f"M5 + {six} + M1"


def wedderburn_signature(table: ModuleTable) -> WedderburnSignature:
    u = len(table.roots)
    return WedderburnSignature(u - 1 if table.k == 1 else u)


def predict(L: LatinSquare, p) -> tuple[SubPermutation, ModuleTable, WedderburnSignature]:
    perm = pi_via_division(L, p)
    table = module_table(L.order, cycle_structure(perm))
    return perm, table, wedderburn_signature(table)


# ---------------------------------------------------------------------------
# Sweeps over all base points


@dataclass(frozen=True)
class FixedPointProfile:
    structures: tuple[tuple[CycleStructure, ...], ...]  # [row-1][column-1]

    @property
    def fixed_counts(self) -> list[list[int]]:
        return [[cs.fixed for cs in row] for row in self.structures]

    def column_structures(self) -> list[CycleStructure | None]:
        """Per column, the common cycle type of its base points, or None if rows differ."""
        out = []
        for j in range(len(self.structures)):
            col = {row[j] for row in self.structures}
            out.append(col.pop() if len(col) == 1 else None)
        return out

    @property
    def row_constant(self) -> bool:
        return all(cs is not None for cs in self.column_structures())

    def cells_with(self, cs: CycleStructure) -> list[tuple[int, int]]:
        return [
            (r + 1, c + 1)
            for r, row in enumerate(self.structures)
            for c, other in enumerate(row)
            if other == cs
        ]


def _row_structures(L: LatinSquare, r: int) -> tuple[CycleStructure, ...]:
    return tuple(
        cycle_structure(SubPermutation(c, _pi_fast(L, r, c))) for c in L.symbols
    )


def fixed_point_profile(L: LatinSquare, jobs: int | None = 1) -> FixedPointProfile:
    """Cycle type of pi at every base point. ``jobs=None`` uses every core; rows are
    merged in order whatever the scheduling."""
    if L.order < 2:
        raise OrderTooSmall("a profile needs n >= 2")
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            rows = tuple(pool.map(lambda r: _row_structures(L, r), L.symbols))
    else:
        rows = tuple(_row_structures(L, r) for r in L.symbols)
    return FixedPointProfile(rows)


def iter_base_points(L: LatinSquare) -> Iterator[OrthogonalArrayPoint]:
    return iter(orthogonal_array(L))


# ---------------------------------------------------------------------------
# Loop-specific predictions


def moufang_fixed_prediction(L: LatinSquare) -> int:
    """``s - 1``: the fixed-point count of pi at every base point of a Moufang loop."""
    if not properties(L).is_moufang:
        raise NotMoufang("the table is not a Moufang loop")
    return require_loop(L).s - 1


@dataclass(frozen=True)
class IdentityCycleRecord:
    element: int
    cycle_length: int
    # least k with rho^(k-1)(c) == lambda(c), searched independently of pi
    inverse_chain_length: int | None
    two_sided: bool
    pi_squared_fixes: bool
    pi_is_inverse: bool | None  # None when c has no two-sided inverse


def identity_base_cycles(L: LatinSquare) -> list[IdentityCycleRecord]:
    """Per-element cycle data of pi at the base point (iota, iota, iota)."""
    loop = loop_structure(L)
    if loop is None:
        raise NotALoop("identity_base_cycles needs a loop")
    iota = loop.identity
    perm = pi_via_division(L, (iota, iota, iota))
    length_of = {c: len(cyc) for cyc in perm.cycles for c in cyc}
    out = []
    for c in perm.domain:
        chain, k = c, None
        for step in range(1, L.order + 1):
            if chain == loop.left_inv[c]:
                k = step
                break
            chain = loop.right_inv[chain]
        two = c in loop.two_sided
        out.append(IdentityCycleRecord(
            element=c,
            cycle_length=length_of[c],
            inverse_chain_length=k,
            two_sided=two,
            pi_squared_fixes=perm(perm(c)) == c,
            pi_is_inverse=(perm(c) == loop.two_sided[c]) if two else None,
        ))
    return out


def pi_square_criterion(L: LatinSquare, p, c: int) -> tuple[bool, bool]:
    """Return ``(lhs == rhs, pi^2(c) == c)`` for the identity
    ``((r_p c) c_p^-1) pi(c) == ((r_p pi(c)) c_p^-1) c``; in a loop with the
    right inverse property the two always agree."""
    r_p, c_p, _ = check_point(L, p)
    if not properties(L).has_rip:
        raise NoRIP("pi_square_criterion needs a loop with the right inverse property")
    if c == c_p:
        raise ValueError("c must differ from the base column")
    inv = require_loop(L).inverse
    perm = pi_via_division(L, (r_p, c_p, L.product(r_p, c_p)))
    m = L.product
    pc = perm(c)
    lhs = m(m(m(r_p, c), inv(c_p)), pc)
    rhs = m(m(m(r_p, pc), inv(c_p)), c)
    return lhs == rhs, perm(pc) == c


@dataclass(frozen=True)
class Certificate:
    certified: bool
    reason: str | None = None
    detail: str | None = None

    def __str__(self) -> str:
        if self.certified:
            return "certified-right-bol"
        return f"hypothesis-failed({self.reason})"


def right_bol_certificate(L: LatinSquare) -> Certificate:
    """Check the hypotheses of the converse criterion: a loop with the right inverse
    property whose pi is an involution given by ``(c_p c^-1) c_p`` everywhere."""
    loop = loop_structure(L)
    if loop is None:
        return Certificate(False, "NotALoop", "no two-sided identity")
    if not loop.all_two_sided:
        bad = min(set(loop.left_inv) - set(loop.two_sided))
        return Certificate(False, "NoTwoSidedInverse", f"element {bad}")
    props = properties(L)
    if not props.has_rip:
        a, b = props.witnesses["has_rip"]
        return Certificate(False, "NoRIP", f"({a}*{b})*{b}^-1 != {a}")
    inv = loop.two_sided
    for r in L.symbols:
        for c_p in L.symbols:
            pi = _pi_fast(L, r, c_p)
            for c, d in pi.items():
                if pi[d] != c:
                    return Certificate(False, "PiNotInvolution", f"base ({r},{c_p}), c = {c}")
                if d != L.product(L.product(c_p, inv[c]), c_p):
                    return Certificate(False, "PiFormulaMismatch", f"base ({r},{c_p}), c = {c}")
    if not props.is_right_bol:
        raise InternalConsistencyError("certificate issued for a table that is not right Bol")
    return Certificate(True)


__all__ = [
    "SubPermutation", "CycleStructure", "ModuleEntry", "ModuleTable", "WedderburnSignature",
    "FixedPointProfile", "IdentityCycleRecord", "Certificate",
    "pi_of", "pi_via_division", "bol_pi_formula", "cycle_structure", "module_table",
    "wedderburn_signature", "predict", "fixed_point_profile", "moufang_fixed_prediction",
    "identity_base_cycles", "pi_square_criterion", "right_bol_certificate", "roots_of_unity",
    "base_point", "iter_base_points",
]
