"""Isotopies and conjugacies of Latin squares, and the matching maps on base points."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Union

import numpy as np

from .exceptions import LatinSquareError
from .quasigroup import LatinSquare
from .scheme import OrthogonalArrayPoint, check_point, orthogonal_array

Perm = tuple[int, ...]


def _check_perm(perm: Perm, n: int, what: str) -> Perm:
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise LatinSquareError(f"{what} is not a permutation of 1..{n}: {perm}")
    return perm


def _compose(second: Perm, first: Perm) -> Perm:
    return tuple(second[x - 1] for x in first)


@dataclass(frozen=True)
class Isotopy:
    """Permutations of rows, columns and entries, in one-line image notation
    (``sigma_r[i-1]`` is the image of ``i``)."""

    sigma_r: Perm
    sigma_c: Perm
    sigma_e: Perm

    def __post_init__(self):
        n = len(self.sigma_r)
        for name in ("sigma_r", "sigma_c", "sigma_e"):
            object.__setattr__(self, name, _check_perm(getattr(self, name), n, name))

    @property
    def order(self) -> int:
        return len(self.sigma_r)

    @classmethod
    def identity(cls, n: int) -> "Isotopy":
        ident = tuple(range(1, n + 1))
        return cls(ident, ident, ident)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Isotopy":
        return cls(*(tuple(int(x) + 1 for x in rng.permutation(n)) for _ in range(3)))

    @classmethod
    def parse(cls, text: str) -> "Isotopy":
        """Three non-comment lines, each a one-line permutation image list."""
        lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if len(lines) != 3:
            raise LatinSquareError(f"an isotopy needs 3 permutation lines, got {len(lines)}")
        try:
            perms = [tuple(int(t) for t in ln) for ln in lines]
        except ValueError as exc:
            raise LatinSquareError(f"bad isotopy token: {exc}") from None
        if len({len(p) for p in perms}) != 1:
            raise LatinSquareError("isotopy permutations have different lengths")
        return cls(*perms)

    def then(self, other: "Isotopy") -> "Isotopy":
        """The isotopy applying ``self`` first, then ``other``."""
        return Isotopy(
            _compose(other.sigma_r, self.sigma_r),
            _compose(other.sigma_c, self.sigma_c),
            _compose(other.sigma_e, self.sigma_e),
        )

    def map_point(self, p: OrthogonalArrayPoint) -> OrthogonalArrayPoint:
        return OrthogonalArrayPoint(
            self.sigma_r[p.row - 1], self.sigma_c[p.column - 1], self.sigma_e[p.entry - 1]
        )


_LETTERS = "rce"


@dataclass(frozen=True)
class Conjugacy:
    """A permutation of the three coordinates of orthogonal-array points.

    ``sigma[i-1]`` is the position that component ``i`` moves to. The word form
    lists, for positions 1, 2, 3, which component lands there: ``"cre"`` puts the
    column first and the row second, i.e. transposition.
    """

    sigma: tuple[int, int, int]

    def __post_init__(self):
        sigma = tuple(int(x) for x in self.sigma)
        if sorted(sigma) != [1, 2, 3]:
            raise LatinSquareError(f"conjugacy must permute (1, 2, 3), got {sigma}")
        object.__setattr__(self, "sigma", sigma)

    @classmethod
    def from_word(cls, word: str) -> "Conjugacy":
        word = word.strip().lower()
        if sorted(word) != sorted(_LETTERS):
            raise LatinSquareError(f"conjugacy word must use each of r, c, e once: {word!r}")
        sigma = [0, 0, 0]
        for pos, letter in enumerate(word, 1):
            sigma[_LETTERS.index(letter)] = pos
        return cls(tuple(sigma))

    @property
    def word(self) -> str:
        out = [""] * 3
        for comp, pos in enumerate(self.sigma):
            out[pos - 1] = _LETTERS[comp]
        return "".join(out)

    def map_point(self, p: OrthogonalArrayPoint) -> OrthogonalArrayPoint:
        out = [0, 0, 0]
        for comp, pos in enumerate(self.sigma):
            out[pos - 1] = p[comp]
        return OrthogonalArrayPoint(*out)


ALL_CONJUGACIES = tuple(Conjugacy.from_word("".join(w)) for w in permutations(_LETTERS))

Transform = Union[Isotopy, Conjugacy]


def _from_points(points, n: int) -> LatinSquare:
    grid = [[0] * n for _ in range(n)]
    for r, c, e in points:
        grid[r - 1][c - 1] = e
    return LatinSquare(tuple(map(tuple, grid)))


def apply_isotopy(L: LatinSquare, iso: Isotopy) -> LatinSquare:
    if iso.order != L.order:
        raise LatinSquareError(f"isotopy of order {iso.order} applied to a square of order {L.order}")
    return _from_points((iso.map_point(p) for p in orthogonal_array(L)), L.order)


def apply_conjugacy(L: LatinSquare, conj: Conjugacy) -> LatinSquare:
    return _from_points((conj.map_point(p) for p in orthogonal_array(L)), L.order)


def apply_transform(L: LatinSquare, t: Transform) -> LatinSquare:
    if isinstance(t, Isotopy):
        return apply_isotopy(L, t)
    return apply_conjugacy(L, t)


def map_base_point(L: LatinSquare, p: OrthogonalArrayPoint, t: Transform) -> OrthogonalArrayPoint:
    """Image of the base point ``p`` of ``L`` in the transformed square."""
    check_point(L, p)
    return t.map_point(p)
