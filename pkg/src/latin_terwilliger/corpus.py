"""Built-in example squares, stored as text assets under ``data/``."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .exceptions import UnknownCorpusName
from .quasigroup import LatinSquare, parse_latin_square

_FILES = {
    "fig1": "fig1.txt",
    "fig2": "fig2.txt",
    "fig3": "fig3.txt",
    "z4": "z4.txt",
    "z5": "z5.txt",
    "z6": "z6.txt",
    "z7": "z7.txt",
    "z8": "z8.txt",
    "z2^3": "z2-3.txt",
    "moufang12": "moufang12.txt",
    "steiner10": "steiner10.txt",
}

GROUPS = ("z4", "z5", "z6", "z7", "z8", "z2^3")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    square: LatinSquare
    text: str
    description: str
    # highlighted cells (row, column), read from a "# boxed:" comment
    boxed: frozenset[tuple[int, int]] = field(default_factory=frozenset)


def names() -> list[str]:
    return list(_FILES)


def _metadata(text: str) -> tuple[str, frozenset[tuple[int, int]]]:
    desc, boxed = [], set()
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("#"):
            continue
        body = line.lstrip("#").strip()
        if body.startswith("boxed:"):
            for cell in body[len("boxed:"):].split():
                r, c = cell.split(",")
                boxed.add((int(r), int(c)))
        else:
            desc.append(body)
    return " ".join(desc), frozenset(boxed)


@lru_cache(maxsize=None)
def load(name: str) -> CorpusEntry:
    try:
        filename = _FILES[name]
    except KeyError:
        raise UnknownCorpusName(f"no corpus entry {name!r}; known: {', '.join(_FILES)}") from None
    text = resources.files(__package__).joinpath("data", filename).read_text()
    desc, boxed = _metadata(text)
    return CorpusEntry(name, parse_latin_square(text), text, desc, boxed)


def square(name: str) -> LatinSquare:
    return load(name).square


def corpus() -> list[CorpusEntry]:
    return [load(n) for n in _FILES]
