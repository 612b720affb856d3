import numpy as np
import pytest
from hypothesis import strategies as st

from latin_terwilliger import corpus
from latin_terwilliger.quasigroup import LatinSquare
from latin_terwilliger.search import random_latin_square

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run exhaustive oracle sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="exhaustive sweep; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, desc = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {desc}")


@pytest.fixture(scope="session")
def fig1():
    return corpus.square("fig1")


@pytest.fixture(scope="session")
def fig2():
    return corpus.square("fig2")


@pytest.fixture(scope="session")
def fig3():
    return corpus.square("fig3")


def cyclic(n: int) -> LatinSquare:
    return LatinSquare(tuple(tuple((r + c) % n + 1 for c in range(n)) for r in range(n)))


def brute_mul(L: LatinSquare):
    """Plain-Python product, independent of the numpy tables."""
    return lambda a, b: L.grid[a - 1][b - 1]


def brute_inverse(L: LatinSquare, identity: int):
    m = brute_mul(L)
    out = {}
    for a in L.symbols:
        right = [b for b in L.symbols if m(a, b) == identity]
        left = [b for b in L.symbols if m(b, a) == identity]
        if right == left:
            out[a] = right[0]
    return out


@st.composite
def latin_squares(draw, min_order=1, max_order=7):
    n = draw(st.integers(min_order, max_order))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_latin_square(n, np.random.default_rng(seed))
