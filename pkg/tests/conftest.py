from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hmatch.core import Sequence

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def seq(D: int, *nums: int) -> Sequence:
    return Sequence(D, tuple(nums))


def pct(*sizes: float) -> Sequence:
    """Sizes given as decimals with at most two places, over D = 100."""
    return Sequence(100, tuple(round(s * 100) for s in sizes))


@st.composite
def sequences(draw, max_n: int = 40, denoms=(10, 12, 96, 100, 1000, 1 << 20)):
    D = draw(st.sampled_from(denoms))
    items = draw(st.lists(st.integers(1, D), max_size=max_n))
    return Sequence(D, tuple(items))


@st.composite
def window_sequences(draw, lo_num: int, lo_den: int, hi_num: int, hi_den: int, max_n: int = 40,
                     D: int = 96 * 1000):
    """Sequences with every size in the half-open window (lo, hi]."""
    lo = lo_num * D // lo_den + 1
    hi = hi_num * D // hi_den
    items = draw(st.lists(st.integers(lo, hi), max_size=max_n))
    return Sequence(D, tuple(items))


def uniform(rng: random.Random, n: int, D: int = 1 << 20) -> Sequence:
    return Sequence(D, tuple(rng.randint(1, D) for _ in range(n)))


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance report: one line per criterion, shown after the run
ACCEPTANCE: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE[number], flush=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
