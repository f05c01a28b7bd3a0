import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cubic_lattices.lattice import IntLattice
from cubic_lattices.sampling import random_even_gram, random_positive_gram

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture
def record_criterion():
    def record(k: int, ok: bool, text: str):
        ACCEPTANCE[k] = (ok, text)
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")
    return record


@st.composite
def even_lattices(draw, max_rank: int = 6, max_entry: int = 8):
    seed = draw(st.integers(0, 2 ** 32))
    return IntLattice(random_even_gram(random.Random(seed), max_rank, max_entry))


@st.composite
def positive_lattices(draw, max_rank: int = 4, spread: int = 2, even: bool = False):
    seed = draw(st.integers(0, 2 ** 32))
    rank = draw(st.integers(1, max_rank))
    return IntLattice(random_positive_gram(random.Random(seed), rank, spread, even))
