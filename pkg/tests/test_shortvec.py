import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from cubic_lattices import linalg as la
from cubic_lattices.catalog import A2, D4, E8, U
from cubic_lattices.lattice import IntLattice, diagonal
from cubic_lattices.sampling import random_positive_gram
from cubic_lattices.shortvec import (
    THREADS_ENV,
    NotPositiveDefinite,
    RelativeLongRootQuery,
    box_enumeration,
    has_roots,
    lll_reduce,
    long_roots,
    minimum,
    relative_long_roots,
    roots,
    short_vectors,
)

from conftest import positive_lattices
from oracles import e8_box_vectors, simple_root_gram


@pytest.mark.parametrize("lat,bound", [(A2, 6), (D4, 4), (diagonal([4, 4, 6, 8]), 10)])
def test_matches_box_enumeration(lat, bound):
    assert short_vectors(lat, bound) == box_enumeration(lat, bound)


def test_e8_matches_coordinate_model():
    assert simple_root_gram() == E8.matrix
    assert short_vectors(E8, 2) == e8_box_vectors(2)


def test_root_counts():
    assert len(roots(A2)) == 6
    assert len(roots(D4)) == 24
    start = time.monotonic()
    assert len(roots(E8)) == 240
    assert time.monotonic() - start < 10
    assert not has_roots(diagonal([4, 4, 6, 8]))


@settings(max_examples=50)
@given(positive_lattices(max_rank=5, spread=2), st.integers(1, 8))
def test_random_lattices_match_box(lat, bound):
    assert short_vectors(lat, bound) == box_enumeration(lat, bound)


@given(positive_lattices(max_rank=5, spread=3))
def test_lll_is_unimodular_change_of_basis(lat):
    t, g = lll_reduce(lat.gram)
    assert abs(la.det(t)) == 1
    assert la.matmul(la.matmul(t, lat.matrix), la.transpose(t)) == g


def test_thread_count_does_not_change_results(monkeypatch):
    lat = IntLattice(random_positive_gram(random.Random(5), 5, 2))
    monkeypatch.setenv(THREADS_ENV, "1")
    single = short_vectors(lat, 12)
    monkeypatch.setenv(THREADS_ENV, "4")
    assert short_vectors(lat, 12) == single
    monkeypatch.setenv(THREADS_ENV, "junk")
    assert short_vectors(lat, 12) == single


def test_up_to_sign_and_minimum():
    full = short_vectors(E8, 2)
    half = short_vectors(E8, 2, up_to_sign=True)
    assert len(full) == 2 * len(half)
    assert minimum(diagonal([4, 4, 6, 8])) == 4


def test_long_roots():
    assert len(long_roots(A2)) == 6
    assert long_roots(E8) == []
    for v in long_roots(A2):
        assert A2.norm(v) == 6


def test_relative_long_roots():
    assert relative_long_roots(RelativeLongRootQuery(IntLattice([[6]]), h=(2,)), up_to_sign=True) == [(1,)]
    assert relative_long_roots(RelativeLongRootQuery(diagonal([3, 6]), a=(1, 0))) == []


def test_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        short_vectors(U, 2)
