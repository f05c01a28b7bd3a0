import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from cubic_lattices import linalg as la

small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))

square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


def _is_unimodular(m):
    return abs(la.det(m)) == 1


def determinantal_divisors(m):
    r, c = len(m), len(m[0])
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, int(la.det([[m[i][j] for j in cols] for i in rows])))
        out.append(g)
    return out


@given(small_matrices)
def test_smith_form_factorization(m):
    d, u, v = la.smith_normal_form(m)
    assert la.matmul(la.matmul(u, m), v) == d
    assert _is_unimodular(u) and _is_unimodular(v)
    diag = [d[i][i] for i in range(min(len(m), len(m[0])))]
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    off = [d[i][j] for i in range(len(d)) for j in range(len(d[0])) if i != j]
    assert not any(off)


@given(small_matrices)
def test_invariant_factors_match_determinantal_divisors(m):
    d, _, _ = la.smith_normal_form(m)
    diag = [d[i][i] for i in range(min(len(m), len(m[0])))]
    prod = 1
    for k, dk in enumerate(determinantal_divisors(m)):
        prod *= diag[k]
        assert prod == dk


@given(square)
def test_smith_form_matches_sympy(m):
    ours = la.smith_normal_form(m)[0]
    theirs = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    assert sorted(abs(ours[i][i]) for i in range(len(m))) == sorted(abs(int(theirs[i, i])) for i in range(len(m)))


@given(square)
def test_det_and_inverse(m):
    d = la.det(m)
    assert d == sympy.Matrix(m).det()
    if d:
        inv = la.inverse(m)
        assert la.matmul(m, inv) == la.identity(len(m))


@given(small_matrices)
def test_hermite_form_spans_same_lattice(m):
    h = la.hermite_normal_form(m)
    assert len(h) == la.rank(m)
    for row in m:
        c = la.solve_rational(h, row) if h else None
        if any(row):
            assert c is not None and all(x.denominator == 1 for x in c)
    for row in h:
        c = la.solve_rational(m, row)
        assert c is not None
    # same lattice: equal covolume in the row span
    if h:
        assert determinantal_divisors(m)[len(h) - 1] == determinantal_divisors(h)[len(h) - 1]


@given(small_matrices)
def test_integer_kernel(m):
    ncols = len(m[0])
    ker = la.integer_kernel(m, ncols)
    assert len(ker) == ncols - la.rank(m)
    for k in ker:
        assert la.matvec(m, k) == [0] * len(m)
    if ker:  # saturated: invariant factors all 1
        assert all(x == 1 for x in la.invariant_factors(ker))


@given(square)
def test_ldl_signature_matches_eigenvalues(m):
    n = len(m)
    sym = [[m[i][j] + m[j][i] for j in range(n)] for i in range(n)]
    if la.det(sym) == 0:
        return
    diag = la.ldl_diagonal(sym)
    eig = np.linalg.eigvalsh(np.array(sym, dtype=float))
    assert sum(1 for d in diag if d > 0) == int((eig > 0).sum())
    prod = Fraction(1)
    for d in diag:
        prod *= d
    assert prod == la.det(sym)


def test_ldl_order_is_respected():
    g = [[0, 1], [1, 0]]
    assert sorted(la.ldl_diagonal(g, order=[1, 0])) == sorted(la.ldl_diagonal(g))


def test_size_guard():
    with pytest.raises(la.DimensionError):
        la.check_size(la.MAX_DIM + 1)


def test_solve_rational_inconsistent():
    assert la.solve_rational([[1, 0]], [0, 1]) is None


def test_snf_known_example():
    d, _, _ = la.smith_normal_form([[4, 0], [0, 6]])
    assert [d[0][0], d[1][1]] == [2, 12]


def test_random_unimodular_conjugation_preserves_snf():
    rng = random.Random(3)
    m = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
    p = la.identity(4)
    for _ in range(10):
        i, j = rng.sample(range(4), 2)
        c = rng.randint(-2, 2)
        p[i] = [a + c * b for a, b in zip(p[i], p[j])]
    assert abs(la.det(p)) == 1
    assert la.invariant_factors(m) == la.invariant_factors(la.matmul(p, m))
