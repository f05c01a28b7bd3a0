import random
import time
from fractions import Fraction
from itertools import permutations, product

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from cubic_lattices import linalg as la
from cubic_lattices.catalog import A2, E8, U
from cubic_lattices.classify import LocalGenusData, decide_local_rootless
from cubic_lattices.forms import _val, cyclic_form, discriminant_form
from cubic_lattices.lattice import IntLattice, diagonal
from cubic_lattices.padic import (
    INF,
    LocalError,
    congruence_solutions,
    even_lattice_exists,
    hasse,
    hilbert,
    is_exceptional,
    jordan_decompose,
    jordan_symbol,
    legendre,
    local_invariants,
    padic_lift,
    represents_locally,
    represents_padically,
)

from conftest import even_lattices

PRIMES = [2, 3, 5, 7, 11, 13]
nonzero = st.integers(-200, 200).filter(bool)


@given(nonzero, nonzero)
def test_hilbert_reciprocity(a, b):
    prod = hilbert(a, b, INF)
    for p in sympy.primefactors(2 * a * b):
        prod *= hilbert(a, b, p)
    assert prod == 1


@given(nonzero, nonzero, nonzero, st.sampled_from(PRIMES))
def test_hilbert_symbol_identities(a, b, c, p):
    assert hilbert(a, b, p) == hilbert(b, a, p)
    assert hilbert(a, b * c, p) == hilbert(a, b, p) * hilbert(a, c, p)
    assert hilbert(a, -a, p) == 1
    if a != 1:
        assert hilbert(a, 1 - a, p) == 1
    assert hilbert(a, b * b, p) == 1


@given(st.integers(-500, 500), st.sampled_from([3, 5, 7, 11, 13, 97]))
def test_legendre_matches_sympy(a, p):
    expected = 0 if a % p == 0 else sympy.legendre_symbol(a % p, p)
    assert legendre(a, p) == expected


@settings(max_examples=30)
@given(st.lists(nonzero, min_size=2, max_size=5), st.sampled_from(PRIMES + [INF]), st.integers(0, 10 ** 6))
def test_hasse_independent_of_order(diag, p, seed):
    rng = random.Random(seed)
    n = len(diag)
    b = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
    assume(la.det(b) != 0)
    d = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    g = la.matmul(la.matmul(b, d), la.transpose(b))
    ref = hasse(d, p)
    assert hasse(g, p) == ref
    for order in list(permutations(range(n)))[:6]:
        assert hasse(g, p, order=list(order)) == ref


def test_jordan_symbols():
    lat = diagonal([4, 4, 6, 8])
    assert jordan_symbol(jordan_decompose(lat, 3), 3) == "p=3: 1^{-3} 3^{-1}"
    assert jordan_symbol(jordan_decompose(lat, 2), 2) == "p=2: 2^{-1}_{3} 4^{+2}_{2} 8^{+1}_{1}"


@given(even_lattices(max_rank=5, max_entry=8), st.sampled_from([2, 3, 5]))
def test_jordan_determinant_and_rank(lat, p):
    cons = jordan_decompose(lat, p)
    assert sum(c.rank for c in cons) == lat.rank
    v = sum(c.scale * c.rank for c in cons)
    assert v == sympy.multiplicity(p, abs(lat.det))


def test_padic_lift_of_a2():
    k = padic_lift(discriminant_form(A2), 3)
    assert k == [[Fraction(3, 2)]]
    with pytest.raises(LocalError):
        padic_lift(discriminant_form(A2), 2)


def brute_exceptional(q2) -> bool:
    return any(q2.element_order(x) == 2 and q2.q(x) in (Fraction(1, 2), Fraction(3, 2))
               for x in q2.elements())


@given(even_lattices(max_rank=4, max_entry=8))
def test_exceptional_case_matches_brute_force(lat):
    q2 = discriminant_form(lat).p_part(2)
    assume(q2.order <= 512)
    assert is_exceptional(q2) == brute_exceptional(q2)


def test_local_invariants_examples():
    six = local_invariants(IntLattice([[6]]), 2)
    assert six.exceptional and six.theta == 1 and six.v == 0
    three = local_invariants(diagonal([4, 4, 6, 8]), 3)
    assert (three.t, three.v, three.theta) == (3, 1, 2)


@given(even_lattices(max_rank=6, max_entry=8))
def test_existence_criterion_accepts_actual_lattices(lat):
    assert even_lattice_exists(lat.signature, discriminant_form(lat)).holds


def test_existence_criterion_rejections():
    q = discriminant_form(A2)
    assert not even_lattice_exists((1, 0), q).holds  # signature 1 != 2 mod 8
    assert not even_lattice_exists((0, 0), q).holds
    assert even_lattice_exists((2, 0), q).holds
    # rank 1 with A = Z/3: the only candidate would be <3> or <-3>, both odd
    assert not even_lattice_exists((1, 0), cyclic_form(3, Fraction(2, 3))).holds


@settings(max_examples=30)
@given(even_lattices(max_rank=5, max_entry=8))
def test_local_conditions_hold_for_actual_lattices(lat):
    """Conditions 1-4 are necessary for existence, so real lattices pass them."""
    rep = decide_local_rootless(LocalGenusData.from_lattice(lat))
    conds = rep.certificates["conditions"]
    assert all(conds[c] for c in ("1", "2", "3", "4")), conds


def test_local_rootless_examples():
    assert decide_local_rootless(LocalGenusData.from_lattice(IntLattice([[6]]))).verdict == "YES"
    assert decide_local_rootless(LocalGenusData.from_lattice(E8)).verdict == "NO"
    rep = decide_local_rootless(LocalGenusData.from_lattice(diagonal([4, 4, 6, 8])))
    assert rep.verdict == "NO" and rep.condition == "7.1-5"


def test_appendix_form_represents_one_everywhere():
    g = diagonal([2, 2, 3, 4])
    for p in (2, 3, 5, 7):
        assert represents_padically(g, 1, p)
    assert (2, 1, 1, 1) in congruence_solutions(g.gram, 1, 16)


def _solvable_mod(gram, n, modulus):
    return bool(congruence_solutions(gram, n, modulus))


@settings(max_examples=40)
@given(st.lists(st.integers(1, 12), min_size=1, max_size=3), st.integers(1, 12), st.sampled_from([2, 3, 5]))
def test_local_representation_against_congruences(diag, n, p):
    g = [[diag[i] if i == j else 0 for j in range(len(diag))] for i in range(len(diag))]
    local = represents_locally(g, n, p)
    # a solution over Z is a solution over Z_p
    radius = 4
    glob = any(sum(d * x * x for d, x in zip(diag, xs)) == n
               for xs in _box(len(diag), radius))
    if glob:
        assert local
    # solvability over Z_p forces solvability modulo every p^k
    if local:
        assert _solvable_mod(g, n, p ** 3)


def _box(n, r):
    if n == 0:
        yield ()
        return
    for x in range(-r, r + 1):
        for rest in _box(n - 1, r):
            yield (x,) + rest


def test_local_representation_known_cases():
    assert not represents_locally([[Fraction(2, 3)]], 2, 2)  # 2 * 3 is not a 2-adic square times 2/3
    assert represents_locally([[Fraction(6)]], 6, 2)
    assert not represents_locally([[1]], 2, 3)
    assert represents_locally(U.gram, 2, 2)
    assert not represents_padically(diagonal([1]), -1, 3)


def test_represents_rejects_indefinite():
    with pytest.raises(LocalError):
        represents_padically(U, 2, 2)


@settings(max_examples=60)
@given(st.lists(st.integers(-20, 20).filter(bool), min_size=1, max_size=2),
       st.integers(-60, 60).filter(bool), st.sampled_from([3, 5, 7]))
def test_odd_prime_representation_matches_hensel_search(diag, n, p):
    top = max(_val(d, p) for d in diag)
    m = p ** (2 * top + 1)
    g = [[diag[i] if i == j else 0 for j in range(len(diag))] for i in range(len(diag))]
    brute = any(
        any(c % p for c in y) and (sum(d * c * c for d, c in zip(diag, y)) - n // p ** (2 * s)) % m == 0
        for s in range(_val(n, p) // 2 + 1)
        for y in product(range(m), repeat=len(diag))
    )
    assert represents_locally(g, n, p) == brute


def test_large_prime_representation_is_fast():
    start = time.monotonic()
    assert decide_local_rootless(LocalGenusData.from_lattice(IntLattice([[-8, -7], [-7, 8]])))
    assert time.monotonic() - start < 2
