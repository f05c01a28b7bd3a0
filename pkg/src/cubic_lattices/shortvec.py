"""Short vectors of positive-definite lattices, roots and long roots.

Enumeration is Fincke-Pohst on an LLL-reduced basis.  Everything is exact:
the Gram-Schmidt data are Fractions, and coordinate ranges are found with
a float guess that is then corrected by exact comparisons.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil, sqrt
from typing import Sequence

from . import linalg as la
from .forms import discriminant_form, bilinear_form
from .lattice import IntLattice, LatticeError, Sublattice, discriminant_group, orthogonal_complement

THREADS_ENV = "CUBIC_LATTICES_THREADS"
LLL_DELTA = Fraction(99, 100)

Vector = tuple[int, ...]


class NotPositiveDefinite(LatticeError):
    pass


def _require_positive(lat: IntLattice) -> None:
    if lat.signature != (lat.rank, 0):
        raise NotPositiveDefinite("short vector enumeration needs a positive-definite lattice")


# ---------------------------------------------------------------------------
# LLL on a Gram matrix


def _gso(g):
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(g[i][j])
            for k in range(j):
                s -= mu[j][k] * mu[i][k] * bstar[k]
            mu[i][j] = s / bstar[j]
        s = Fraction(g[i][i])
        for k in range(i):
            s -= mu[i][k] * mu[i][k] * bstar[k]
        bstar[i] = s
    return mu, bstar


def lll_reduce(gram: Sequence[Sequence[int]], delta: Fraction = LLL_DELTA) -> tuple[list[list[int]], list[list[int]]]:
    """Return ``(T, G')`` with ``G' = T G T^T`` LLL-reduced; rows of T are the
    new basis in old coordinates."""
    n = len(gram)
    t = la.identity(n)
    g = [list(map(int, r)) for r in gram]

    def add(i, j, c):  # b_i -= c b_j
        t[i] = [a - c * b for a, b in zip(t[i], t[j])]
        for k in range(n):
            g[i][k] -= c * g[j][k]
        for k in range(n):
            g[k][i] -= c * g[k][j]

    def swap(i, j):
        t[i], t[j] = t[j], t[i]
        g[i], g[j] = g[j], g[i]
        for row in g:
            row[i], row[j] = row[j], row[i]

    k = 1
    while k < n:
        mu, _ = _gso(g)
        for j in range(k - 1, -1, -1):
            c = round(mu[k][j])
            if c:
                add(k, j, c)
                mu, _ = _gso(g)
        mu, bstar = _gso(g)
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            swap(k, k - 1)
            k = max(k - 1, 1)
    return t, g


# ---------------------------------------------------------------------------
# Fincke-Pohst


def _int_range(center: Fraction, radius2: Fraction) -> tuple[int, int]:
    """Integers x with (x - center)^2 <= radius2."""
    if radius2 < 0:
        return 1, 0
    r = sqrt(float(radius2))
    c = float(center)
    lo, hi = floor(c - r) - 1, ceil(c + r) + 1
    while (lo - center) ** 2 > radius2 and lo <= hi:
        lo += 1
    while (lo - 1 - center) ** 2 <= radius2:
        lo -= 1
    while (hi - center) ** 2 > radius2 and hi >= lo:
        hi -= 1
    while (hi + 1 - center) ** 2 <= radius2:
        hi += 1
    return lo, hi


def _cholesky(g):
    """q[i][i] > 0 and q[i][j] (j > i) with Q(x) = sum_i q_ii (x_i + sum_j q_ij x_j)^2."""
    n = len(g)
    q = [[Fraction(x) for x in r] for r in g]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _enumerate(q, bound: Fraction, n: int, top: int | None = None) -> list[list[int]]:
    """All x != 0 with Q(x) <= bound; ``top`` fixes the last coordinate."""
    out: list[list[int]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        center = -sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        lo, hi = _int_range(center, remaining / q[i][i])
        if i == n - 1 and top is not None:
            if not lo <= top <= hi:
                return
            lo = hi = top
        for v in range(lo, hi + 1):
            x[i] = v
            used = q[i][i] * (v - center) ** 2
            if i == 0:
                if any(x):
                    out.append(list(x))
            else:
                rec(i - 1, remaining - used)
        x[i] = 0

    if n:
        rec(n - 1, Fraction(bound))
    return out


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def short_vectors(lat: IntLattice, bound: int, up_to_sign: bool = False,
                  min_norm: int = 1) -> list[tuple[Vector, int]]:
    """All ``(v, Q(v,v))`` with ``min_norm <= Q(v,v) <= bound``, sorted by v.

    With ``up_to_sign`` only the representative whose first nonzero
    coordinate is positive is kept.
    """
    _require_positive(lat)
    n = lat.rank
    if n == 0 or bound < 1:
        return []
    t, g = lll_reduce(lat.gram)
    q = _cholesky(g)
    threads = _thread_count()
    if threads > 1 and n > 1:
        center_lo, center_hi = _int_range(Fraction(0), Fraction(bound) / q[n - 1][n - 1])
        tops = list(range(center_lo, center_hi + 1))
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda v: _enumerate(q, Fraction(bound), n, v), tops))
        raw = [x for part in parts for x in part]
    else:
        raw = _enumerate(q, Fraction(bound), n)
    found = set()
    for y in raw:
        v = tuple(la.vecmat(y, t))
        norm = la.bilinear(lat.gram, v, v)
        if norm < min_norm or norm > bound:
            continue
        if up_to_sign and next(c for c in v if c) < 0:
            continue
        found.add((v, norm))
    return sorted(found)


def box_enumeration(lat: IntLattice, bound: int) -> list[tuple[Vector, int]]:
    """Naive oracle: scan the box |x_i| <= sqrt(bound * (G^-1)_ii)."""
    _require_positive(lat)
    n = lat.rank
    inv = la.inverse(lat.gram)
    radius = [int(sqrt(float(bound * inv[i][i])) + 1) for i in range(n)]
    out = []

    def rec(i, x):
        if i == n:
            if any(x):
                nm = la.bilinear(lat.gram, x, x)
                if nm <= bound:
                    out.append((tuple(x), nm))
            return
        for v in range(-radius[i], radius[i] + 1):
            rec(i + 1, x + [v])

    rec(0, [])
    return sorted(out)


def minimum(lat: IntLattice) -> int:
    """Least positive norm (by doubling the search bound)."""
    b = 2
    while True:
        vs = short_vectors(lat, b, up_to_sign=True)
        if vs:
            return min(nm for _, nm in vs)
        b *= 2


# ---------------------------------------------------------------------------
# roots


def vectors_of_norm(lat: IntLattice, norm: int, up_to_sign: bool = False) -> list[Vector]:
    return [v for v, nm in short_vectors(lat, norm, up_to_sign, min_norm=norm) if nm == norm]


def roots(lat: IntLattice, up_to_sign: bool = False) -> list[Vector]:
    return vectors_of_norm(lat, 2, up_to_sign)


def has_roots(lat: IntLattice) -> bool:
    return bool(vectors_of_norm(lat, 2, up_to_sign=True))


def long_roots(lat: IntLattice, up_to_sign: bool = False) -> list[Vector]:
    """Norm-6 vectors whose pairing with every lattice vector is divisible by 3."""
    g = lat.gram
    return [v for v in vectors_of_norm(lat, 6, up_to_sign)
            if all(x % 3 == 0 for x in la.matvec(g, v))]


@dataclass(frozen=True)
class RelativeLongRootQuery:
    """Either ``lattice`` with a discriminant element ``h`` (order dividing 3),
    or ``lattice`` (odd, ambient) with a norm-3 vector ``a``."""

    lattice: IntLattice
    h: tuple[int, ...] | None = None
    a: tuple[int, ...] | None = None


def functionals_for_element(lat: IntLattice, h: Sequence[int]) -> list[list[int]]:
    """Integer rows ``s^T G`` for generators s of ``{σ in S* : b(σ, h) = 0}``."""
    form = discriminant_form(lat) if lat.is_even else bilinear_form(lat)
    ag = discriminant_group(lat)
    h = form.normalize(h)
    if form.element_order(h) not in (1, 3):
        raise LatticeError("element must have order dividing 3")
    _, gens = form.orthogonal_subgroup(h)
    vecs = [[Fraction(int(i == j)) for j in range(lat.rank)] for i in range(lat.rank)]
    vecs += [ag.lift(x) for x in gens]
    return [la.to_int_matrix([la.vecmat(v, lat.gram)])[0] for v in vecs]


def relative_long_roots(query: RelativeLongRootQuery, up_to_sign: bool = False) -> list[Vector]:
    lat = query.lattice
    if query.h is not None:
        rows = functionals_for_element(lat, query.h)
        cands = vectors_of_norm(lat, 6, up_to_sign)
        return [d for d in cands if all(la.dot(r, d) % 3 == 0 for r in rows)]
    if query.a is None:
        raise ValueError("query needs h or a")
    a = list(query.a)
    if lat.norm(a) != 3:
        raise LatticeError("distinguished vector must have norm 3")
    comp = orthogonal_complement(Sublattice(lat, [a]))
    sub = comp.lattice()
    funcs = la.integer_kernel([a], lat.rank)  # f with f.a = 0, i.e. alpha(a) = 0
    basis = [list(r) for r in comp.basis]
    out = []
    for c in vectors_of_norm(sub, 6, up_to_sign):
        d = la.vecmat(c, basis)
        if all(la.dot(f, d) % 3 == 0 for f in funcs):
            out.append(tuple(d))
    return sorted(out)
