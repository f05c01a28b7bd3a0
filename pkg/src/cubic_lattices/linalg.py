"""Exact integer and rational matrix routines.

Matrices are plain lists of lists holding ``int`` or ``fractions.Fraction``.
Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]

MAX_DIM = 64


class DimensionError(ValueError):
    pass


def check_size(n: int) -> None:
    if n > MAX_DIM:
        raise DimensionError(f"matrix dimension {n} exceeds cap of {MAX_DIM}")


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    if not a:
        return []
    bt = transpose(b)
    if not bt:
        return [[] for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vecmat(v, a):
    n = len(a[0]) if a else 0
    out = [0] * n
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                out[j] += x * y
    return out


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def bilinear(gram, u, v):
    return dot(u, matvec(gram, v))


def is_symmetric(a) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i)
    )


def det(a) -> int | Fraction:
    """Determinant by Bareiss fraction-free elimination (exact for ints)."""
    n = len(a)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) for row in a for x in row):
        return _det_fraction(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_fraction(a) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            result = -result
        result *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return result


def inverse(a) -> list[list[Fraction]]:
    """Rational inverse by Gauss-Jordan elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[k], m[piv] = m[piv], m[k]
        p = m[k][k]
        m[k] = [x / p for x in m[k]]
        for i in range(n):
            if i != k and m[i][k] != 0:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [row[n:] for row in m]


def to_int_matrix(a) -> Matrix:
    out = []
    for row in a:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            r.append(int(x))
        out.append(r)
    return out


def common_denominator(a) -> int:
    d = 1
    for row in a:
        for x in row:
            den = Fraction(x).denominator
            d = d * den // gcd(d, den)
    return d


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...`` followed by
    zeros.  The pivot is always the entry of least absolute value in the
    remaining block (first in row-major order on ties), so the output is
    reproducible.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for r in a:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return a, u, v
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def invariant_factors(m) -> list[int]:
    d, _, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style HNF of the row lattice: upper echelon, positive pivots,
    entries above each pivot reduced into ``[0, pivot)``.  Zero rows dropped."""
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out: Matrix = []
    col = 0
    while a and col < ncols:
        nz = [r for r in a if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in a if r[col]]) > 1:
            nz = sorted((r for r in a if r[col]), key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = [r for r in a if r is not piv]
            new = []
            for r in rest:
                if r[col]:
                    q = r[col] // piv[col]
                    r = [x - q * y for x, y in zip(r, piv)]
                new.append(r)
            a = [piv] + [r for r in new if any(r)]
        piv = next(r for r in a if r[col])
        if piv[col] < 0:
            piv = [-x for x in piv]
        a = [r for r in a if r[col] == 0 and any(r)]
        out.append(piv)
        col += 1
    # reduce above pivots
    for i, r in enumerate(out):
        c = next(j for j, x in enumerate(r) if x)
        for k in range(i):
            q = out[k][c] // r[c]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], r)]
    return out


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis (as rows) of ``{x in Z^n : M x = 0}``; the result is saturated."""
    if not m:
        n = ncols or 0
        return identity(n)
    n = len(m[0])
    d, _, v = smith_normal_form(m)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i])
    basis = [[v[i][j] for i in range(n)] for j in range(r, n)]
    return hermite_normal_form(basis) if basis else []


def rank(m) -> int:
    if not m or not m[0]:
        return 0
    return len(invariant_factors(to_int_matrix(scale_to_int(m)[0])))


def scale_to_int(m):
    d = common_denominator(m)
    return [[int(Fraction(x) * d) for x in row] for row in m], d


def solve_rational(rows, target) -> list[Fraction] | None:
    """Find rational ``c`` with ``sum c_i rows[i] == target`` or ``None``."""
    k = len(rows)
    n = len(target)
    aug = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(target[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, n)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][k]
    return sol


def ldl_diagonal(gram, order: Sequence[int] | None = None) -> list[Fraction]:
    """Diagonal entries of a rational congruence diagonalization ``P G P^T``.

    ``order`` permutes the basis first, which yields a different (but
    congruent) diagonalization; used to check invariance of Hasse symbols.
    Zero pivots are repaired by adding a later basis vector.
    """
    n = len(gram)
    idx = list(order) if order is not None else list(range(n))
    a = [[Fraction(gram[i][j]) for j in idx] for i in idx]
    diag: list[Fraction] = []
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    continue
                # e_k <- e_k + e_j gives norm 2 a_kj != 0
                for c in range(n):
                    a[k][c] += a[j][c]
                for r in range(n):
                    a[r][k] += a[r][j]
        p = a[k][k]
        diag.append(p)
        row = a[k][:]
        for i in range(k + 1, n):
            f = row[i] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * row[j]
            a[i][k] = a[k][i] = Fraction(0)
    return diag
