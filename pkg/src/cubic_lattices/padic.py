"""Local (p-adic) invariants: Jordan splittings, Hilbert and Hasse symbols,
the lattices K(q_p) attached to finite forms, and local representation.

All matrices may carry ``Fraction`` entries as long as they are p-integral
at the prime in question.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from . import linalg as la
from .forms import FiniteQuadraticForm, FormError, _val, discriminant_form, is_prime, prime_factors
from .lattice import IntLattice

INF = "inf"


class LocalError(ValueError):
    pass


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise LocalError(f"{p} is not prime")


def unit_part(x, p: int) -> Fraction:
    x = Fraction(x)
    return x / Fraction(p) ** _val(x, p)


def residue(x, p: int, e: int) -> int:
    """``x`` (a p-integral rational) reduced modulo ``p**e``."""
    x = Fraction(x)
    m = p ** e
    if x.denominator % p == 0:
        raise LocalError("value is not p-integral")
    return x.numerator * pow(x.denominator, -1, m) % m


# ---------------------------------------------------------------------------
# symbols


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion; 0 when ``p`` divides ``a``."""
    if p == 2 or not is_prime(p):
        raise LocalError("legendre symbol needs an odd prime")
    a = Fraction(a)
    if a.numerator % p == 0:
        return 0
    r = pow(residue(a, p, 1), (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _squarefree_int(a) -> int:
    a = Fraction(a)
    if a == 0:
        raise LocalError("Hilbert symbol of zero")
    return a.numerator * a.denominator


def hilbert(a, b, p) -> int:
    """Hilbert symbol ``(a, b)_p`` for nonzero rationals; ``p`` may be ``"inf"``."""
    a, b = _squarefree_int(a), _squarefree_int(b)
    if p == INF:
        return -1 if a < 0 and b < 0 else 1
    _require_prime(p)
    alpha, beta = _val(a, p), _val(b, p)
    u, v = a // p ** alpha, b // p ** beta
    if p != 2:
        e = (alpha * beta * (p - 1) // 2) % 2
        s = -1 if e else 1
        if beta % 2:
            s *= legendre(u, p)
        if alpha % 2:
            s *= legendre(v, p)
        return s
    u8, v8 = u % 8, v % 8

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    e = eps(u8) * eps(v8) + alpha * omega(v8) + beta * omega(u8)
    return -1 if e % 2 else 1


def hasse(gram, p, order: Sequence[int] | None = None) -> int:
    """Product of ``(a_i, a_j)_p`` over ``i < j`` for a rational diagonalization."""
    if isinstance(gram, IntLattice):
        gram = gram.gram
    diag = la.ldl_diagonal(gram, order)
    if any(d == 0 for d in diag):
        raise LocalError("degenerate form")
    out = 1
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            out *= hilbert(diag[i], diag[j], p)
    return out


# ---------------------------------------------------------------------------
# Jordan splitting


@dataclass(frozen=True)
class JordanBlock:
    scale: int
    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class JordanConstituent:
    """The ``p**scale``-modular part of a Jordan splitting.

    ``det`` is the determinant class of the unit part: the Legendre symbol
    for odd ``p``, the residue mod 8 for ``p = 2``.  ``type`` and ``oddity``
    are only meaningful at 2 (type ``"I"`` is odd, ``"II"`` even).
    """

    p: int
    scale: int
    rank: int
    det: int
    type: str | None = None
    oddity: int = 0

    def symbol(self) -> str:
        q = self.p ** self.scale
        if self.p == 2:
            sign = "+" if self.det % 8 in (1, 7) else "-"
            s = f"{q}^{{{sign}{self.rank}}}"
            return s + (f"_{{{self.oddity}}}" if self.type == "I" else "")
        sign = "+" if self.det == 1 else "-"
        return f"{q}^{{{sign}{self.rank}}}"


def _min_valuation(a, idx, p):
    best = None
    for i in idx:
        for j in idx:
            if j < i or a[i][j] == 0:
                continue
            v = _val(a[i][j], p)
            if best is None or v < best:
                best = v
    return best


def jordan_blocks(gram, p: int) -> list[JordanBlock]:
    """Split a p-integral symmetric matrix into 1x1 and (at p=2) 2x2 blocks.

    Works by symmetric elimination over the rationals with denominators
    prime to ``p``; blocks are returned in the order found (ascending scale).
    """
    _require_prime(p)
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    active = list(range(n))
    blocks: list[JordanBlock] = []
    while active:
        v = _min_valuation(a, active, p)
        if v is None:
            raise LocalError("degenerate form")
        piv = next(([i] for i in active if a[i][i] != 0 and _val(a[i][i], p) == v), None)
        if piv is None:
            i, j = next((i, j) for i in active for j in active
                        if j > i and a[i][j] != 0 and _val(a[i][j], p) == v)
            if p != 2:
                # e_i <- e_i + e_j makes the diagonal entry attain the minimum
                for c in range(n):
                    a[i][c] += a[j][c]
                for r in range(n):
                    a[r][i] += a[r][j]
                piv = [i]
            else:
                piv = [i, j]
        block = [[a[r][c] for c in piv] for r in piv]
        inv = la.inverse(block)
        for k in active:
            if k in piv:
                continue
            coef = la.vecmat([a[k][r] for r in piv], inv)
            if not any(coef):
                continue
            for t, r in enumerate(piv):
                if coef[t]:
                    for c in range(n):
                        a[k][c] -= coef[t] * a[r][c]
            for t, r in enumerate(piv):
                if coef[t]:
                    for rr in range(n):
                        a[rr][k] -= coef[t] * a[rr][r]
        blocks.append(JordanBlock(v, tuple(tuple(r) for r in block)))
        active = [k for k in active if k not in piv]
    blocks.sort(key=lambda b: b.scale)
    return blocks


def _constituents_from_blocks(blocks: list[JordanBlock], p: int) -> list[JordanConstituent]:
    out = []
    for scale, grp in itertools.groupby(blocks, key=lambda b: b.scale):
        grp = list(grp)
        rank = sum(b.dim for b in grp)
        unit = prod(unit_part(la.det(b.matrix), p) for b in grp)
        if p == 2:
            odd = [b for b in grp if b.dim == 1]
            typ = "I" if odd else "II"
            oddity = sum(residue(unit_part(b.matrix[0][0], 2), 2, 3) for b in odd) % 8
            out.append(JordanConstituent(2, scale, rank, residue(unit, 2, 3), typ, oddity))
        else:
            out.append(JordanConstituent(p, scale, rank, legendre(residue(unit, p, 1), p)))
    return out


def jordan_decompose(lat, p: int) -> list[JordanConstituent]:
    gram = lat.gram if isinstance(lat, IntLattice) else lat
    if len(gram) == 0:
        _require_prime(p)
        return []
    return _constituents_from_blocks(jordan_blocks(gram, p), p)


def jordan_symbol(constituents: Sequence[JordanConstituent], p: int) -> str:
    body = " ".join(c.symbol() for c in constituents) or "1^{+0}"
    return f"p={p}: {body}"


def oddity(constituents: Sequence[JordanConstituent]) -> int:
    total = 0
    for c in constituents:
        total += c.oddity
        if c.scale % 2 and c.det % 8 in (3, 5):
            total += 4
    return total % 8


def excess(constituents: Sequence[JordanConstituent]) -> int:
    total = 0
    for c in constituents:
        total += c.rank * (c.p ** c.scale - 1)
        if c.scale % 2 and c.det == -1:
            total += 4
    return total % 8


# ---------------------------------------------------------------------------
# the lattice K(q_p)


def padic_lift(qp: FiniteQuadraticForm, p: int) -> list[list[Fraction]]:
    """Gram matrix of the p-adic lattice of rank ``l(A_p)`` with form ``qp``.

    The dual Gram is any rational lift of the (q, b) table; its inverse is
    p-integral because b is nondegenerate, and even at 2 because q is a
    genuine quadratic refinement.
    """
    k = qp.rank
    if k == 0:
        return []
    if any(d != p ** _val(d, p) for d in qp.factors):
        raise LocalError("form is not supported on a p-group")
    if not qp.is_quadratic:
        raise LocalError("need a quadratic form")
    lift = [[qp.qvals[i] if i == j else qp.bvals[i][j] for j in range(k)] for i in range(k)]
    gram = la.inverse(lift)
    for row in gram:
        for x in row:
            if x != 0 and _val(x, p) < 0:
                raise LocalError("lifted lattice is not p-integral")
    if p == 2 and any(gram[i][i] != 0 and _val(gram[i][i], 2) < 1 for i in range(k)):
        raise LocalError("lifted lattice is not even")
    return gram


def is_exceptional(q2: FiniteQuadraticForm) -> bool:
    """True when ``q2`` splits off a cyclic summand of order 2 with q = +-1/2."""
    if q2.rank == 0:
        return False
    return any(c.scale == 1 and c.type == "I" for c in jordan_decompose(padic_lift(q2, 2), 2))


def alternate_lift(gram) -> list[list[Fraction]]:
    """The second 2-adic lattice with the same (exceptional) form.

    Rescales the unit of one odd 1x1 block of scale 2 by 5; the form is
    unchanged and the determinant moves to the other square class.
    """
    blocks = jordan_blocks(gram, 2)
    idx = next((t for t, b in enumerate(blocks) if b.scale == 1 and b.dim == 1), None)
    if idx is None:
        raise LocalError("form is not in the exceptional case")
    mats = []
    for t, b in enumerate(blocks):
        m = [list(r) for r in b.matrix]
        if t == idx:
            m[0][0] *= 5
        mats.append(m)
    return _block_diag(mats)


def _block_diag(mats) -> list[list[Fraction]]:
    n = sum(len(m) for m in mats)
    out = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i in range(len(m)):
            for j in range(len(m)):
                out[off + i][off + j] = Fraction(m[i][j])
        off += len(m)
    return out


def det_class(x, p: int) -> int:
    """Square class of the unit part of ``x``: Legendre symbol or residue mod 8."""
    u = unit_part(x, p)
    if p == 2:
        return residue(u, 2, 3)
    return legendre(residue(u, p, 1), p)


def is_square_class(x, p: int) -> bool:
    return det_class(x, p) == 1


def signature_mod8(q: FiniteQuadraticForm) -> int:
    """Mod-8 signature of a nondegenerate finite quadratic form.

    Sum of local contributions: the oddity of K(q_2) minus the p-excesses of
    K(q_p) for odd p.
    """
    if not q.is_quadratic:
        raise FormError("signature needs a quadratic form")
    if not q.is_nondegenerate():
        raise FormError("degenerate form")
    total = 0
    for p in q.primes():
        cons = jordan_decompose(padic_lift(q.p_part(p), p), p)
        total += oddity(cons) if p == 2 else -excess(cons)
    return total % 8


def same_local_symbol(f: FiniteQuadraticForm, g: FiniteQuadraticForm, p: int) -> bool:
    """Compare Jordan data of K(f) and K(g); complete at odd p, necessary at 2."""
    cf = jordan_decompose(padic_lift(f, p), p)
    cg = jordan_decompose(padic_lift(g, p), p)
    if p != 2:
        return cf == cg
    key = lambda cs: [(c.scale, c.rank, c.type) for c in cs]
    return key(cf) == key(cg) and oddity(cf) == oddity(cg) and signature_mod8(f) == signature_mod8(g)


# ---------------------------------------------------------------------------
# local invariants of an even lattice


def smallest_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if legendre(a, p) == -1)


@dataclass(frozen=True)
class LocalInvariants:
    p: int
    rank: int
    length: int            # l(A_p)
    t: int                 # t_p
    v: int                 # v_p
    theta: int             # representative of the square class
    exceptional: bool
    discr_K: Fraction      # determinant of K(q_p)
    K: tuple[tuple[Fraction, ...], ...] = field(repr=False, default=())

    def to_json(self) -> dict:
        return {
            "p": self.p, "t": self.t, "v": self.v, "theta": self.theta, "l": self.length,
            "exceptional": self.exceptional,
            "discr_K": f"{self.discr_K.numerator}/{self.discr_K.denominator}",
        }


def choose_lift_2(q2: FiniteQuadraticForm, target) -> list[list[Fraction]]:
    """K(q_2), choosing in the exceptional case the lattice whose
    determinant makes ``target / det`` a 2-adic square when possible."""
    k = padic_lift(q2, 2)
    if not k or not is_exceptional(q2):
        return k
    if is_square_class(Fraction(target) / la.det(k), 2):
        return k
    alt = alternate_lift(k)
    if is_square_class(Fraction(target) / la.det(alt), 2):
        return alt
    return k


def local_invariants(lat: IntLattice, p: int) -> LocalInvariants:
    _require_prime(p)
    if not lat.is_even:
        raise FormError("local invariants need an even lattice")
    q = discriminant_form(lat)
    qp = q.p_part(p)
    n, l = lat.rank, qp.rank
    tminus = lat.signature[1]
    order = q.order
    if p != 2:
        k = padic_lift(qp, p)
        t = n - l
        cons = jordan_decompose(lat, p)
        unimod = next((c for c in cons if c.scale == 0), None)
        v = 1 if unimod is not None and unimod.det == -1 else 0
        theta = smallest_nonresidue(p) if v else 1
        return LocalInvariants(p, n, l, t, v, theta, False, Fraction(la.det(k)), _tup(k))
    t = (n - l) // 2
    exc = is_exceptional(qp)
    target = (-1) ** (tminus + t) * order
    k = choose_lift_2(qp, target)
    dk = Fraction(la.det(k))
    theta = det_class(Fraction(target) / dk, 2)
    v = 1 if (theta == 5 and not exc) else 0
    return LocalInvariants(2, n, l, t, v, theta, exc, dk, _tup(k))


def _tup(m):
    return tuple(tuple(Fraction(x) for x in r) for r in m)


# ---------------------------------------------------------------------------
# existence of even lattices with a given form


@dataclass
class ExistenceTrace:
    holds: bool
    checks: dict[str, bool]


def even_lattice_exists(sig: tuple[int, int], q: FiniteQuadraticForm) -> ExistenceTrace:
    """Existence of an even lattice of signature ``sig`` with form ``q``.

    Checks: the signature congruence, the rank bound, and the determinant
    square-class conditions at primes where the rank equals l(A_p).
    """
    lp, lm = sig
    n = lp + lm
    checks: dict[str, bool] = {}
    if lp < 0 or lm < 0:
        return ExistenceTrace(False, {"signature nonnegative": False})
    checks["signature"] = (lp - lm - signature_mod8(q)) % 8 == 0
    checks["length"] = n >= q.length()
    order = q.order
    for p in q.primes():
        qp = q.p_part(p)
        if qp.rank != n:
            continue
        if p != 2:
            k = padic_lift(qp, p)
            checks[f"p={p}"] = is_square_class(Fraction((-1) ** lm * order) / la.det(k), p)
        elif not is_exceptional(qp):
            k = padic_lift(qp, 2)
            checks["p=2"] = det_class(Fraction(order) / la.det(k), 2) in (1, 7)
    return ExistenceTrace(all(checks.values()), checks)


# ---------------------------------------------------------------------------
# local representation


def _block_value_masks(block: JordanBlock, p: int, e: int) -> tuple[int, int]:
    """Bitmasks over Z/p^e of all values, and of values at primitive vectors."""
    m = p ** e
    k = block.scale
    if block.dim == 2:
        mat = [[x / Fraction(2) ** k for x in r] for r in block.matrix]
        d = residue(la.det(mat), 2, 3)
        step = 2 ** (k + 1)
        any_mask = prim_mask = 0
        if d == 7:  # hyperbolic plane: every multiple of 2^(k+1)
            for t in range(0, m, step):
                any_mask |= 1 << t
            return any_mask | 1, any_mask
        # anisotropic plane: 2^(k+1) times the norms of Z_2[w]
        for t in range(0, m, step):
            w = t // step
            if w % 2:
                prim_mask |= 1 << t
        any_mask = 1
        j = 0
        while 2 ** (k + 1 + 2 * j) < m:
            s = 2 ** (k + 1 + 2 * j)
            for t in range(0, m, s):
                if (t // s) % 2:
                    any_mask |= 1 << t
            j += 1
        return any_mask, prim_mask
    a = residue(block.matrix[0][0], p, e)
    span = p ** max(1, e - k)
    any_mask = prim_mask = 0
    for y in range(span):
        val = a * y * y % m
        any_mask |= 1 << val
        if y % p:
            prim_mask |= 1 << val
    return any_mask, prim_mask


def _sumset(x: int, y: int, m: int) -> int:
    full = (1 << m) - 1
    out = 0
    t = 0
    while x:
        if x & 1:
            out |= ((y << t) | (y >> (m - t))) & full
        x >>= 1
        t += 1
    return out


# Value sets at odd p are unions of cells (v, s): all elements of valuation v
# whose unit part has Legendre symbol s. SMALL stands for every value of
# valuation above the target's, together with 0; those never change a cell.
SMALL = "small"


def _cell_sum(x, y, p: int, top: int) -> set:
    if x == SMALL:
        return {y}
    if y == SMALL:
        return {x}
    (v1, s1), (v2, s2) = x, y
    if v1 != v2:
        return {x if v1 < v2 else y}
    out = set()
    res = {s: [r for r in range(1, p) if legendre(r, p) == s] for s in (1, -1)}
    for r1 in res[s1]:
        for r2 in res[s2]:
            r = (r1 + r2) % p
            if r:
                out.add((v1, legendre(r, p)))
            else:
                # the sum meets p^(v+1) Z_p, and unit cells are open, so all of it
                out.add(SMALL)
                out.update((w, s) for w in range(v1 + 1, top + 1) for s in (1, -1))
        if len(out) == 2 + 2 * (top - v1):
            break
    return out


def _represents_odd(blocks: list[JordanBlock], n: Fraction, p: int) -> bool:
    top = _val(n, p)
    values = {SMALL}
    for b in blocks:
        a = Fraction(b.matrix[0][0])
        s = det_class(a, p)
        own = {SMALL} | {(v, s) for v in range(b.scale, top + 1, 2)}
        values = {z for x in values for y in own for z in _cell_sum(x, y, p, top)}
    return (top, det_class(n, p)) in values


def represents_locally(gram, n, p: int) -> bool:
    """Whether ``x^T G x = n`` has a solution over the p-adic integers.

    At odd p the value set of the diagonal Jordan form is computed exactly
    as a union of (valuation, square class) cells. At p = 2 solutions
    x = 2^s y with y primitive are tried for each admissible s: the gradient
    2Gy has a coordinate of valuation at most D = (largest scale) + 1, so a
    solution modulo 2^(2D+1) lifts by Hensel's lemma.
    """
    _require_prime(p)
    n = Fraction(n)
    if n == 0:
        return True
    if len(gram) == 0:
        return False
    blocks = jordan_blocks(gram, p)
    if p != 2:
        return _represents_odd(blocks, n, p)
    d = max(b.scale for b in blocks) + (1 if p == 2 else 0)
    e = 2 * d + 1
    m = p ** e
    any_mask, prim_mask = 1, 0
    for b in blocks:
        ba, bp = _block_value_masks(b, p, e)
        prim_mask = _sumset(prim_mask, ba, m) | _sumset(any_mask, bp, m)
        any_mask = _sumset(any_mask, ba, m)
    vn = _val(n, p)
    if vn < 0:
        return False
    for s in range(vn // 2 + 1):
        target = n / Fraction(p) ** (2 * s)
        if (prim_mask >> residue(target, p, e)) & 1:
            return True
    return False


def represents_padically(lat: IntLattice, n: int, p: int) -> bool:
    sig = lat.signature
    if sig == (lat.rank, 0):
        if n <= 0:
            return False
    elif sig == (0, lat.rank):
        if n >= 0:
            return False
    else:
        raise LocalError("p-adic representation test implemented for definite forms only")
    return represents_locally(lat.gram, n, p)


def congruence_solutions(gram, n: int, modulus: int) -> list[tuple[int, ...]]:
    """All ``x`` in ``[0, modulus)^k`` with ``x^T G x = n (mod modulus)``, sorted."""
    gram = gram.gram if isinstance(gram, IntLattice) else gram
    k = len(gram)
    out = []
    for x in itertools.product(range(modulus), repeat=k):
        if (la.bilinear(gram, x, x) - n) % modulus == 0:
            out.append(x)
    return out


def primes_of(n: int) -> list[int]:
    return prime_factors(n)
