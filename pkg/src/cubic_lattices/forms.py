"""Finite quadratic and bilinear forms on discriminant groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterator, Sequence

from . import linalg as la
from .lattice import IntLattice, discriminant_group

Element = tuple[int, ...]


class FormError(ValueError):
    pass


def mod2(x) -> Fraction:
    x = Fraction(x)
    return x - 2 * (x.numerator // (2 * x.denominator))


def mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s) if not isinstance(s, str) else Fraction(s.strip())


def _lcm(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """A form on ``Z/d1 + ... + Z/dk`` given on the standard generators.

    ``qvals[i]`` is q(g_i) in Q/2Z and ``bvals[i][j]`` is b(g_i, g_j) in Q/Z.
    ``qvals`` may be ``None``; the object then only carries a bilinear form
    (this is what odd lattices give).
    """

    factors: tuple[int, ...]
    qvals: tuple[Fraction, ...] | None
    bvals: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.factors)
        f = tuple(int(d) for d in self.factors)
        if any(d < 2 for d in f):
            raise FormError("invariant factors must exceed 1")
        b = tuple(tuple(mod1(x) for x in row) for row in self.bvals)
        if len(b) != k or any(len(r) != k for r in b):
            raise FormError("bilinear matrix has wrong shape")
        if any(b[i][j] != b[j][i] for i in range(k) for j in range(i)):
            raise FormError("bilinear form not symmetric")
        for i in range(k):
            for j in range(k):
                if (f[i] * b[i][j]).denominator != 1:
                    raise FormError("bilinear values incompatible with orders")
        q = None
        if self.qvals is not None:
            q = tuple(mod2(x) for x in self.qvals)
            if len(q) != k:
                raise FormError("wrong number of q-values")
            for i in range(k):
                if mod1(q[i]) != b[i][i]:
                    raise FormError("q and b disagree on the diagonal")
                if (f[i] * f[i] * q[i]) % 2 != 0:
                    raise FormError("q-value incompatible with generator order")
        object.__setattr__(self, "factors", f)
        object.__setattr__(self, "qvals", q)
        object.__setattr__(self, "bvals", b)

    # -- group structure -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    def length(self, p: int | None = None) -> int:
        if p is None:
            return len(self.factors)
        return sum(1 for d in self.factors if d % p == 0)

    @property
    def is_quadratic(self) -> bool:
        return self.qvals is not None

    def normalize(self, x: Sequence[int]) -> Element:
        if len(x) != self.rank:
            raise FormError("element has wrong length")
        return tuple(int(c) % d for c, d in zip(x, self.factors))

    def zero(self) -> Element:
        return (0,) * self.rank

    def add(self, x, y) -> Element:
        return self.normalize([a + b for a, b in zip(x, y)])

    def scale(self, n: int, x) -> Element:
        return self.normalize([n * a for a in x])

    def element_order(self, x) -> int:
        out = 1
        for c, d in zip(self.normalize(x), self.factors):
            out = out * (d // gcd(c, d)) // gcd(out, d // gcd(c, d))
        return out

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(d) for d in self.factors))

    # -- values ----------------------------------------------------------

    def b(self, x, y) -> Fraction:
        s = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.bvals[i]
                for j, yj in enumerate(y):
                    if yj:
                        s += xi * yj * row[j]
        return mod1(s)

    def q(self, x) -> Fraction:
        if self.qvals is None:
            raise FormError("no quadratic form available (odd lattice)")
        s = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                s += xi * xi * self.qvals[i]
                row = self.bvals[i]
                for j in range(i + 1, len(x)):
                    if x[j]:
                        s += 2 * xi * x[j] * row[j]
        return mod2(s)

    # -- constructions ---------------------------------------------------

    def __neg__(self) -> FiniteQuadraticForm:
        q = None if self.qvals is None else tuple(-x for x in self.qvals)
        return FiniteQuadraticForm(self.factors, q, tuple(tuple(-x for x in r) for r in self.bvals))

    def __add__(self, other: FiniteQuadraticForm) -> FiniteQuadraticForm:
        return direct_sum(self, other)

    def subgroup(self, generators: Sequence[Sequence[int]]) -> tuple[FiniteQuadraticForm, list[Element]]:
        """Restriction to the subgroup spanned by ``generators``.

        Returns the restricted form in invariant-factor shape together with
        its generators written in the coordinates of ``self``.  The
        restriction may be degenerate; no check is made here.
        """
        k = self.rank
        if k == 0:
            return self, []
        rows = [self.normalize(g) for g in generators]
        rows = [list(r) for r in rows] + [[self.factors[i] * (i == j) for j in range(k)] for i in range(k)]
        hb = la.hermite_normal_form(rows)
        binv = la.inverse(hb)
        dmat = [[self.factors[i] * (i == j) for j in range(k)] for i in range(k)]
        rel = la.to_int_matrix(la.matmul(dmat, binv))
        s, _, v = la.smith_normal_form(rel)
        vinv_b = la.to_int_matrix(la.matmul(la.inverse(v), hb))
        new_factors, gens = [], []
        for i in range(k):
            if s[i][i] > 1:
                new_factors.append(s[i][i])
                gens.append(self.normalize(vinv_b[i]))
        return self._restrict_to(new_factors, gens), gens

    def _restrict_to(self, factors, gens) -> FiniteQuadraticForm:
        bv = [[self.b(x, y) for y in gens] for x in gens]
        qv = None if self.qvals is None else [self.q(x) for x in gens]
        return FiniteQuadraticForm(tuple(factors), qv, bv)

    def p_part_generators(self, p: int) -> list[Element]:
        gens = []
        for i, d in enumerate(self.factors):
            if d % p == 0:
                pk = p ** _val(d, p)
                e = [0] * self.rank
                e[i] = d // pk
                gens.append(tuple(e))
        return gens

    def p_part(self, p: int) -> FiniteQuadraticForm:
        gens = self.p_part_generators(p)
        return self._restrict_to(_orders(self, gens), gens)

    def primes(self) -> list[int]:
        return prime_factors(self.order)

    def annihilator_kernel(self) -> list[Element]:
        """Generators of ``{x : b(x, A) = 0}``."""
        k = self.rank
        if k == 0:
            return []
        n = _lcm(self.factors)
        c = [[int(n * self.bvals[i][j]) for j in range(k)] for i in range(k)]
        return _congruence_kernel(c, n, self.factors)

    def is_nondegenerate(self) -> bool:
        if self.rank == 0:
            return True
        sub, _ = self.subgroup(self.annihilator_kernel())
        return sub.rank == 0

    def orthogonal_subgroup(self, h: Sequence[int]) -> tuple[FiniteQuadraticForm, list[Element]]:
        h = self.normalize(h)
        k = self.rank
        if k == 0:
            return self, []
        n = _lcm(self.factors)
        col = [[int(n * self.b(self._unit(i), h))] for i in range(k)]
        return self.subgroup(_congruence_kernel(col, n, self.factors))

    def _unit(self, i: int) -> Element:
        return tuple(int(i == j) for j in range(self.rank))

    def signature_mod8(self) -> int:
        from .padic import signature_mod8

        return signature_mod8(self)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "factors": list(self.factors),
            "q": None if self.qvals is None else [frac_str(x) for x in self.qvals],
            "b": [[frac_str(x) for x in r] for r in self.bvals],
        }

    @classmethod
    def from_json(cls, obj: dict) -> FiniteQuadraticForm:
        q = obj.get("q")
        return cls(
            tuple(obj["factors"]),
            None if q is None else tuple(parse_frac(x) for x in q),
            tuple(tuple(parse_frac(x) for x in r) for r in obj["b"]),
        )


def trivial_form() -> FiniteQuadraticForm:
    return FiniteQuadraticForm((), (), ())


def cyclic_form(d: int, q: Fraction) -> FiniteQuadraticForm:
    q = Fraction(q)
    return FiniteQuadraticForm((d,), (q,), ((mod1(q),),))


def direct_sum(f: FiniteQuadraticForm, g: FiniteQuadraticForm) -> FiniteQuadraticForm:
    """Orthogonal sum, re-expressed on invariant-factor generators."""
    k, m = f.rank, g.rank
    factors = f.factors + g.factors
    bv = [[Fraction(0)] * (k + m) for _ in range(k + m)]
    for i in range(k):
        for j in range(k):
            bv[i][j] = f.bvals[i][j]
    for i in range(m):
        for j in range(m):
            bv[k + i][k + j] = g.bvals[i][j]
    qv = None
    if f.qvals is not None and g.qvals is not None:
        qv = list(f.qvals) + list(g.qvals)
    raw = _RawForm(factors, qv, bv)
    return raw.canonical()


@dataclass
class _RawForm:
    """A form on an arbitrary product of cyclic groups (orders need not divide)."""

    factors: tuple[int, ...]
    qvals: list[Fraction] | None
    bvals: list[list[Fraction]]

    def canonical(self) -> FiniteQuadraticForm:
        keep = [i for i, d in enumerate(self.factors) if d > 1]
        factors = [self.factors[i] for i in keep]
        if not factors:
            return trivial_form()
        k = len(factors)
        # relation matrix diag(factors); Smith form gives invariant-factor generators
        s, _, v = la.smith_normal_form([[factors[i] * (i == j) for j in range(k)] for i in range(k)])
        vinv = la.to_int_matrix(la.inverse(v))
        gens, new = [], []
        for i in range(k):
            if s[i][i] > 1:
                new.append(s[i][i])
                gens.append([vinv[i][j] % factors[j] for j in range(k)])

        def bval(x, y):
            return mod1(sum(x[i] * y[j] * self.bvals[keep[i]][keep[j]] for i in range(k) for j in range(k)))

        def qval(x):
            s_ = Fraction(0)
            for i in range(k):
                s_ += x[i] * x[i] * self.qvals[keep[i]]
                for j in range(i + 1, k):
                    s_ += 2 * x[i] * x[j] * self.bvals[keep[i]][keep[j]]
            return mod2(s_)

        bv = [[bval(x, y) for y in gens] for x in gens]
        qv = None if self.qvals is None else [qval(x) for x in gens]
        return FiniteQuadraticForm(tuple(new), qv, bv)


def _congruence_kernel(c: list[list[int]], n: int, factors: Sequence[int]) -> list[list[int]]:
    """Generators of ``{x in Z^k : x C = 0 mod n}`` (``C`` is k x m)."""
    k = len(c)
    m = len(c[0]) if c else 0
    if m == 0:
        return [[int(i == j) for j in range(k)] for i in range(k)]
    # rows of the system C^T x + n y = 0
    system = [[c[i][j] for i in range(k)] + [n * (j == t) for t in range(m)] for j in range(m)]
    ker = la.integer_kernel(system, k + m)
    return [r[:k] for r in ker]


# ---------------------------------------------------------------------------
# lattice -> form


def _dual_values(lat: IntLattice):
    ag = discriminant_group(lat)
    g = lat.gram
    gens = ag.generators
    vals = [[la.bilinear(g, x, y) for y in gens] for x in gens]
    return ag, vals


def discriminant_form(lat: IntLattice) -> FiniteQuadraticForm:
    if not lat.is_even:
        raise FormError("discriminant quadratic form requires even lattice")
    ag, vals = _dual_values(lat)
    k = len(ag.factors)
    return FiniteQuadraticForm(ag.factors, tuple(vals[i][i] for i in range(k)), vals)


def bilinear_form(lat: IntLattice) -> FiniteQuadraticForm:
    ag, vals = _dual_values(lat)
    return FiniteQuadraticForm(ag.factors, None, vals)


# ---------------------------------------------------------------------------
# searches


def order3_witnesses(q: FiniteQuadraticForm, value: Fraction = Fraction(2, 3)) -> list[Element]:
    """Elements ``h`` with ``3h = 0`` and ``q(h) = value``, sorted."""
    # elements of order dividing 3 are spanned by (d_i/3) e_i
    tors = []
    for i, d in enumerate(q.factors):
        if d % 3 == 0:
            e = [0] * q.rank
            e[i] = d // 3
            tors.append(e)
    out = []
    for coeffs in itertools.product(range(3), repeat=len(tors)):
        x = [0] * q.rank
        for c, e in zip(coeffs, tors):
            for j in range(q.rank):
                x[j] += c * e[j]
        x = q.normalize(x)
        if any(x) and q.q(x) == mod2(value):
            out.append(x)
    return sorted(out)


@dataclass(frozen=True)
class FormIsomorphism:
    """Images of the generators of the source form; ``images`` is ``None``
    when the isomorphism was inferred from invariants rather than built."""

    images: tuple[Element, ...] | None
    method: str


EXHAUSTIVE_LIMIT = 10_000


def form_isomorphic(f: FiniteQuadraticForm, g: FiniteQuadraticForm) -> FormIsomorphism | None:
    if f.factors != g.factors:
        return None
    if f.rank == 0:
        return FormIsomorphism((), "exhaustive")
    if f.is_quadratic != g.is_quadratic:
        return None
    images = [[0] * g.rank for _ in range(f.rank)]
    method = "exhaustive"
    for p in f.primes():
        fp_gens = f.p_part_generators(p)
        gp_gens = g.p_part_generators(p)
        fp, gp = f._restrict_to(_orders(f, fp_gens), fp_gens), g._restrict_to(_orders(g, gp_gens), gp_gens)
        if fp.order > EXHAUSTIVE_LIMIT:
            from .padic import same_local_symbol

            if not same_local_symbol(fp, gp, p):
                return None
            method = "invariants"
            images = None
            continue
        local = _search_isometry(fp, gp)
        if local is None:
            return None
        if images is None:
            continue
        # g_i = sum over p of u_p * (o_p g_i) with u_p o_p = 1 mod p^k
        for idx, src in enumerate(fp_gens):
            i = next(t for t, c in enumerate(src) if c)
            o = src[i]
            pk = f.factors[i] // o
            u = pow(o, -1, pk) if pk > 1 else 0
            img = [sum(local[idx][t] * gp_gens[t][j] for t in range(len(gp_gens))) for j in range(g.rank)]
            for j in range(g.rank):
                images[i][j] += u * img[j]
    if images is None:
        return FormIsomorphism(None, method)
    result = tuple(g.normalize(r) for r in images)
    if not _check_isometry(f, g, result):  # pragma: no cover - internal guard
        raise FormError("internal error: constructed map is not an isometry")
    return FormIsomorphism(result, method)


def _orders(f: FiniteQuadraticForm, gens) -> list[int]:
    return [f.element_order(x) for x in gens]


def _check_isometry(f, g, images) -> bool:
    for i, d in enumerate(f.factors):
        if g.scale(d, images[i]) != g.zero():
            return False
        for j in range(i + 1):
            if g.b(images[i], images[j]) != f.bvals[i][j]:
                return False
        if f.is_quadratic and g.q(images[i]) != f.qvals[i]:
            return False
    return True


def _search_isometry(f: FiniteQuadraticForm, g: FiniteQuadraticForm) -> list[Element] | None:
    """Lexicographically least generator-image tuple that is an isometry."""
    elems = list(g.elements())
    by_gen = []
    for i, d in enumerate(f.factors):
        want_q = f.qvals[i] if f.is_quadratic else None
        cands = [y for y in elems if g.element_order(y) == d and g.b(y, y) == f.bvals[i][i]
                 and (want_q is None or g.q(y) == want_q)]
        if not cands:
            return None
        by_gen.append(cands)
    chosen: list[Element] = []

    def rec(i: int) -> bool:
        if i == f.rank:
            return True
        for y in by_gen[i]:
            if all(g.b(y, chosen[j]) == f.bvals[i][j] for j in range(i)):
                chosen.append(y)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    return list(chosen) if rec(0) else None


# ---------------------------------------------------------------------------
# small number theory helpers shared by the local code


def _val(n, p: int) -> int:
    n = Fraction(n)
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    a, b = n.numerator, n.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out
