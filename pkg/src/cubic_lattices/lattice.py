"""Integral lattices given by Gram matrices, sublattices and gluing."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt
from typing import Sequence

from . import linalg as la


class LatticeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IntLattice:
    """A nondegenerate integral lattice, stored as its Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    name: str | None = None

    def __init__(self, gram: Sequence[Sequence[int]], name: str | None = None):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        la.check_size(len(g))
        if not la.is_symmetric(g):
            raise LatticeError("Gram matrix is not symmetric")
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "name", name)
        if la.det(g) == 0:
            raise LatticeError("degenerate lattice")

    def __eq__(self, other):
        return isinstance(other, IntLattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"IntLattice({label}rank={self.rank}, det={self.det})"

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    @cached_property
    def det(self) -> int:
        return int(la.det(self.gram))

    @cached_property
    def signature(self) -> tuple[int, int]:
        diag = la.ldl_diagonal(self.gram)
        pos = sum(1 for d in diag if d > 0)
        return pos, len(diag) - pos

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_positive_definite(self) -> bool:
        return self.signature == (self.rank, 0)

    def norm(self, v) -> int:
        return la.bilinear(self.gram, v, v)

    def pair(self, u, v):
        return la.bilinear(self.gram, u, v)

    def scaled(self, c: int) -> IntLattice:
        """The lattice L(c): same group, form multiplied by ``c``."""
        name = f"{self.name}({c})" if self.name else None
        return IntLattice([[c * x for x in row] for row in self.gram], name)

    def __add__(self, other: IntLattice) -> IntLattice:
        return direct_sum(self, other)

    def to_json(self) -> dict:
        d = {"gram": self.matrix}
        if self.name:
            d["name"] = self.name
        return d


def signature(lat: IntLattice) -> tuple[int, int]:
    return lat.signature


def determinant(lat: IntLattice) -> int:
    return lat.det


def direct_sum(*lats: IntLattice) -> IntLattice:
    n = sum(l.rank for l in lats)
    g = la.zeros(n, n)
    off = 0
    for l in lats:
        for i in range(l.rank):
            for j in range(l.rank):
                g[off + i][off + j] = l.gram[i][j]
        off += l.rank
    return IntLattice(g)


def diagonal(entries: Sequence[int], name: str | None = None) -> IntLattice:
    n = len(entries)
    return IntLattice([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], name)


# ---------------------------------------------------------------------------
# discriminant group


@dataclass(frozen=True)
class DiscriminantGroup:
    """``L*/L`` as a sum of cyclic groups.

    ``generators[i]`` is a rational coordinate vector (in the basis of L) of
    a dual vector whose class has order ``factors[i]``; factors satisfy
    d1 | d2 | ... and are all > 1.
    """

    factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    # V^{-1} from the Smith form, used to read off coordinates of dual vectors
    _vinv: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    _offset: int = field(repr=False, default=0)

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    def length(self, p: int | None = None) -> int:
        """l(A) or, given ``p``, l(A_p)."""
        if p is None:
            return len(self.factors)
        return sum(1 for d in self.factors if d % p == 0)

    def coordinates(self, x: Sequence) -> tuple[int, ...]:
        """Coordinates of the class of a dual vector ``x`` (rational, in L-basis)."""
        n = len(self._vinv)
        y = [sum(Fraction(self._vinv[i][j]) * Fraction(x[j]) for j in range(n)) for i in range(n)]
        out = []
        for k, d in enumerate(self.factors):
            c = y[self._offset + k] * d
            if c.denominator != 1:
                raise LatticeError("vector is not in the dual lattice")
            out.append(int(c) % d)
        # components with factor 1 must be integral
        return tuple(out)

    def lift(self, element: Sequence[int]) -> list[Fraction]:
        n = len(self._vinv)
        v = [Fraction(0)] * n
        for c, g in zip(element, self.generators):
            if c:
                for j in range(n):
                    v[j] += c * g[j]
        return v


def discriminant_group(lat: IntLattice) -> DiscriminantGroup:
    n = lat.rank
    if n == 0:
        return DiscriminantGroup((), (), (), 0)
    d, _, v = la.smith_normal_form(lat.gram)
    diag = [abs(d[i][i]) for i in range(n)]
    # L* = G^{-1} Z^n = V D^{-1} Z^n; generator i is column i of V over d_i
    offset = sum(1 for x in diag if x == 1)
    gens = []
    factors = []
    for i in range(offset, n):
        factors.append(diag[i])
        gens.append(tuple(Fraction(v[r][i], diag[i]) for r in range(n)))
    vinv = la.to_int_matrix(la.inverse(v))
    return DiscriminantGroup(tuple(factors), tuple(gens), tuple(map(tuple, vinv)), offset)


def dual_gram(lat: IntLattice) -> list[list[Fraction]]:
    return la.inverse(lat.gram)


# ---------------------------------------------------------------------------
# sublattices


@dataclass(frozen=True, eq=False)
class Sublattice:
    """Row span of ``basis`` inside ``ambient`` (coordinates in ambient basis)."""

    ambient: IntLattice
    basis: tuple[tuple[int, ...], ...]

    def __init__(self, ambient: IntLattice, basis: Sequence[Sequence[int]]):
        b = tuple(tuple(int(x) for x in row) for row in basis)
        if any(len(r) != ambient.rank for r in b):
            raise LatticeError("basis vectors have wrong length")
        if b and la.rank([list(r) for r in b]) != len(b):
            raise LatticeError("basis rows are linearly dependent")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", b)

    def __eq__(self, other):
        return (isinstance(other, Sublattice) and self.ambient == other.ambient
                and la.hermite_normal_form(self.basis) == la.hermite_normal_form(other.basis))

    def __hash__(self):
        return hash(tuple(map(tuple, la.hermite_normal_form(self.basis))))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self) -> list[list[int]]:
        b = [list(r) for r in self.basis]
        return la.matmul(la.matmul(b, self.ambient.matrix), la.transpose(b))

    def lattice(self, name: str | None = None) -> IntLattice:
        return IntLattice(self.gram, name)

    @property
    def det(self) -> int:
        return int(la.det(self.gram))

    def contains(self, v: Sequence[int]) -> bool:
        c = la.solve_rational([list(r) for r in self.basis], v)
        return c is not None and all(x.denominator == 1 for x in c)

    def coordinates(self, v: Sequence[int]) -> list[Fraction] | None:
        return la.solve_rational([list(r) for r in self.basis], v)

    def is_saturated(self) -> bool:
        return saturation_index(self) == 1


def saturation_index(sub: Sublattice) -> int:
    if not sub.basis:
        return 1
    d, _, _ = la.smith_normal_form(sub.basis)
    out = 1
    for i in range(sub.rank):
        out *= d[i][i]
    return out


def saturate(sub: Sublattice) -> Sublattice:
    """The saturation ``N ∩ (S ⊗ Q)``, returned in Hermite normal form."""
    if not sub.basis:
        return sub
    _, _, v = la.smith_normal_form(sub.basis)
    vinv = la.to_int_matrix(la.inverse(v))
    return Sublattice(sub.ambient, la.hermite_normal_form(vinv[: sub.rank]))


def orthogonal_complement(sub: Sublattice) -> Sublattice:
    """All ambient vectors orthogonal to ``sub``; saturated by construction."""
    amb = sub.ambient
    if not sub.basis:
        return Sublattice(amb, la.identity(amb.rank))
    rows = la.matmul([list(r) for r in sub.basis], amb.matrix)
    return Sublattice(amb, la.integer_kernel(rows, amb.rank))


def primitive_vector(v: Sequence[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise LatticeError("zero vector")
    return [int(x) // g for x in v]


# ---------------------------------------------------------------------------
# gluing


@dataclass(frozen=True)
class GluingData:
    """Anti-isometric identification of subgroups of two discriminant groups.

    ``generators`` are elements of A_left and ``images`` their images in
    A_right, both in the coordinates of :func:`discriminant_group`.
    """

    left: IntLattice
    right: IntLattice
    generators: tuple[tuple[int, ...], ...] = ()
    images: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        object.__setattr__(self, "images", tuple(tuple(g) for g in self.images))
        if len(self.generators) != len(self.images):
            raise LatticeError("generators and images differ in number")


@dataclass(frozen=True)
class GlueResult:
    lattice: IntLattice
    left_embedding: list[list[int]]
    right_embedding: list[list[int]]
    index: int


def _row_lattice_basis(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], int]:
    ints, den = la.scale_to_int(rows)
    h = la.hermite_normal_form(ints)
    return [[Fraction(x, den) for x in r] for r in h], den


def glue(data: GluingData) -> GlueResult:
    """The overlattice of ``left ⊕ right`` given by the graph of the gluing map."""
    L, R = data.left, data.right
    n, m = L.rank, R.rank
    AL, AR = discriminant_group(L), discriminant_group(R)
    from .forms import bilinear_form, discriminant_form  # local: forms imports lattice

    both_even = L.is_even and R.is_even
    if both_even:
        qL, qR = discriminant_form(L), discriminant_form(R)
    else:
        qL, qR = bilinear_form(L), bilinear_form(R)
    gens, ims = data.generators, data.images
    for i, (x, y) in enumerate(zip(gens, ims)):
        if both_even and (qL.q(x) + qR.q(y)) % 2 != 0:
            raise LatticeError("gluing group not isotropic")
        for j in range(i + 1):
            if (qL.b(x, gens[j]) + qR.b(y, ims[j])) % 1 != 0:
                raise LatticeError("gluing group not isotropic")

    base = [[Fraction(int(i == j)) for j in range(n + m)] for i in range(n + m)]
    glue_rows = [list(AL.lift(x)) + list(AR.lift(y)) for x, y in zip(gens, ims)]
    basis, _ = _row_lattice_basis(base + glue_rows)
    if len(basis) != n + m:
        raise LatticeError("gluing produced a lattice of wrong rank")

    full = direct_sum(L, R).matrix
    gram = la.matmul(la.matmul(basis, full), la.transpose(basis))
    try:
        gram = la.to_int_matrix(gram)
    except ValueError as exc:
        raise LatticeError("gluing group not isotropic") from exc

    # map must be well defined and injective: graph order equals both projections
    index = _index_of(basis, n + m)
    left_proj = _index_of(_row_lattice_basis(
        [list(r) for r in la.identity(n)] + [list(AL.lift(x)) for x in gens])[0], n)
    right_proj = _index_of(_row_lattice_basis(
        [list(r) for r in la.identity(m)] + [list(AR.lift(y)) for y in ims])[0], m)
    if not (index == left_proj == right_proj):
        raise LatticeError("gluing map is not an injective homomorphism")

    binv = la.inverse(basis)
    emb = la.to_int_matrix(binv)  # rows: unit vectors of L ⊕ R in new coordinates
    result = IntLattice(gram)
    return GlueResult(result, emb[:n], emb[n:], index)


def _index_of(basis: list[list[Fraction]], n: int) -> int:
    """Index [M : Z^n] for a full-rank row basis ``basis`` of M ⊇ Z^n."""
    d = abs(la.det(basis))
    inv = 1 / Fraction(d)
    if inv.denominator != 1:
        raise LatticeError("overlattice index not integral")
    return int(inv)


# ---------------------------------------------------------------------------
# serialization


def parse_gram_text(text: str) -> list[list[int]]:
    tokens = text.split()
    if not tokens:
        raise LatticeError("empty input")
    n = int(tokens[0])
    vals = [int(t) for t in tokens[1:]]
    if len(vals) != n * n:
        raise LatticeError(f"expected {n * n} entries, got {len(vals)}")
    return [vals[i * n:(i + 1) * n] for i in range(n)]


def format_gram_text(lat: IntLattice) -> str:
    lines = [str(lat.rank)] + [" ".join(map(str, r)) for r in lat.gram]
    return "\n".join(lines) + "\n"


def loads(text: str) -> IntLattice:
    """Parse either the JSON form ``{"name":..., "gram": [[...]]}`` (or a bare
    nested list) or the whitespace text form."""
    s = text.strip()
    if s.startswith("{") or s.startswith("["):
        obj = json.loads(s)
        if isinstance(obj, list):
            return IntLattice(obj)
        if "gram" not in obj:
            raise LatticeError("JSON lattice needs a 'gram' field")
        return IntLattice(obj["gram"], obj.get("name"))
    return IntLattice(parse_gram_text(s))


def dumps(lat: IntLattice) -> str:
    return json.dumps(lat.to_json())


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
