"""Random lattices and random vectors of L0 for property checks and surveys."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg as la
from .catalog import H2, L
from .lattice import IntLattice, Sublattice, primitive_vector, saturate


def random_even_gram(rng: random.Random, max_rank: int = 8, max_entry: int = 12,
                     rank: int | None = None) -> list[list[int]]:
    """Nondegenerate symmetric integer matrix with even diagonal (any signature)."""
    while True:
        n = rank or rng.randint(1, max_rank)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = 2 * rng.randint(-(max_entry // 2), max_entry // 2)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randint(-max_entry, max_entry)
        if la.det(g) != 0:
            return g


def random_positive_gram(rng: random.Random, rank: int, spread: int = 2, even: bool = False) -> list[list[int]]:
    """B B^T, doubled when ``even``, for a random nonsingular integer B."""
    while True:
        b = [[rng.randint(-spread, spread) for _ in range(rank)] for _ in range(rank)]
        g = la.matmul(b, la.transpose(b))
        if even:
            g = [[2 * x for x in r] for r in g]
        if la.det(g) != 0:
            return g


# ---------------------------------------------------------------------------
# vectors of L0 inside L = <1>^21 + <-1>^2


def _reflection_roots() -> list[list[int]]:
    """Some norm-2 vectors of L orthogonal to h2."""
    out = []
    for i in range(20):
        r = [0] * 23
        r[i], r[i + 1] = 1, -1
        out.append(r)
    for tail in (21, 22):
        for start in range(0, 19, 3):
            r = [0] * 23
            r[start] = r[start + 1] = r[start + 2] = 1
            r[tail] = 1
            out.append(r)
    return out


_ROOTS = _reflection_roots()


def _reflect(v: list[int], r: list[int]) -> list[int]:
    c = L.pair(v, r)  # r has norm 2
    return [a - c * b for a, b in zip(v, r)]


def _scramble(rng: random.Random, v: list[int], steps: int) -> list[int]:
    for _ in range(steps):
        v = _reflect(v, rng.choice(_ROOTS))
    return v


def random_l0_vector(rng: random.Random, kind: str = "any", steps: int = 6) -> list[int]:
    """A vector of L orthogonal to h2, primitive in L.

    ``kind`` is ``root``, ``long`` (norm 6, pairing into 3Z with L0) or
    ``any``.  Roots and long roots are moved around by reflections in roots
    of L0, which fix h2.
    """
    if kind == "root":
        base = [0] * 23
        base[0], base[1] = 1, -1
        return _scramble(rng, base, steps)
    if kind == "long":
        base = [-1] * 21 + [-3, -3]
        base[0] = 2  # 3 e_1 - h2
        return _scramble(rng, base, steps)
    basis = l0_basis()
    while True:
        coeffs = [rng.randint(-2, 2) if rng.random() < 0.3 else 0 for _ in basis]
        v = la.vecmat(coeffs, basis)
        if any(v):
            return primitive_vector(v)


_L0_BASIS: list[list[int]] | None = None


def l0_basis() -> list[list[int]]:
    global _L0_BASIS
    if _L0_BASIS is None:
        _L0_BASIS = la.integer_kernel([list(la.matvec(L.gram, H2))], 23)
    return _L0_BASIS


def is_long_root_of_l0(v) -> bool:
    """Norm 6 with every pairing against L0 divisible by 3."""
    return L.norm(v) == 6 and all(L.pair(v, b) % 3 == 0 for b in l0_basis())


@dataclass(frozen=True)
class SaturationSample:
    vector: tuple[int, ...]
    norm: int
    det: int
    is_root: bool
    is_long_root: bool
    claim_holds: bool  # 3 * xi lies in Z m0 + Z h2 for each saturation generator


def saturation_sample(m0) -> SaturationSample:
    """Saturate Z m0 + Z h2 inside L and record the determinant."""
    pair = Sublattice(L, [list(m0), list(H2)])
    sat = saturate(pair)
    claim = all(pair.contains([3 * x for x in xi]) for xi in sat.basis)
    return SaturationSample(tuple(m0), L.norm(m0), sat.det, L.norm(m0) == 2,
                            is_long_root_of_l0(m0), claim)


def random_even_positive(rng: random.Random, rank: int, spread: int = 2) -> IntLattice:
    return IntLattice(random_positive_gram(rng, rank, spread, even=True))
