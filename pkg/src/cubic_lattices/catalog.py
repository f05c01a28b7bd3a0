"""Named lattices: U, A2, D4, E8, the middle cohomology lattice L with its
norm-3 class h2, the primitive part L0, and ``diag:`` shorthands."""

from __future__ import annotations

import re

from .lattice import IntLattice, LatticeError, Sublattice, diagonal, direct_sum, orthogonal_complement

U = IntLattice([[0, 1], [1, 0]], "U")
A2 = IntLattice([[2, 1], [1, 2]], "A2")
D4 = IntLattice([[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]], "D4")
E8 = IntLattice([
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
], "E8")

# L = <1>^21 + <-1>^2.  h2 has all coordinates odd, so it is characteristic
# and its orthogonal complement is even; its norm is 21 - 9 - 9 = 3.
L = IntLattice([[(1 if i < 21 else -1) if i == j else 0 for j in range(23)] for i in range(23)], "L")
H2 = tuple([1] * 21 + [3, 3])

L0 = IntLattice(direct_sum(A2, U, U, E8, E8).gram, "L0")


def l0_in_l() -> Sublattice:
    """The orthogonal complement of h2 in L (isometric to L0)."""
    return orthogonal_complement(Sublattice(L, [H2]))


NAMED = {"U": U, "A2": A2, "D4": D4, "E8": E8, "L": L, "L0": L0}

_TERM = re.compile(r"^(?P<base>diag:[-0-9,\s]+|[A-Za-z][A-Za-z0-9]*)(\((?P<scale>-?\d+)\))?$")


def _term(text: str) -> IntLattice:
    m = _TERM.match(text.strip())
    if not m:
        raise LatticeError(f"unknown catalog entry {text!r}")
    base = m.group("base")
    if base.startswith("diag:"):
        try:
            entries = [int(x) for x in base[5:].split(",") if x.strip()]
        except ValueError as exc:
            raise LatticeError(f"bad diagonal entries in {text!r}") from exc
        if not entries:
            raise LatticeError("empty diagonal")
        lat = diagonal(entries)
    elif base in NAMED:
        lat = NAMED[base]
    else:
        raise LatticeError(f"unknown catalog entry {base!r}")
    if m.group("scale"):
        lat = lat.scaled(int(m.group("scale")))
    return lat


def lookup(spec: str) -> IntLattice:
    """Resolve ``NAME``, ``NAME(k)``, ``diag:a,b,...`` or ``+``-separated sums."""
    parts = [p for p in spec.split("+") if p.strip()]
    if not parts:
        raise LatticeError("empty catalog specification")
    lats = [_term(p) for p in parts]
    if len(lats) == 1:
        return lats[0]
    return IntLattice(direct_sum(*lats).gram, spec)
