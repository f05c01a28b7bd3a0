"""Decision procedures for the lattices A0(X), A(X) and T(X) of cubic
fourfolds, plus the local rootless-genus criterion.

Every procedure returns a :class:`DecisionReport` whose certificates can be
re-checked independently of the code that produced them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Any, Sequence

from . import linalg as la
from .catalog import L0
from .forms import (
    FiniteQuadraticForm,
    _val,
    bilinear_form,
    direct_sum as form_sum,
    discriminant_form,
    form_isomorphic,
    frac_str,
    is_prime,
    order3_witnesses,
)
from .lattice import IntLattice, LatticeError, Sublattice, direct_sum, orthogonal_complement
from .padic import (
    ExistenceTrace,
    _block_diag,
    choose_lift_2,
    det_class,
    even_lattice_exists,
    hasse,
    is_exceptional,
    legendre,
    local_invariants,
    padic_lift,
    represents_locally,
    signature_mod8,
)
from .shortvec import (
    RelativeLongRootQuery,
    has_roots,
    relative_long_roots,
    roots,
    short_vectors,
    vectors_of_norm,
)

YES, NO, UNDECIDED = "YES", "NO", "UNDECIDED"


class ClassifyError(ValueError):
    pass


@dataclass
class DecisionReport:
    verdict: str
    condition: str | None = None
    certificates: dict[str, Any] = field(default_factory=dict)
    invariants: dict[str, Any] = field(default_factory=dict)
    log: list[Any] = field(default_factory=list)
    reason: str | None = None

    def to_json(self) -> dict:
        return _jsonable({
            "verdict": self.verdict,
            "condition": self.condition,
            "certificates": self.certificates,
            "invariants": self.invariants,
            "log": self.log,
            "reason": self.reason,
        })


def _jsonable(x):
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, IntLattice):
        return x.matrix
    if isinstance(x, FiniteQuadraticForm):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def invariant_summary(lat: IntLattice) -> dict:
    out: dict[str, Any] = {
        "rank": lat.rank,
        "signature": list(lat.signature),
        "det": lat.det,
        "even": lat.is_even,
    }
    form = discriminant_form(lat) if lat.is_even else bilinear_form(lat)
    out["factors"] = list(form.factors)
    out["l"] = form.length()
    out["l_p"] = {str(p): form.length(p) for p in form.primes()}
    if lat.is_even:
        out["q"] = [frac_str(x) for x in form.qvals]
        out["signature_mod8"] = signature_mod8(form)
        out["local"] = {str(p): local_invariants(lat, p).to_json() for p in form.primes()}
    return out


# ---------------------------------------------------------------------------
# primitive embeddings into the even unimodular lattice of signature (22, 22)


OMEGA_SIGNATURE = (22, 22)


def embed_into_omega(sig: tuple[int, int], q: FiniteQuadraticForm) -> ExistenceTrace:
    """Whether an even lattice with signature ``sig`` and form ``q`` embeds
    primitively into U^22; equivalently whether its complement can exist."""
    cp, cm = OMEGA_SIGNATURE[0] - sig[0], OMEGA_SIGNATURE[1] - sig[1]
    if cp < 0 or cm < 0:
        return ExistenceTrace(False, {"signature fits": False})
    return even_lattice_exists((cp, cm), -q)


def _label_a(l: int, l3: int, rk: int) -> str:
    if l == l3 and l <= 20 - rk:
        return "A1"
    if l == l3 == 21 - rk:
        return "A2"
    if l == 22 - rk and l > l3:
        return "A3"
    return "A"


def _label_b(l: int, l3: int, rk: int) -> str:
    if l == l3 and l <= 22 - rk:
        return "B1"
    if l == l3 == 23 - rk:
        return "B2"
    if l == 22 - rk and l > l3:
        return "B3"
    return "B"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ClassifyError(msg)


def decide_A0(S: IntLattice) -> DecisionReport:
    """Does ``S`` occur as the primitive algebraic lattice of a cubic fourfold?"""
    if S.rank == 0:
        return DecisionReport(YES, "rank0", reason="zero lattice (rho = 1)")
    _require(S.is_even, "decide_A0 needs an even lattice")
    _require(S.is_positive_definite, "decide_A0 needs a positive-definite lattice")
    _require(S.rank <= 20, "rank must be at most 20")
    report = DecisionReport(NO, invariants=invariant_summary(S))
    rts = roots(S, up_to_sign=True)
    if rts:
        report.condition = "roots"
        report.certificates["root"] = list(rts[0])
        report.reason = "lattice contains a root"
        return report
    q = discriminant_form(S)
    rk, l, l3 = S.rank, q.length(), q.length(3)
    vsig = (rk + 2, 20)

    trace = embed_into_omega(vsig, form_sum(q, -discriminant_form(L0)))
    label = _label_a(l, l3, rk)
    report.log.append({"path": label, "checks": trace.checks, "holds": trace.holds})
    if trace.holds:
        report.verdict, report.condition = YES, label
        return report

    label = _label_b(l, l3, rk)
    for h in order3_witnesses(q):
        bad = relative_long_roots(RelativeLongRootQuery(S, h=h), up_to_sign=True)
        if bad:
            report.log.append({"path": "B", "h": list(h), "relative_long_root": list(bad[0])})
            continue
        g, _ = q.orthogonal_subgroup(h)
        trace = embed_into_omega(vsig, g)
        report.log.append({"path": label, "h": list(h), "checks": trace.checks, "holds": trace.holds})
        if trace.holds:
            report.verdict, report.condition = YES, label
            report.certificates["h"] = list(h)
            return report
    report.condition = "no embedding"
    report.reason = "neither path A nor any element h on path B gives an admissible embedding"
    return report


# ---------------------------------------------------------------------------
# genus enumeration


@dataclass(frozen=True)
class GenusSearchBudget:
    max_rank: int = 5
    max_det: int = 10 ** 6
    max_diag: int | None = None
    max_candidates: int = 200_000
    seconds: float = 30.0

    def __post_init__(self):
        if min(self.max_rank, self.max_det, self.max_candidates) <= 0 or self.seconds <= 0:
            raise ClassifyError("budget entries must be positive")
        if self.max_diag is not None and self.max_diag <= 0:
            raise ClassifyError("budget entries must be positive")


# bound on the product of diagonal entries of a reduced form, over det
_REDUCTION_CONSTANT = {1: Fraction(1), 2: Fraction(4, 3), 3: Fraction(2), 4: Fraction(4), 5: Fraction(8)}


@dataclass
class GenusSearchResult:
    lattices: list[IntLattice]
    exhausted: bool
    complete: bool
    candidates: int


def enumerate_genus(rank: int, target: FiniteQuadraticForm, rootless_only: bool = False,
                    budget: GenusSearchBudget | None = None, first_only: bool = False) -> GenusSearchResult:
    """Even positive-definite Gram matrices of ``rank`` whose discriminant
    form is isomorphic to ``target``.

    Scans Gram matrices with ascending even diagonal, product of diagonal
    entries at most c_n * det and |a_ij| <= a_ii / 2; every isometry class
    has such a representative (a Minkowski-reduced one) when n <= 5.
    """
    budget = budget or GenusSearchBudget()
    _require(rank >= 1, "rank must be positive")
    det = target.order
    if rank > budget.max_rank or det > budget.max_det:
        return GenusSearchResult([], True, False, 0)
    if not even_lattice_exists((rank, 0), target).holds:
        return GenusSearchResult([], False, True, 0)
    complete = rank in _REDUCTION_CONSTANT
    const = _REDUCTION_CONSTANT.get(rank, Fraction(4, 3) ** (rank * (rank - 1) // 2))
    cap = const * det
    start = time.monotonic()
    found: list[IntLattice] = []
    state = {"count": 0, "exhausted": False}
    g = [[0] * rank for _ in range(rank)]
    min_diag = 4 if rootless_only else 2

    def out_of_budget() -> bool:
        if state["count"] >= budget.max_candidates or time.monotonic() - start > budget.seconds:
            state["exhausted"] = True
        return state["exhausted"]

    def place_row(i: int, prod_so_far: int) -> bool:
        lo = g[i - 1][i - 1] if i else min_diag
        a = lo
        while True:
            if budget.max_diag is not None and a > budget.max_diag:
                break
            if prod_so_far * a ** (rank - i) > cap:
                break
            g[i][i] = a
            if fill_offdiag(i, 0, prod_so_far * a):
                return True
            if state["exhausted"]:
                return False
            a += 2
        return False

    def fill_offdiag(i: int, j: int, prod_so_far: int) -> bool:
        if j == i:
            minor = la.det([row[: i + 1] for row in g[: i + 1]])
            if minor <= 0:
                return False
            if i == rank - 1:
                return check_candidate()
            return place_row(i + 1, prod_so_far)
        half = g[j][j] // 2
        # flipping e_i makes g[i][0] >= 0 without touching the other bounds
        for v in (range(half + 1) if j == 0 else _symmetric_range(half)):
            g[i][j] = g[j][i] = v
            if fill_offdiag(i, j + 1, prod_so_far):
                return True
            if state["exhausted"]:
                return False
        g[i][j] = g[j][i] = 0
        return False

    def check_candidate() -> bool:
        if out_of_budget():
            return False
        state["count"] += 1
        if la.det(g) != det:
            return False
        lat = IntLattice([row[:] for row in g])
        if form_isomorphic(discriminant_form(lat), target) is None:
            return False
        if rootless_only and has_roots(lat):
            return False
        found.append(lat)
        return first_only

    place_row(0, 1)
    return GenusSearchResult(found, state["exhausted"], complete and not state["exhausted"], state["count"])


def _symmetric_range(half: int):
    yield 0
    for v in range(1, half + 1):
        yield v
        yield -v


# ---------------------------------------------------------------------------
# transcendental lattices


def _parse_certificate(cert, t_rank: int):
    if cert is None:
        return None, None
    if isinstance(cert, IntLattice):
        return cert, None
    if isinstance(cert, dict):
        if "gram" in cert:
            return IntLattice(cert["gram"]), None
        if "embedding" in cert:
            return None, [list(map(int, r)) for r in cert["embedding"]]
        raise ClassifyError("certificate needs a 'gram' or an 'embedding' entry")
    rows = [list(map(int, r)) for r in cert]
    if rows and len(rows[0]) == t_rank + L0.rank:
        return None, rows
    return IntLattice(rows), None


def _check_K(K: IntLattice, rank: int, target: FiniteQuadraticForm) -> str | None:
    if not K.is_even:
        return "K is not even"
    if K.rank != rank or not K.is_positive_definite:
        return f"K must be positive definite of rank {rank}"
    if has_roots(K):
        return "K has roots"
    if form_isomorphic(discriminant_form(K), target) is None:
        return "discriminant form of K does not match"
    return None


def verify_condition_B(T: IntLattice, embedding: Sequence[Sequence[int]]) -> tuple[bool, dict]:
    """Check an explicit embedding of U^(23-rho) into T(-1) + L0."""
    rho = 21 - T.signature[0]
    m = 23 - rho
    ambient = direct_sum(T.scaled(-1), L0)
    info: dict[str, Any] = {}
    rows = [list(map(int, r)) for r in embedding]
    if len(rows) != 2 * m or any(len(r) != ambient.rank for r in rows):
        info["shape"] = f"expected {2 * m} rows of length {ambient.rank}"
        return False, info
    try:
        sub = Sublattice(ambient, rows)
    except LatticeError as exc:
        info["shape"] = str(exc)
        return False, info
    u = [[int(i // 2 == j // 2 and i != j) for j in range(2 * m)] for i in range(2 * m)]
    info["gram_is_U"] = sub.gram == u
    info["primitive"] = sub.is_saturated()
    comp = orthogonal_complement(sub)
    K = comp.lattice()
    info["complement_positive"] = K.is_positive_definite and K.rank == rho - 1
    if not (info["gram_is_U"] and info["primitive"] and info["complement_positive"]):
        return False, info
    r = roots(K, up_to_sign=True)
    info["complement_rootless"] = not r
    if r:
        info["root"] = list(la.vecmat(list(r[0]), [list(b) for b in comp.basis]))
        return False, info
    bad = _delta_violations(T, ambient, rows)
    info["delta_condition"] = bad is None
    if bad is not None:
        info["delta"] = [frac_str(x) for x in bad]
    return bad is None, info


def _delta_violations(T: IntLattice, ambient: IntLattice, rows) -> list[Fraction] | None:
    """A vector of T(-1) + L0* orthogonal to the embedded U's with norm 2/3."""
    n_t = T.rank
    n = ambient.rank
    l0inv = la.inverse(L0.gram)
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n_t)]
    basis += [[Fraction(0)] * n_t + list(r) for r in l0inv]
    gw = ambient.gram
    pair = la.matmul(la.matmul(basis, gw), la.transpose(rows))
    ints, _ = la.scale_to_int(pair)
    ker = la.integer_kernel(la.transpose(ints), len(basis))
    lam = [la.vecmat(c, basis) for c in ker]
    gl = la.matmul(la.matmul(lam, gw), la.transpose(lam))
    scaled = la.to_int_matrix([[3 * x for x in r] for r in gl])
    for v, nm in short_vectors(IntLattice(scaled), 2, up_to_sign=True):
        if nm == 2:
            return la.vecmat(list(v), lam)
    return None


def decide_T(T: IntLattice, budget: GenusSearchBudget | None = None, certificate=None) -> DecisionReport:
    """Does ``T`` occur as the transcendental lattice of a cubic fourfold?"""
    tp, tm = T.signature
    _require(T.is_even, "T must be even")
    _require(tm == 2 and 0 <= tp <= 19, "T must have signature (21 - rho, 2) with 2 <= rho <= 21")
    rho = 21 - tp
    budget = budget or GenusSearchBudget()
    report = DecisionReport(UNDECIDED, invariants=invariant_summary(T))
    report.invariants["rho"] = rho
    cert_K, cert_E = _parse_certificate(certificate, T.rank)
    q = discriminant_form(T)
    taus = order3_witnesses(q)
    exhausted = cert_failed = False
    for tau in taus:
        g, _ = q.orthogonal_subgroup(tau)
        target = -g
        entry: dict[str, Any] = {"tau": list(tau), "target": target.to_json()}
        if cert_K is not None:
            problem = _check_K(cert_K, rho - 1, target)
            entry["certificate"] = problem or "ok"
            report.log.append(entry)
            if problem is None:
                report.verdict, report.condition = YES, "A"
                report.certificates.update(tau=list(tau), K=cert_K.matrix)
                return report
            cert_failed = True
            continue
        res = enumerate_genus(rho - 1, target, True, budget, first_only=True)
        entry.update(candidates=res.candidates, exhausted=res.exhausted, complete=res.complete)
        report.log.append(entry)
        exhausted = exhausted or res.exhausted or not res.complete
        if res.lattices:
            report.verdict, report.condition = YES, "A"
            report.certificates.update(tau=list(tau), K=res.lattices[0].matrix)
            return report
    if cert_E is not None:
        ok, info = verify_condition_B(T, cert_E)
        report.log.append({"condition B": info})
        if ok:
            report.verdict, report.condition = YES, "B"
            report.certificates["embedding"] = cert_E
            return report
    if not taus:
        report.reason = "no τ with q=2/3; condition B requires certificate"
    elif cert_failed:
        report.reason = "supplied K failed verification; condition B requires certificate"
    elif exhausted:
        report.reason = "condition A search exhausted its budget; condition B requires certificate"
    else:
        report.reason = "no rootless K exists for condition A; condition B requires certificate"
    return report


# ---------------------------------------------------------------------------
# full algebraic lattices


@dataclass(frozen=True)
class EvenCompanion:
    gram: tuple[tuple[int, ...], ...]
    degenerate: bool

    def lattice(self) -> IntLattice:
        if self.degenerate:
            raise LatticeError("degenerate lattice")
        return IntLattice(self.gram)


def even_companion(A: IntLattice, a: Sequence[int]) -> EvenCompanion:
    """Gram matrix Q(x, a) Q(y, a) - Q(x, y) on the group of ``A``."""
    pa = la.matvec(A.gram, a)
    g = [[pa[i] * pa[j] - A.gram[i][j] for j in range(A.rank)] for i in range(A.rank)]
    if any(g[i][i] % 2 for i in range(A.rank)):
        raise ClassifyError("parity condition fails: companion form is not even")
    return EvenCompanion(tuple(map(tuple, g)), la.det(g) == 0)


def companion_form(A: IntLattice, a: Sequence[int]) -> FiniteQuadraticForm:
    """The form alpha -> alpha(a)^2 - Q(alpha, alpha) on A*/A, with b = -b_A."""
    from .lattice import discriminant_group

    ag = discriminant_group(A)
    pa = la.matvec(A.gram, a)
    qv, bv = [], []
    for x in ag.generators:
        ax = la.dot(x, pa)
        qv.append(ax * ax - la.bilinear(A.gram, x, x))
        bv.append([-la.bilinear(A.gram, x, y) for y in ag.generators])
    return FiniteQuadraticForm(ag.factors, qv, bv)


def parity_holds(A: IntLattice, a: Sequence[int]) -> bool:
    pa = la.matvec(A.gram, a)
    return all((pa[i] * pa[i] - A.gram[i][i]) % 2 == 0 for i in range(A.rank))


_REMARK_LABELS = {"signature": "6.1", "length": "6.2", "p=2": "6.4"}


def decide_A(A: IntLattice) -> DecisionReport:
    """Does the odd lattice ``A`` occur as the full algebraic lattice?"""
    _require(not A.is_even, "decide_A needs an odd lattice")
    _require(A.is_positive_definite, "decide_A needs a positive-definite lattice")
    _require(2 <= A.rank <= 21, "rank must lie in [2, 21]")
    rho = A.rank
    report = DecisionReport(NO, invariants=invariant_summary(A))
    report.invariants["rho"] = rho
    candidates = vectors_of_norm(A, 3, up_to_sign=True)
    if not candidates:
        report.condition = "1"
        report.reason = "no norm-3 vector"
        return report
    first_failure = None
    for a in candidates:
        entry: dict[str, Any] = {"a": list(a)}
        sub = orthogonal_complement(Sublattice(A, [a]))
        basis = [list(r) for r in sub.basis]
        A0 = sub.lattice()
        failed, cert = None, {}
        if not A0.is_even:
            failed = "2"
        if failed is None:
            r = roots(A0, up_to_sign=True)
            if r:
                failed, cert = "3", {"root": la.vecmat(list(r[0]), basis)}
        if failed is None:
            lr = relative_long_roots(RelativeLongRootQuery(A, a=a), up_to_sign=True)
            if lr:
                failed, cert = "4", {"long_root": list(lr[0])}
        if failed is None and not parity_holds(A, a):
            failed = "5"
        if failed is None:
            qk = companion_form(A, a)
            trace = even_lattice_exists((21 - rho, 2), qk)
            labelled = {_REMARK_LABELS.get(k, "6.3" if k.startswith("p=") else k): v
                        for k, v in trace.checks.items()}
            entry["condition6"] = {"checks": labelled, "sign_qK": signature_mod8(qk),
                                   "target": (19 - rho) % 8, "q_K": qk.to_json()}
            if not trace.holds:
                failed = "6"
        entry["failed"] = failed
        entry.update(cert)
        report.log.append(entry)
        if failed is None:
            report.verdict, report.condition = YES, "6.1-6.4"
            report.certificates.update(a=list(a), A0=A0.matrix, condition6=entry["condition6"])
            return report
        if first_failure is None:
            first_failure = (failed, cert)
    report.condition = first_failure[0]
    report.certificates.update(first_failure[1])
    report.reason = "every norm-3 vector violates some condition"
    return report


# ---------------------------------------------------------------------------
# local rootless genus criterion


@dataclass(frozen=True)
class LocalGenusData:
    t_plus: int
    t_minus: int
    form: FiniteQuadraticForm

    @classmethod
    def from_parts(cls, t_plus: int, t_minus: int, parts: dict[int, FiniteQuadraticForm]) -> LocalGenusData:
        total = FiniteQuadraticForm((), (), ())
        for p, qp in parts.items():
            if any(d != p ** _val(d, p) for d in qp.factors):
                raise ClassifyError(f"inconsistent q_p data: component for p={p} is not a p-group")
            total = form_sum(total, qp)
        return cls(t_plus, t_minus, total)

    @classmethod
    def from_lattice(cls, lat: IntLattice) -> LocalGenusData:
        tp, tm = lat.signature
        return cls(tp, tm, discriminant_form(lat))

    def __post_init__(self):
        if self.t_plus < 0 or self.t_minus < 0 or self.t_plus + self.t_minus < 1:
            raise ClassifyError("need t+, t- >= 0 with t+ + t- >= 1")
        if not self.form.is_quadratic or not self.form.is_nondegenerate():
            raise ClassifyError("q must be a nondegenerate quadratic form")


def _log_p(n: int, p: int) -> int:
    return _val(n, p) if n > 1 else 0


def _first_nonresidue_prime(m: int, avoid: int) -> int | None:
    """Smallest odd prime p not dividing ``avoid`` with (m/p) = -1."""
    if m > 0 and isqrt(m) ** 2 == m:
        return None
    p = 3
    while True:
        if is_prime(p) and avoid % p and legendre(m, p) == -1:
            return p
        p += 2


def decide_local_rootless(data: LocalGenusData) -> DecisionReport:
    """Is there an even lattice in this genus whose localization at some
    prime has no roots?  Conditions 1-5 are evaluated literally."""
    tp, tm, q = data.t_plus, data.t_minus, data.form
    n = tp + tm
    order = q.order
    l, l2 = q.length(), q.length(2)
    report = DecisionReport(NO)
    inv: dict[str, Any] = {"N": n, "l": l, "l_2": l2, "order": order}
    report.invariants = inv
    conds: dict[str, Any] = {}
    report.certificates["conditions"] = conds

    conds["1"] = n >= l and (n - l2) % 2 == 0
    if not conds["1"]:
        report.condition = "1"
        return report

    q2 = q.p_part(2)
    exc = is_exceptional(q2)
    target2 = (-1) ** (tm + (n - l2) // 2) * order
    k2 = choose_lift_2(q2, target2)
    d2 = Fraction(la.det(k2)) if k2 else Fraction(1)
    theta2 = det_class(Fraction(target2) / d2, 2)
    v2 = 1 if theta2 == 5 else 0
    a2 = q2.order
    if exc or n >= l2 + 2:
        u = det_class(d2 / a2, 2)
        e = (n - l2) * (n - l2 - 2) // 8 + ((n - l2) // 2) * ((u - 1) // 2)
        eps2 = -1 if e % 2 else 1
    else:
        eps2 = 1
    inv.update(exceptional=exc, theta_2=theta2, v_2=v2, epsilon_2=eps2, discr_K2=frac_str(d2))

    odd = {}
    for p in q.primes():
        if p == 2:
            continue
        qp = q.p_part(p)
        kp = padic_lift(qp, p)
        dp = Fraction(la.det(kp))
        theta = Fraction((-1) ** tm * order) / dp
        odd[p] = (qp, kp, dp, theta)
    inv["theta"] = {str(p): det_class(th, p) for p, (_, _, _, th) in odd.items()}

    conds["2"] = all(det_class(th, p) == 1
                     for p, (qp, _, _, th) in odd.items() if qp.rank == n)
    if theta2 != 1:
        conds["3"] = (not exc) and n >= 2 + l2 and theta2 == 5
    else:
        conds["3"] = True

    rhs = 1
    if k2:
        rhs *= hasse(k2, 2)
    for p, (qp, kp, _, th) in odd.items():
        rhs *= hasse(kp, p)
        rhs *= det_class(th, p) ** _log_p(qp.order, p)
    sign_exp = tm * (tm - 1) // 2 + v2 * (1 + _log_p(a2, 2))
    rhs *= -1 if sign_exp % 2 else 1
    conds["4"] = eps2 == rhs

    branch = None
    if v2 == 0 and n == l2 and not represents_locally(k2, 2, 2):
        branch = {"branch": "5a", "p": 2}
    if branch is None:
        for p, (qp, kp, _, th) in odd.items():
            candidates = []
            if n == qp.rank:
                candidates.append(("5b", kp))
            if n == qp.rank + 1:
                candidates.append(("5c", _block_diag([[[th]], kp])))
            if n == qp.rank + 2:
                candidates.append(("5d", _block_diag([[[Fraction(1)]], [[th]], kp])))
            for name, gram in candidates:
                if not represents_locally(gram, 2, p):
                    branch = {"branch": name, "p": p}
                    break
            if branch:
                break
    if branch is None and n == 1:
        # <theta_p> at a prime not dividing 2|A| is rootless iff 2 theta_p is a nonresidue
        p = _first_nonresidue_prime(2 * (-1) ** tm * order, 2 * order)
        if p is not None:
            branch = {"branch": "5c", "p": p}
    conds["5"] = branch is not None
    if branch:
        report.certificates["branch"] = branch

    failed = next((c for c in ("1", "2", "3", "4", "5") if not conds[c]), None)
    if failed is None:
        report.verdict, report.condition = YES, f"7.1-5:{branch['branch']}"
    else:
        report.condition = f"7.1-{failed}"
    return report

