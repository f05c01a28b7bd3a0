import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubic_lattices.catalog import A2, L0, U, lookup
from cubic_lattices.classify import (
    NO,
    UNDECIDED,
    YES,
    ClassifyError,
    GenusSearchBudget,
    LocalGenusData,
    companion_form,
    decide_A,
    decide_A0,
    decide_local_rootless,
    decide_T,
    embed_into_omega,
    enumerate_genus,
    even_companion,
    parity_holds,
    verify_condition_B,
)
from cubic_lattices.forms import cyclic_form, discriminant_form, form_isomorphic
from cubic_lattices.lattice import IntLattice, Sublattice, diagonal, orthogonal_complement
from cubic_lattices.padic import signature_mod8
from cubic_lattices.sampling import random_positive_gram
from cubic_lattices.shortvec import has_roots, short_vectors

from conftest import positive_lattices


def test_decide_A0_examples():
    rep = decide_A0(diagonal([4, 4, 6, 8]))
    assert rep.verdict == YES
    rep = decide_A0(IntLattice([[2]]))
    assert rep.verdict == NO and rep.certificates["root"] == [1]
    rep = decide_A0(IntLattice([[6]]))
    assert rep.verdict == YES and rep.condition == "A1"
    assert decide_A0(IntLattice([])).verdict == YES


def test_decide_A0_preconditions():
    with pytest.raises(ClassifyError):
        decide_A0(diagonal([1, 4]))
    with pytest.raises(ClassifyError):
        decide_A0(U)


def test_decide_A0_rejects_a2_by_root():
    rep = decide_A0(A2)
    assert rep.verdict == NO and A2.norm(rep.certificates["root"]) == 2


@settings(max_examples=25)
@given(positive_lattices(max_rank=6, spread=2, even=True))
def test_rootless_lattices_of_small_rank_occur(lat):
    if has_roots(lat):
        return
    assert decide_A0(lat).verdict == YES


def test_embed_into_omega_shape():
    q = discriminant_form(IntLattice([[6]]))
    assert not embed_into_omega((23, 20), q).holds


def test_decide_A_examples():
    rep = decide_A(diagonal([3, 6]))
    assert rep.verdict == YES and rep.certificates["a"] == [1, 0]
    c6 = rep.certificates["condition6"]
    assert c6["sign_qK"] == 1 == c6["target"]
    assert all(c6["checks"].values())
    rep = decide_A(diagonal([3, 2]))
    assert rep.verdict == NO and rep.condition == "3" and rep.certificates["root"] == [0, 1]
    rep = decide_A(diagonal([1, 1]))
    assert rep.verdict == NO and rep.reason == "no norm-3 vector"


def test_condition6_form_values():
    q = companion_form(diagonal([3, 6]), [1, 0])
    assert q.factors == (3, 6)
    assert q.qvals == (Fraction(2, 3), Fraction(11, 6))
    assert signature_mod8(q) == 1


def test_decide_A_preconditions():
    with pytest.raises(ClassifyError):
        decide_A(A2)
    with pytest.raises(ClassifyError):
        decide_A(diagonal([3]))
    with pytest.raises(ClassifyError):
        decide_A(diagonal([3, -1]))


def test_even_companion_examples():
    assert even_companion(diagonal([3]), [1]).gram == ((6,),)
    assert even_companion(diagonal([3, 6]), [1, 0]).gram == ((6, 0), (0, -6))
    assert even_companion(diagonal([3, 4]), [1, 0]).gram == ((6, 0), (0, -4))
    with pytest.raises(ClassifyError):
        even_companion(diagonal([3, 1]), [1, 0])
    flat = even_companion(IntLattice([[3, 1], [1, 3]]), [1, 0])
    assert flat.gram == ((6, 2), (2, -2)) and not flat.degenerate


@settings(max_examples=30)
@given(st.integers(0, 10 ** 9))
def test_parity_on_basis_matches_full_quantifier(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    lat = IntLattice(random_positive_gram(rng, n, 2))
    vecs = [v for v, nm in short_vectors(lat, 3, up_to_sign=True) if nm == 3]
    if not vecs:
        return
    a = list(vecs[0])
    full = True
    for _ in range(200):
        b = [rng.randint(-5, 5) for _ in range(n)]
        full &= (lat.pair(a, b) ** 2 - lat.norm(b)) % 2 == 0
    assert parity_holds(lat, a) == full


def test_enumerate_genus_examples():
    six = enumerate_genus(1, cyclic_form(6, Fraction(1, 6)))
    assert [k.gram for k in six.lattices] == [((6,),)] and six.complete
    assert enumerate_genus(1, cyclic_form(3, Fraction(2, 3))).lattices == []
    res = enumerate_genus(2, discriminant_form(A2), rootless_only=True)
    assert res.lattices == [] and res.complete
    assert [k.gram for k in enumerate_genus(2, discriminant_form(A2)).lattices] == [((2, 1), (1, 2))]


def _theta(lat, bound=8):
    counts = [0] * (bound + 1)
    for _, nm in short_vectors(lat, bound):
        counts[nm] += 1
    return counts


@settings(max_examples=15)
@given(positive_lattices(max_rank=3, spread=1, even=True))
def test_enumerated_genus_contains_input(lat):
    if lat.det > 400:
        return
    res = enumerate_genus(lat.rank, discriminant_form(lat))
    assert res.complete
    assert any(_theta(k) == _theta(lat) for k in res.lattices)
    for k in res.lattices:
        assert k.det == lat.det


def test_enumerate_genus_budget():
    res = enumerate_genus(3, discriminant_form(diagonal([4, 6, 10])), budget=GenusSearchBudget(max_candidates=1))
    assert res.exhausted and not res.complete
    assert enumerate_genus(7, discriminant_form(diagonal([2] * 7))).exhausted


def worked_T():
    return lookup("diag:-6+A2+U+E8+E8")


def test_decide_T_examples():
    rep = decide_T(worked_T(), GenusSearchBudget(max_rank=1))
    assert rep.verdict == YES and rep.condition == "A" and rep.certificates["K"] == [[6]]
    rep = decide_T(lookup("A2(-1)"))
    assert rep.verdict == UNDECIDED
    assert rep.reason == "no τ with q=2/3; condition B requires certificate"
    with pytest.raises(ClassifyError):
        decide_T(U)


def test_decide_T_with_certificates():
    rep = decide_T(worked_T(), certificate={"gram": [[6]]})
    assert rep.verdict == YES
    rep = decide_T(worked_T(), certificate=[[2]])
    assert rep.verdict == UNDECIDED  # a supplied K is checked, not replaced by a search
    assert rep.log[0]["certificate"] == "K has roots"


def test_condition_B_rejects_rooty_embedding():
    t = lookup("A2(-1)")
    n = t.rank + L0.rank
    # the two U summands of L0 sit at L0 coordinates 2..5
    rows = []
    for k in range(2, 6):
        r = [0] * n
        r[t.rank + k] = 1
        rows.append(r)
    ok, info = verify_condition_B(t, rows)
    assert info["gram_is_U"] and info["primitive"]
    assert not ok and info["complement_rootless"] is False
    ok, info = verify_condition_B(t, rows[:2])
    assert not ok and "shape" in info


def test_round_trip_six():
    basis = orthogonal_complement(Sublattice(L0, [[0, 0, 1, 3] + [0] * 18]))
    t = basis.lattice()
    assert t.signature == (19, 2) and abs(t.det) == 18
    assert form_isomorphic(discriminant_form(t), discriminant_form(worked_T())) is not None
    assert decide_A0(IntLattice([[6]])).verdict == YES
    assert decide_T(t, GenusSearchBudget(max_rank=1)).verdict == YES


def test_local_global_gap():
    s = diagonal([4, 4, 6, 8])
    assert decide_A0(s).verdict == YES
    assert decide_local_rootless(LocalGenusData.from_lattice(s)).verdict == NO


def test_local_data_validation():
    with pytest.raises(ClassifyError, match="inconsistent"):
        LocalGenusData.from_parts(1, 0, {2: cyclic_form(3, Fraction(2, 3))})
    data = LocalGenusData.from_parts(1, 0, {2: cyclic_form(2, Fraction(3, 2)), 3: cyclic_form(3, Fraction(2, 3))})
    assert data.form.order == 6
    with pytest.raises(ClassifyError):
        LocalGenusData(0, 0, cyclic_form(3, Fraction(2, 3)))


def test_local_rootless_rank_one_uses_auxiliary_prime():
    rep = decide_local_rootless(LocalGenusData.from_lattice(IntLattice([[4]])))
    assert rep.certificates["conditions"]["5"]


def test_certificates_reverify():
    rep = decide_A0(IntLattice([[2]]))
    assert IntLattice([[2]]).norm(rep.certificates["root"]) == 2
    rep = decide_T(worked_T(), GenusSearchBudget(max_rank=1))
    k = IntLattice(rep.certificates["K"])
    assert not has_roots(k)
    rep = decide_A(diagonal([3, 6]))
    a = rep.certificates["a"]
    assert diagonal([3, 6]).norm(a) == 3
    assert IntLattice(rep.certificates["A0"]).is_even
