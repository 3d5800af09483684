from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermiform.characters import (
    CharacterError,
    CharacterPoly,
    RepElement,
    asymptotic_ratio_check,
    chi_Q,
    chi_provider,
    decompose,
    dimension,
    dominant_weights,
    jacobi_trudi_Q,
    determinant_identities_check,
    qsystem_residual,
    qsystem_rhs_explicit,
    qsystem_rhs_generic,
    tensor_irreducibles,
    weyl_character,
)
from fermiform.crystals import CrystalId, classical_decompose
from fermiform.root_data import AlgebraId, algebra_data


def test_a1_character():
    assert weyl_character("A1", (2,)) == CharacterPoly("A1", {(2,): 1, (0,): 1, (-2,): 1})


@pytest.mark.parametrize("alg,lam,dim", [("C2", (0, 1), 5), ("C2", (1, 0), 4), ("A2", (1, 1), 8), ("G2", (1, 0), 14), ("B3", (0, 0, 1), 8)])
def test_character_dimension(alg, lam, dim):
    assert weyl_character(alg, lam).eval_at_one() == dim
    assert dimension(alg, lam) == dim


@pytest.mark.parametrize("alg", ["A1", "A3", "B2", "C3", "G2", "F4"])
def test_trivial_character(alg):
    n = AlgebraId.parse(alg).rank
    assert weyl_character(alg, (0,) * n) == CharacterPoly.monomial(alg, (0,) * n)


def _small_weights(alg, top=2):
    n = AlgebraId.parse(alg).rank
    return [lam for lam in product(range(top + 1), repeat=n) if sum(lam) <= top]


CASES = [(alg, lam) for alg in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"] for lam in _small_weights(alg)]


@pytest.mark.parametrize("alg,lam", CASES, ids=lambda x: str(x))
def test_division_matches_freudenthal(alg, lam):
    ch = weyl_character(alg, lam)
    assert ch == weyl_character(alg, lam, method="freudenthal")
    assert ch.is_weyl_invariant()
    assert ch.eval_at_one() == algebra_data(alg).dimension(lam)


@pytest.mark.parametrize("alg,lam", CASES, ids=lambda x: str(x))
def test_decompose_inverts_character(alg, lam):
    assert decompose(weyl_character(alg, lam)) == RepElement.irreducible(alg, lam)


def test_dominant_weights_of_c2_adjoint():
    assert set(dominant_weights(AlgebraId.parse("C2"), (2, 0))) == {(2, 0), (0, 1), (0, 0)}


def test_c2_vector_square():
    v = RepElement.irreducible("C2", (1, 0))
    want = RepElement("C2", {(2, 0): 1, (0, 1): 1, (0, 0): 1})
    assert v * v == want
    assert decompose(weyl_character("C2", (1, 0)) * weyl_character("C2", (1, 0))) == want
    assert classical_decompose([CrystalId.make("C2", 1, 1)] * 2) == {(0, 0): 1, (0, 1): 1, (2, 0): 1}


@pytest.mark.parametrize("alg,l1,l2", [("A2", (1, 0), (0, 1)), ("B2", (1, 0), (0, 1)), ("G2", (0, 1), (0, 1)), ("C3", (0, 1, 0), (1, 0, 0))])
def test_tensor_products_preserve_dimension(alg, l1, l2):
    d = algebra_data(alg)
    prod_ = tensor_irreducibles(alg, l1, l2)
    assert sum(c * d.dimension(nu) for nu, c in prod_.items()) == d.dimension(l1) * d.dimension(l2)


def test_decompose_rejects_non_characters():
    with pytest.raises(CharacterError):
        decompose(CharacterPoly("A1", {(0,): -1}))
    assert decompose(CharacterPoly("A1", {(0,): -1}), allow_virtual=True) == RepElement("A1", {(0,): -1})


def test_non_dominant_weight_rejected():
    with pytest.raises(CharacterError):
        weyl_character("A2", (-1, 0))


# -- Q-system -------------------------------------------------------------------


def test_c2_chi():
    assert chi_Q("C2", 1, 2) == RepElement("C2", {(2, 0): 1, (0, 0): 1})
    assert chi_Q("C2", 2, 3) == RepElement.irreducible("C2", (0, 3))


@pytest.mark.parametrize("alg", ["A1", "A2", "A4"])
def test_type_a_chi_is_irreducible(alg):
    n = AlgebraId.parse(alg).rank
    for a in range(1, n + 1):
        for j in range(4):
            lam = tuple(j if b == a else 0 for b in range(1, n + 1))
            assert chi_Q(alg, a, j) == RepElement.irreducible(alg, lam)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_c_long_node_chi_is_irreducible(n):
    for j in range(4):
        lam = (0,) * (n - 1) + (j,)
        assert chi_Q(f"C{n}", n, j) == RepElement.irreducible(f"C{n}", lam)


def test_chi_zero_is_one():
    assert chi_Q("B3", 2, 0) == RepElement.one("B3")


QCASES = [(alg, a, j) for alg in ["A2", "A3", "B2", "B3", "C2", "C3", "D4"] for a in range(1, AlgebraId.parse(alg).rank + 1) for j in (1, 2, 3)]


@pytest.mark.parametrize("alg,a,j", QCASES)
def test_qsystem_holds(alg, a, j):
    assert qsystem_residual(alg, a, j).is_zero()


@pytest.mark.parametrize("alg,a,j", QCASES)
def test_generic_and_explicit_forms_agree(alg, a, j):
    p = chi_provider(alg)
    assert qsystem_rhs_generic(alg, a, j, p) == qsystem_rhs_explicit(alg, a, j, p)


def test_perturbed_provider_breaks_the_qsystem():
    base = chi_provider("B2")

    def bad(a, j):
        q = base(a, j)
        return q + RepElement.one("B2") if (a, j) == (1, 1) else q

    assert not qsystem_residual("B2", 1, 1, bad).is_zero()


@pytest.mark.parametrize("alg", ["E6", "F4", "G2"])
def test_exceptional_chi_refused(alg):
    with pytest.raises(CharacterError):
        chi_Q(alg, 1, 1)


def test_chi_argument_checks():
    with pytest.raises(CharacterError):
        chi_Q("A2", 3, 1)
    with pytest.raises(CharacterError):
        chi_Q("A2", 1, -1)
    with pytest.raises(CharacterError):
        qsystem_residual("A2", 1, 0)


def test_jacobi_trudi_single_row():
    for j in range(5):
        assert jacobi_trudi_Q("B3", [j]) == chi_Q("B3", 1, j)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("j", [0, 1, 2])
def test_b_determinant_identities(n, j):
    for a in range(1, n + 1):
        assert determinant_identities_check(f"B{n}", a, j) == (True, True)


def test_determinant_identities_only_for_b():
    with pytest.raises(CharacterError):
        determinant_identities_check("C2", 1, 1)


# -- asymptotics ----------------------------------------------------------------


def test_a1_ratio_converges():
    rep = asymptotic_ratio_check("A1", 1, 12)
    assert rep.decreasing
    assert rep.errors[-1] < 1e-3
    assert not rep.degenerate and rep.warning == ""


@pytest.mark.parametrize("alg", ["B2", "C2", "A3"])
def test_ratio_converges(alg):
    for a in range(1, AlgebraId.parse(alg).rank + 1):
        rep = asymptotic_ratio_check(alg, a, 6)
        assert rep.decreasing
        assert rep.errors[-1] < rep.errors[0]


def test_constant_provider_is_degenerate():
    rep = asymptotic_ratio_check("A1", 1, 5, provider=lambda a, j: RepElement.one("A1"))
    assert rep.degenerate


def test_bad_sample_point_is_flagged():
    rep = asymptotic_ratio_check("A1", 1, 3, logs=[-1.0])
    assert rep.warning


# -- properties ------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(
    alg=st.sampled_from(["A2", "B2", "C2", "G2"]),
    l1=st.tuples(st.integers(0, 2), st.integers(0, 2)),
    l2=st.tuples(st.integers(0, 2), st.integers(0, 2)),
)
def test_product_of_characters_decomposes_like_tensor(alg, l1, l2):
    f = weyl_character(alg, l1) * weyl_character(alg, l2)
    assert decompose(f) == RepElement(alg, tensor_irreducibles(alg, l1, l2))
    assert f.eval_at_one() == (RepElement.irreducible(alg, l1) * RepElement.irreducible(alg, l2)).dimension()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "D4"]), st.data())
def test_chi_evaluates_like_its_character(alg, data):
    n = AlgebraId.parse(alg).rank
    a = data.draw(st.integers(1, n))
    j = data.draw(st.integers(0, 2))
    q = chi_Q(alg, a, j)
    assert q.to_character().eval_at_one() == q.dimension()
    assert q.to_character().is_weyl_invariant()
