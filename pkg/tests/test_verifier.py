"""Identity checks, their report objects, and the closed-form oracles."""

import random

import pytest

from fermiform.characters import RepElement, chi_Q, chi_provider
from fermiform.closed_forms import classical_decomposition, conjectured_decomposition, exceptional_table
from fermiform.fermionic import TensorSpec, fermionic_N_at_one
from fermiform.fixtures import EXCEPTIONAL_TABLES
from fermiform.qseries import LaurentPoly
from fermiform.root_data import AlgebraError, algebra_data
from fermiform.verifier import (
    EVIDENCE,
    FAIL,
    OUT_OF_SCOPE,
    PROVED,
    CheckReport,
    VerifierError,
    check_decomposition,
    check_completeness,
    check_conjectured_formula,
    check_M_equals_Ninf,
    check_Ml_equals_Nl,
    check_recursion,
    check_weyl_antisymmetry,
    check_X_equals_M,
    engine_decomposition,
    golden_worked_example,
    provider_hypotheses,
    random_spec,
    recursion_specs,
    run_suite,
    summary_table,
)


def W(alg, *factors):
    return TensorSpec.from_factors(alg, list(factors))


# -- recursion --------------------------------------------------------------------


@pytest.mark.parametrize(
    "spec,a0,j0,lam",
    [
        (W("A2", (1, 1)), 1, 1, (0, 1)),
        (W("A2", (1, 1)), 2, 1, (0, 0)),
        (W("C2", (1, 1)), 2, 1, (0, 0)),
        (W("C2", (2, 1)), 1, 1, (0, 1)),
        (W("B2", (2, 1)), 1, 1, (0, 0)),
        (W("G2", (1, 1)), 1, 1, (1, 0)),
        (W("G2", (2, 1)), 2, 2, (0, 0)),
    ],
    ids=str,
)
def test_recursion_for_M(spec, a0, j0, lam):
    rep = check_recursion(spec, a0, j0, lam)
    assert rep.status == PROVED, rep.witness


def test_recursion_at_level():
    spec = W("C2", (1, 1))
    W1, W2, W3, _ = recursion_specs(spec, 1, 1)
    l = max(w.min_level() for w in (W1, W2, W3))
    assert check_recursion(spec, 1, 1, mode="M_l", l=l).status == PROVED
    assert check_recursion(spec, 1, 1, (0, 0), mode="N_l", l=l + 1).status == PROVED


def test_recursion_specs_for_c2_short_node():
    W1, W2, W3, theta = recursion_specs(TensorSpec.make("C2", {}), 1, 1)
    assert W1.nu_items == (((1, 1), 2),)
    assert dict(W2.nu_items) == {(1, 2): 1}
    # the long neighbour contributes a single W^(2)_1
    assert dict(W3.nu_items) == {(2, 1): 1}
    assert theta == 1


def test_recursion_refusals():
    spec = W("A2", (1, 1))
    with pytest.raises(VerifierError):
        check_recursion(spec, 3, 1)
    with pytest.raises(VerifierError):
        check_recursion(spec, 1, 0)
    with pytest.raises(VerifierError):
        check_recursion(spec, 1, 1, mode="M_l")
    with pytest.raises(VerifierError):
        check_recursion(spec, 1, 1, mode="M_l", l=1)
    with pytest.raises(VerifierError):
        check_recursion(spec, 1, 1, mode="bogus")


# -- X = q^c M --------------------------------------------------------------------


@pytest.mark.parametrize(
    "factors,lam",
    [
        ("C2:1,2 C2:2,1x3 C2:1,1x2", (0, 0)),
        ("A2:1,1x4", (1, 0)),
        ("A2:1,1x4", (2, 1)),
        ("C2:1,1 C2:2,1", (1, 0)),
        ("C2:1,1 C2:2,1", (1, 1)),
        ("C3:1,1 C3:3,1 C3:2,1", (0, 0, 0)),
    ],
)
def test_X_equals_M(factors, lam):
    rep = check_X_equals_M(factors, lam)
    assert rep.status == EVIDENCE, rep.witness
    assert rep.note.startswith("c=")


@pytest.mark.parametrize("level", [1, 2])
def test_X_equals_M_at_level(level):
    assert check_X_equals_M("C2:1,2 C2:2,1x3 C2:1,1x2", level=level).status == EVIDENCE


# -- M = N ------------------------------------------------------------------------


@pytest.mark.parametrize("alg", ["A2", "B2", "C2", "G2", "B3"])
def test_M_equals_N_inf_for_fundamentals(alg):
    from fermiform.characters import dominant_weights

    n = algebra_data(alg).rank
    for a in range(1, n + 1):
        spec = TensorSpec.make(alg, {(a, 1): 1})
        for lam in dominant_weights(spec.algebra, spec.weight()):
            assert check_M_equals_Ninf(spec, lam).status == EVIDENCE


def test_non_dominant_weight_is_out_of_scope():
    rep = check_M_equals_Ninf(W("A2", (1, 1), (1, 1)), (-1, 2))
    assert rep.status == OUT_OF_SCOPE
    assert rep.passed
    assert "N_inf" in rep.witness


def test_M_l_equals_N_l():
    assert check_Ml_equals_Nl(W("C2", (1, 1), (2, 1)), 1).status == EVIDENCE
    assert check_Ml_equals_Nl(W("A2", (1, 2), (2, 1)), 2).status == EVIDENCE


# -- Weyl antisymmetry --------------------------------------------------------------


@pytest.mark.parametrize("word", [[1], [2], [1, 2], [2, 1, 2]])
def test_antisymmetry_at_one(word):
    spec = W("B2", (1, 1), (2, 2))
    for lam in [(0, 0), (1, 0), (0, 2)]:
        assert check_weyl_antisymmetry(spec, lam, word).status == PROVED


def test_antisymmetry_generic():
    assert check_weyl_antisymmetry(W("A2", (1, 1), (2, 1)), (1, 1), [1]).status == PROVED
    assert check_weyl_antisymmetry(W("A2", (1, 1), (2, 1)), (0, 0), [2, 1], "generic").status == EVIDENCE
    with pytest.raises(VerifierError):
        check_weyl_antisymmetry(W("A2", (1, 1)), (0, 0), [1], "sometimes")


# -- completeness ---------------------------------------------------------------------


def test_golden_completeness():
    spec = TensorSpec.make("C2", {(1, 2): 1, (2, 1): 3, (1, 1): 2})
    assert fermionic_N_at_one(spec, (0, 0)) == 17
    assert check_completeness(spec).status == PROVED


def test_a2_kostka_number():
    # V(L1)^{x3} contains V(L1 + L2) twice
    spec = W("A2", (1, 1), (1, 1), (1, 1))
    assert fermionic_N_at_one(spec, (1, 1)) == 2
    assert check_completeness(spec).status == PROVED


def test_bad_provider_is_rejected():
    base = chi_provider("B2")
    shifted = lambda a, j: base(a, j) + RepElement.one("B2") if (a, j) == (1, 1) else base(a, j)  # noqa: E731
    assert provider_hypotheses("B2", shifted, 2) is not None
    with pytest.raises(VerifierError, match="provider rejected"):
        check_completeness(W("B2", (1, 1)), shifted)


def test_user_provider_gives_evidence():
    rep = check_completeness(W("C2", (1, 1), (2, 1)), chi_provider("C2"))
    assert rep.status == EVIDENCE
    assert not rep.theorem


def test_exceptional_completeness_needs_provider():
    with pytest.raises(VerifierError):
        check_completeness(W("E6", (1, 1)))


# -- closed forms and reference tables ---------------------------------------------------


CLASSICAL = [(f"{f}{n}", r, s) for f, ns in (("A", (1, 2, 3)), ("B", (2, 3)), ("C", (2, 3)), ("D", (4,))) for n in ns for r in range(1, n + 1) for s in (1, 2, 3)]


@pytest.mark.parametrize("alg,r,s", CLASSICAL)
def test_closed_form_matches_engine(alg, r, s):
    assert check_decomposition(alg, r, s).status == PROVED


@pytest.mark.parametrize("alg,r,s", CLASSICAL)
def test_closed_form_at_one_matches_q_system_character(alg, r, s):
    # the q = 1 specialization is the domino-sum solution of the Q-system
    dec = classical_decomposition(alg, r, s)
    at_one = {lam: p.eval_at_one() for lam, p in dec.items() if p.eval_at_one()}
    assert RepElement(alg, at_one) == chi_Q(alg, r, s)


def test_type_a_is_irreducible():
    assert classical_decomposition("A3", 2, 2) == {(0, 2, 0): LaurentPoly.one()}


def test_c3_w22():
    dec = classical_decomposition("C3", 2, 2)
    assert dec[(0, 2, 0)] == LaurentPoly.one()
    assert dec[(0, 0, 0)] == LaurentPoly.monomial(2)
    assert check_decomposition("C3", 2, 2).status == PROVED


# E8 W^(5)_1 takes ~15 s and runs in the acceptance suite
FAST_TABLES = sorted(k for k in EXCEPTIONAL_TABLES if k != ("E8", 5, 1))


@pytest.mark.parametrize("key", FAST_TABLES, ids=lambda k: f"{k[0]}-W{k[1]}-{k[2]}")
def test_exceptional_reference_tables(key):
    rep = check_decomposition(*key)
    assert rep.status == PROVED, rep.witness


def test_e6_w3_table():
    dec = exceptional_table("E6", 3, 1)
    assert dec[(0, 0, 0, 0, 0, 1)] == LaurentPoly({1: 1, 2: 1})
    assert dec[(0, 0, 0, 0, 0, 0)] == LaurentPoly.monomial(3)
    assert engine_decomposition("E6", 3, 1) == dec


def test_missing_table_raises():
    with pytest.raises(AlgebraError):
        exceptional_table("G2", 1, 5)


@pytest.mark.parametrize("s", range(1, 7))
def test_g2_conjectured_formula(s):
    assert check_conjectured_formula("G2", 1, s).status == EVIDENCE
    assert check_conjectured_formula("G2", 2, s).status == EVIDENCE


@pytest.mark.parametrize("alg,r,s", [("F4", 1, 2), ("F4", 4, 2), ("E6", 1, 2), ("E6", 2, 2), ("E6", 6, 2), ("E7", 7, 1)])
def test_other_conjectured_formulas(alg, r, s):
    assert check_conjectured_formula(alg, r, s).status == EVIDENCE


def test_conjectured_formula_agrees_with_tables_at_s_one():
    for key in [("E6", 3, 1), ("F4", 2, 1), ("G2", 2, 1), ("E7", 2, 1)]:
        want = {k: v for k, v in conjectured_decomposition(*key).items() if not v.is_zero()}
        assert want == exceptional_table(*key)


def test_conjectured_formula_unknown():
    with pytest.raises(AlgebraError):
        conjectured_decomposition("E8", 4, 1)


# -- worked example and reports --------------------------------------------------------


def test_golden_worked_example():
    reports = golden_worked_example()
    assert len(reports) == 15
    assert all(r.status == PROVED for r in reports), [r.to_json() for r in reports if not r.passed]


def test_fail_report_needs_witness():
    with pytest.raises(ValueError):
        CheckReport("x", "y", FAIL)
    rep = CheckReport("x", "y", FAIL, witness={"lhs": "1", "rhs": "2"})
    assert not rep.passed
    assert rep.to_json()["witness"] == {"lhs": "1", "rhs": "2"}


def test_summary_table():
    reps = [CheckReport("a", "i", PROVED), CheckReport("b", "j", FAIL, witness={"d": 1})]
    text = summary_table(reps)
    assert text.splitlines()[-1] == "1/2 passed"


def test_unknown_suite():
    with pytest.raises(VerifierError):
        run_suite("everything")


def test_random_spec_respects_bounds():
    rng = random.Random(3)
    d = algebra_data("C3")
    for _ in range(30):
        spec = random_spec("C3", rng, max_factors=2, max_s=2, max_height=10)
        assert sum(v for _, v in spec.nu_items) <= 2
        assert all(j <= 2 for (_, j), _ in spec.nu_items)
        assert sum(d.to_root_coords(spec.weight())) <= 10
