import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermiform import golden
from fermiform.fermionic import (
    SpecError,
    TensorSpec,
    brute_force_M,
    cocharge,
    cocharge_eliminated,
    critical_configuration,
    critical_integrality_modulus,
    enumerate_configurations,
    fermionic_M,
    fermionic_M_all,
    fermionic_M_bar_l,
    fermionic_M_l,
    fermionic_N_at_one,
    fermionic_N_l,
    reduce_level_one,
    spinon_stabilization_check,
    target_sizes,
    vacancy,
    vacancy_eliminated,
    vacancy_tail_form,
)
from fermiform.qseries import LaurentPoly
from fermiform.root_data import AlgebraError, algebra_data
from fermiform.verifier import random_spec

GOLDEN = TensorSpec.from_json(golden.SPEC)


def lp(d):
    return LaurentPoly(d)


def partitions(total, largest=None):
    """Partitions of total as non-increasing lists (plain recursion)."""
    if largest is None:
        largest = total
    if total == 0:
        yield []
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, first):
            yield [first] + rest


def as_multiplicities(parts):
    if not parts:
        return ()
    m = [0] * max(parts)
    for x in parts:
        m[x - 1] += 1
    return tuple(m)


# -- vacancy numbers and cocharge -----------------------------------------


@pytest.mark.parametrize("row", golden.CONFIG_ROWS)
def test_golden_vacancy_rows(row):
    m, p, _ = row
    for a, pa in enumerate(p, 1):
        for i, want in enumerate(pa, 1):
            assert vacancy(GOLDEN, m, a, i) == want


def test_golden_cocharge_of_largest_row():
    m = ((1, 3), (5,))
    assert cocharge(GOLDEN, m) == -15


def test_zero_configuration_vacancy_is_gamma():
    spec = TensorSpec.from_factors("B3", [(1, 2), (3, 1, 2), (2, 3)])
    m = ((), (), ())
    for a in range(1, 4):
        for i in range(1, 6):
            assert vacancy(spec, m, a, i) == spec.gamma(a, i)


def test_empty_cocharge():
    assert cocharge(TensorSpec.make("A2", {}), ((), ())) == 0


@pytest.mark.parametrize("alg", ["A2", "B2", "C2", "G2", "A3", "B3"])
def test_vacancy_at_infinity(alg):
    rng = random.Random(alg)
    d = algebra_data(alg)
    for _ in range(5):
        spec = random_spec(alg, rng, max_height=8)
        for lam in fermionic_M_all(spec):
            for m in enumerate_configurations(spec, lam):
                big = max([len(x) for x in m] + [spec.max_index(a) for a in range(1, d.rank + 1)]) + 1
                for a in range(1, d.rank + 1):
                    # (t_a alpha_a | lambda) = lambda_a
                    assert vacancy(spec, m, a, d.t * big) == lam[a - 1]


@settings(max_examples=40, deadline=None)
@given(
    alg=st.sampled_from(["A1", "A2", "B2", "C2", "G2", "B3"]),
    data=st.data(),
)
def test_discrete_gradient_of_cocharge(alg, data):
    d = algebra_data(alg)
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    spec = random_spec(alg, rng)
    m = tuple(tuple(data.draw(st.lists(st.integers(0, 2), max_size=4))) for _ in range(d.rank))
    a = data.draw(st.integers(1, d.rank))
    i = data.draw(st.integers(1, 5))
    bumped = [list(x) for x in m]
    bumped[a - 1] += [0] * (i - len(bumped[a - 1]))
    bumped[a - 1][i - 1] += 1
    bumped = tuple(tuple(x) for x in bumped)
    # c is quadratic with (alpha_a|alpha_a) t_a i / 2 = i on the diagonal
    assert cocharge(spec, bumped) - cocharge(spec, m) == -vacancy(spec, m, a, i) + i


@pytest.mark.parametrize("alg,l", [("A2", 2), ("B2", 1), ("B2", 2), ("C2", 2), ("G2", 1), ("C3", 1)])
def test_level_forms_agree(alg, l):
    rng = random.Random(f"{alg}{l}")
    d = algebra_data(alg)
    checked = 0
    while checked < 4:
        spec = random_spec(alg, rng, max_s=d.t * l, max_height=10)
        if not spec.in_H(l):
            continue
        checked += 1
        for m in enumerate_configurations(spec, None, level=l):
            assert Fraction(cocharge(spec, m, l)) == cocharge_eliminated(spec, m, l)
            for a in range(1, d.rank + 1):
                for i in range(1, d.ta(a) * l + 1):
                    p = vacancy(spec, m, a, i, l)
                    assert p == vacancy_tail_form(spec, m, a, i, l)
                    if i < d.ta(a) * l:
                        assert p == vacancy_eliminated(spec, m, a, i, l)


def test_level_vacancy_rejects_indices_outside_H():
    with pytest.raises(SpecError):
        vacancy(GOLDEN, ((), ()), 2, 3, level=1)


# -- enumeration ------------------------------------------------------------


def test_golden_configuration_count():
    assert sum(1 for _ in enumerate_configurations(GOLDEN, (0, 0))) == 105
    res = fermionic_M(GOLDEN, (0, 0), ledger=True, count_total=True)
    assert res.configs_total == 105
    assert res.configuration_count == 6


def test_top_weight_has_only_the_empty_configuration():
    spec = TensorSpec.from_factors("C3", [(1, 2), (3, 1)])
    assert list(enumerate_configurations(spec, spec.weight())) == [((), (), ())]


@pytest.mark.parametrize("alg", ["A2", "B2", "C2", "G2"])
def test_enumeration_matches_partition_oracle(alg):
    rng = random.Random(alg)
    for _ in range(6):
        spec = random_spec(alg, rng, max_height=10)
        for lam in [spec.weight()] + list(fermionic_M_all(spec)):
            N = target_sizes(spec, lam)
            want = {(as_multiplicities(p1), as_multiplicities(p2)) for p1 in partitions(N[0]) for p2 in partitions(N[1])}
            got = list(enumerate_configurations(spec, lam))
            assert len(got) == len(set(got))
            assert set(got) == want


def test_infeasible_weight_gives_nothing():
    spec = TensorSpec.from_factors("A2", [(1, 1)])
    assert list(enumerate_configurations(spec, (0, 0))) == []
    assert fermionic_M(spec, (0, 0)).value.is_zero()


# -- M --------------------------------------------------------------------


def test_golden_M():
    assert fermionic_M(GOLDEN, (0, 0)).value.invert() == lp(golden.X_CLASSICAL)


def test_golden_ledger_rows():
    res = fermionic_M(GOLDEN, (0, 0), ledger=True)
    got = sorted((r.m, r.p, r.contribution.invert().coeffs) for r in res.ledger)
    assert got == sorted(golden.CONFIG_ROWS)


def test_e6_fundamental_three():
    spec = TensorSpec.make("E6", {(3, 1): 1})
    got = {lam: p.invert() for lam, p in fermionic_M_all(spec).items()}
    assert got == {
        (0, 0, 0, 0, 0, 0): lp({3: 1}),
        (1, 0, 0, 0, 1, 0): lp({1: 1}),
        (0, 0, 1, 0, 0, 0): lp({0: 1}),
        (0, 0, 0, 0, 0, 1): lp({1: 1, 2: 1}),
    }


@pytest.mark.parametrize("alg", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_single_factor_top_weight(alg):
    d = algebra_data(alg)
    for a in range(1, d.rank + 1):
        for s in (1, 2):
            spec = TensorSpec.make(alg, {(a, s): 1})
            assert fermionic_M(spec, spec.weight()).value == LaurentPoly.one()


def test_empty_spec():
    spec = TensorSpec.make("B2", {})
    assert fermionic_M(spec, (0, 0)).value == LaurentPoly.one()
    assert fermionic_M(spec, (1, 0)).value.is_zero()


@pytest.mark.parametrize("alg", ["A1", "A2", "B2", "C2", "G2", "A3"])
def test_search_matches_brute_force(alg):
    rng = random.Random(alg)
    for _ in range(6):
        spec = random_spec(alg, rng, max_height=9)
        total = fermionic_M_all(spec)
        for lam, val in total.items():
            assert brute_force_M(spec, lam) == val
            assert fermionic_M(spec, lam).value == val
            assert val.nonnegative() and val.max_degree() <= 0


# -- M_l --------------------------------------------------------------------


def test_golden_M_l():
    assert fermionic_M_l(GOLDEN, 1).value.invert() == lp(golden.X_LEVEL_1)
    assert fermionic_M_l(GOLDEN, 2).value.invert() == lp(golden.X_LEVEL_2)


def test_M_l_rejects_spec_outside_H():
    with pytest.raises(SpecError):
        fermionic_M_l(TensorSpec.make("A2", {(1, 3): 1}), 2)


def _random_level_specs(count, seed=99):
    rng = random.Random(seed)
    fams = ["A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3"]
    out = []
    while len(out) < count:
        fam = rng.choice(fams)
        spec = random_spec(fam, rng, max_factors=4, max_s=3, max_height=10)
        l = spec.min_level() + rng.randint(0, 1)
        out.append((spec, l))
    return out


@pytest.mark.parametrize("spec,l", _random_level_specs(100), ids=lambda x: str(x) if not isinstance(x, int) else f"l={x}")
def test_two_routes_to_M_l(spec, l):
    direct = fermionic_M_l(spec, l).value
    assert fermionic_M_l(spec, l, route="eliminated").value == direct
    assert direct.nonnegative()


def test_level_restriction_is_monotone_on_golden():
    M1 = fermionic_M_l(GOLDEN, 1).value
    M2 = fermionic_M_l(GOLDEN, 2).value
    M = fermionic_M(GOLDEN, (0, 0)).value
    for e in M.coeffs:
        assert M1.coeffs.get(e, 0) <= M2.coeffs.get(e, 0) <= M.coeffs[e]


@pytest.mark.parametrize("alg", ["A1", "A2", "A3", "D4"])
def test_simply_laced_level_one_is_trivial(alg):
    d = algebra_data(alg)
    rng = random.Random(alg)
    found = 0
    for _ in range(200):
        nu = {(a, 1): rng.randint(0, 3) for a in range(1, d.rank + 1)}
        spec = TensorSpec.make(alg, nu)
        if target_sizes(spec, None, level=1) is None:
            continue
        found += 1
        assert fermionic_M_bar_l(spec, 1) == LaurentPoly.one()
        if found == 6:
            break
    assert found


# -- N_l --------------------------------------------------------------------


def test_golden_N_infinity():
    assert fermionic_N_l(GOLDEN, (0, 0)).value == fermionic_M(GOLDEN, (0, 0)).value


@pytest.mark.parametrize("alg,lam", [("A2", (-1, 3)), ("A2", (0, -2)), ("B2", (2, -1)), ("C2", (-1, 1)), ("G2", (3, -1))])
def test_N_vanishes_on_walls_at_q_one(alg, lam):
    rng = random.Random(str(lam))
    for _ in range(4):
        spec = random_spec(alg, rng, max_height=8)
        assert fermionic_N_at_one(spec, lam) == 0


def test_N_at_one_matches_polynomial():
    spec = TensorSpec.from_factors("B2", [(1, 1), (2, 1, 2)])
    for lam in [(0, 0), (1, 0), (0, 2), (-2, 2), (1, -2)]:
        assert fermionic_N_l(spec, lam).value.eval_at_one() == fermionic_N_at_one(spec, lam)


@pytest.mark.parametrize("L", range(1, 7))
def test_a1_has_no_unphysical_terms(L):
    spec = TensorSpec.make("A1", {(1, 1): L})
    for lam in range(L % 2, L + 1, 2):
        assert fermionic_N_l(spec, (lam,)).value == fermionic_M(spec, (lam,)).value
    for l in range(1, L + 1):
        assert fermionic_N_l(spec, (0,), l).value == fermionic_M_l(spec, l).value


def test_N_can_be_negative_for_non_dominant_weight():
    spec = TensorSpec.make("A1", {(1, 1): 2})
    assert fermionic_N_l(spec, (-4,)).value.eval_at_one() == -1


# -- level one reduction ----------------------------------------------------


def bar_form(spec, l):
    """q^{|Lambda|^2/2l} M_l as {rational exponent: coefficient}."""
    lam = spec.weight()
    sh = spec.data.pair_weights(lam, lam) / (2 * l)
    return {Fraction(e) + sh: c for e, c in fermionic_M_l(spec, l).value.coeffs.items()}


def test_reduce_g2_example():
    spec = TensorSpec.make("G2", {(2, 1): 1})
    z, t = reduce_level_one(spec)
    assert t == 3
    assert str(z.algebra) == "A1"
    assert z.nu == {(1, 1): 1, (1, 3): 1}


def test_reduce_b3_example():
    spec = TensorSpec.make("B3", {(3, 1): 2})
    z, t = reduce_level_one(spec)
    assert (str(z.algebra), t) == ("A1", 2)
    assert z.nu == {(1, 1): 2, (1, 2): 2}
    assert bar_form(spec, 1) == bar_form(z, t)


def test_reduce_rejects_simply_laced():
    with pytest.raises(SpecError):
        reduce_level_one(TensorSpec.make("A2", {(1, 1): 3}))


def _level_one_specs(alg, count, seed=5):
    rng = random.Random(f"{alg}{seed}")
    d = algebra_data(alg)
    out = []
    tries = 0
    while len(out) < count and tries < 5000:
        tries += 1
        nu = {}
        for _ in range(rng.randint(1, 3)):
            a = rng.randint(1, d.rank)
            j = rng.randint(1, d.ta(a))
            nu[(a, j)] = nu.get((a, j), 0) + 1
        spec = TensorSpec.make(alg, nu)
        try:
            z, t = reduce_level_one(spec)
        except SpecError:
            continue
        out.append(spec)
    return out


@pytest.mark.parametrize("alg", ["B2", "B3", "C2", "C3", "G2", "F4"])
def test_level_one_reduction_identity(alg):
    specs = _level_one_specs(alg, 10)
    assert specs
    for spec in specs:
        z, t = reduce_level_one(spec)
        assert bar_form(spec, 1) == bar_form(z, t)


# -- critical configurations and stabilization -------------------------------


@pytest.mark.parametrize("alg", ["A1", "A3", "D4", "E6"])
def test_critical_configuration_simply_laced(alg):
    d = algebra_data(alg)
    for r in range(1, d.rank + 1):
        for s in (1, 2, 3):
            m = critical_configuration(alg, r, s, 7)
            want = {(a, s): 7 * d.Cinv(r, a) for a in range(1, d.rank + 1)}
            assert m == want


def test_critical_c2_integrality():
    # integral exactly when L is a multiple of 2n = 4
    assert critical_integrality_modulus("C2", 1, 1) == 4


@pytest.mark.parametrize("alg", ["A2", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"])
def test_critical_configuration_is_stationary(alg):
    d = algebra_data(alg)
    for r in range(1, d.rank + 1):
        for s in (1, 2, 3):
            for L in (Fraction(1), Fraction(5, 3)):
                # the constructor asserts every stationarity equation and the weight identity
                m = critical_configuration(alg, r, s, L)
                assert all(v > 0 for v in m.values())


def test_spinon_stabilization_a1():
    rep = spinon_stabilization_check("A1", 1, 1, (0,), 3, [2, 4, 6, 8, 10])
    assert rep.ok
    assert rep.stable_from <= 10
    assert rep.lhs[10] == rep.rhs


def test_spinon_check_refusals():
    with pytest.raises(AlgebraError):
        spinon_stabilization_check("A1", 1, 1, (0,), 3, [3])
    with pytest.raises(AlgebraError):
        spinon_stabilization_check("B2", 2, 1, (0, 0), 3, [4])


@pytest.mark.parametrize("L", [2, 4, 6])
def test_ground_cocharge_is_integral(L):
    d = algebra_data("A1")
    c0 = -Fraction(L * L) * d.Cinv(1, 1) / 2
    assert c0.denominator == 1
    spec = TensorSpec.make("A1", {(1, 1): L})
    assert fermionic_M(spec, (0,)).value.min_degree() == c0


# -- serialization ----------------------------------------------------------


def test_spec_json_round_trip():
    data = GOLDEN.to_json()
    assert TensorSpec.from_json(data) == GOLDEN
    assert data["algebra"] == "C2"


@pytest.mark.parametrize("bad", ['{"algebra": "C2"}', '{"algebra": "C2", "factors": [{"a": 3, "s": 1}]}', '{"algebra": "Q2", "factors": []}', "[1, 2]"])
def test_malformed_specs(bad):
    with pytest.raises(SpecError):
        TensorSpec.from_json(bad)


def test_result_json():
    res = fermionic_M(GOLDEN, (0, 0), count_total=True)
    out = res.to_json((0, 0))
    assert out["configs"] == 6 and out["configs_total"] == 105
    assert out["poly"]["-6"] == "1"


@pytest.mark.parametrize(
    "spec,lam",
    [
        (GOLDEN, (0, 0)),
        (GOLDEN, (2, 0)),
        (TensorSpec.from_factors("A2", [(1, 1, 3)]), (1, 1)),
        (TensorSpec.from_factors("G2", [(1, 1), (2, 1)]), (0, 1)),
        (TensorSpec.from_factors("B2", [(2, 2), (1, 1)]), (1, 0)),
    ],
    ids=str,
)
def test_N_stabilizes_at_infinite_level(spec, lam):
    from fermiform.fermionic import infinite_level

    top = infinite_level(spec, lam)
    base = fermionic_N_l(spec, lam, top).value
    for k in (1, 2, 3):
        assert fermionic_N_l(spec, lam, top + k).value == base
    assert fermionic_N_l(spec, lam).value == base
