"""Laurent polynomial arithmetic and the two q-binomial symbols."""

from itertools import product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermiform.qseries import (
    LaurentPoly,
    TruncatedSeries,
    poch_q,
    qbinom_brace,
    qbinom_bracket,
    truncate,
)

def box_partitions(p, m):
    """Generating function of partitions inside an m x p box, by brute force."""
    acc = {}
    for parts in product(range(p + 1), repeat=m):
        if all(x >= y for x, y in zip(parts, parts[1:])):
            acc[sum(parts)] = acc.get(sum(parts), 0) + 1
    return LaurentPoly(acc)


def brace_by_products(p, m, D=30):
    """prod_{k=1}^m (1 - q^{p+k}) / (1 - q^k) expanded as a series, up to degree D.

    The denominators are expanded as geometric series, so negative p needs no
    closed form.
    """
    num = LaurentPoly.one()
    for k in range(1, m + 1):
        num = num * (LaurentPoly.one() - LaurentPoly.monomial(p + k))
    den_inv = {0: 1}
    for k in range(1, m + 1):
        # multiply by 1/(1 - q^k) up to degree D
        out = dict(den_inv)
        for e in sorted(den_inv):
            c = den_inv[e]
            step = e + k
            while step <= D + m * (abs(p) + m) + 1:
                out[step] = out.get(step, 0) + c
                step += k
        den_inv = out
    full = num * LaurentPoly(den_inv)
    return {e: c for e, c in full.coeffs.items() if e <= D}


@pytest.mark.parametrize("p,m", [(2, 2), (1, 3), (3, 2), (0, 4), (4, 0)])
def test_bracket_against_partitions(p, m):
    assert qbinom_bracket(p, m) == box_partitions(p, m)


def test_bracket_examples():
    assert qbinom_bracket(2, 2) == LaurentPoly({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})
    assert qbinom_bracket(1, 3) == LaurentPoly({0: 1, 1: 1, 2: 1, 3: 1})
    for p in range(6):
        assert qbinom_bracket(p, 0) == LaurentPoly.one()
    for m in range(1, 6):
        assert qbinom_bracket(-1, m).is_zero()
    with pytest.raises(ValueError):
        qbinom_bracket(2, -1)


def test_brace_examples():
    assert qbinom_brace(-2, 1) == LaurentPoly({-1: -1})
    for m in range(1, 6):
        assert qbinom_brace(-1, m).is_zero()
    assert qbinom_brace(3, 2) == qbinom_bracket(3, 2)
    with pytest.raises(ValueError):
        qbinom_brace(0, -2)


@pytest.mark.parametrize("p", range(-8, 6))
@pytest.mark.parametrize("m", range(0, 4))
def test_brace_against_product_definition(p, m):
    want = brace_by_products(p, m)
    got = qbinom_brace(p, m)
    assert {e: c for e, c in got.coeffs.items() if e <= 30} == want


def test_brace_vanishing_window():
    for m in range(1, 6):
        for p in range(-m, 0):
            assert qbinom_brace(p, m).is_zero()
        assert not qbinom_brace(-m - 1, m).is_zero()


def test_poch():
    assert poch_q(0) == LaurentPoly.one()
    assert poch_q(2) == LaurentPoly({0: 1, 1: -1, 2: -1, 3: 1})
    with pytest.raises(ValueError):
        poch_q(-1)


@pytest.mark.parametrize("p,m", [(p, m) for p in range(7) for m in range(7)])
def test_bracket_identities(p, m):
    g = qbinom_bracket(p, m)
    assert g * poch_q(p) * poch_q(m) == poch_q(p + m)
    assert g.eval_at_one() == comb(p + m, m)
    assert g.nonnegative()
    assert g.max_degree() == p * m
    # symmetry under q -> 1/q
    assert g.invert().shift(p * m) == g
    if m >= 1 and p + m >= 1:
        pascal = qbinom_bracket(p - 1, m) + qbinom_bracket(p, m - 1).shift(p)
        assert g == pascal


@pytest.mark.parametrize("p,m", [(p, m) for p in range(9) for m in range(9)])
def test_classical_limit(p, m):
    assert qbinom_bracket(p, m).eval_at_one() == comb(p + m, m)


polys = st.dictionaries(st.integers(-6, 6), st.integers(-20, 20), max_size=6).map(LaurentPoly)


@settings(max_examples=80, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == LaurentPoly.zero()


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_inversion_is_an_involutive_ring_map(f, g):
    assert f.invert().invert() == f
    assert (f * g).invert() == f.invert() * g.invert()
    assert f.invert().eval_at_one() == f.eval_at_one()


@settings(max_examples=80, deadline=None)
@given(
    st.dictionaries(st.integers(0, 8), st.integers(-9, 9), max_size=6).map(LaurentPoly),
    st.dictionaries(st.integers(0, 8), st.integers(-9, 9), max_size=6).map(LaurentPoly),
    st.integers(0, 10),
)
def test_truncation_commutes_with_products(f, g, cap):
    assert truncate(f, cap) * truncate(g, cap) == truncate(f * g, cap)
    assert truncate(f, cap) + truncate(g, cap) == truncate(f + g, cap)


def test_reciprocal_of_poch():
    cap = 12
    inv = truncate(poch_q(3), cap).reciprocal()
    assert (inv * truncate(poch_q(3), cap)).as_list() == [1] + [0] * cap


def test_json_round_trip():
    f = LaurentPoly({-6: 1, -7: 2, 3: -12345678901234567890})
    data = f.to_json()
    assert data["-6"] == "1"
    assert LaurentPoly.from_json(data) == f


def test_rendering():
    assert str(LaurentPoly({6: 1, 7: 2})) == "q^6 + 2q^7"
    assert LaurentPoly({6: 1, 7: 2}).latex() == "q^{6} + 2q^{7}"
    assert str(LaurentPoly.zero()) == "0"


def test_big_coefficients_are_exact():
    f = qbinom_bracket(40, 40)
    assert f.eval_at_one() == comb(80, 40)


def test_truncated_series_type():
    t = TruncatedSeries.from_poly(LaurentPoly({0: 1, 5: 3}), 3)
    assert t.as_list() == [1, 0, 0, 0]
