"""Closed-form decompositions of single Kirillov-Reshetikhin type products W^(r)_s.

Classical families use the domino rules: every lambda in the support comes with a
single contributing configuration, and the coefficient of V(lambda) in
M(W^(r)_s, lambda, q^{-1}) is q^{(Lambda_n | s Lambda_r - lambda)}.

For the exceptional families a few conjectured generating formulas are encoded
so that they can be compared against the engine for small s.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterator

from .fermionic import (
    Config,
    TensorSpec,
    _contribution,
    _trim,
    vacancy,
)
from .fixtures import EXCEPTIONAL_TABLES
from .qseries import LaurentPoly, qbinom_bracket
from .root_data import AlgebraError, AlgebraId, algebra_data

Decomposition = dict[tuple[int, ...], LaurentPoly]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def classical_support(aid: AlgebraId | str, r: int, s: int) -> list[tuple[int, ...]]:
    """Dominant weights occurring in W^(r)_s for A/B/C/D."""
    aid = AlgebraId.parse(aid)
    d = algebra_data(aid)
    n = aid.rank
    if not 1 <= r <= n or s < 1:
        raise AlgebraError(f"need 1 <= r <= {n} and s >= 1")
    fam = aid.family
    out = []

    def weight(ks: dict[int, int]) -> tuple[int, ...]:
        lam = [0] * n
        for a, k in ks.items():
            if a >= 1:
                lam[a - 1] += k
        return tuple(lam)

    if fam == "A" or (fam == "C" and r == n) or (fam == "D" and r >= n - 1):
        return [weight({r: s})]
    if fam == "C":
        for ks in product(range(s + 1), repeat=r):
            if sum(ks) > s:
                continue
            if all((k - (s if a == r else 0)) % 2 == 0 for a, k in enumerate(ks, 1)):
                out.append(weight(dict(enumerate(ks, 1))))
        return sorted(out)
    # B and D: nodes r0, r0+2, ..., r with r0 in {0, 1}; t_r (k_r0 + ... + k_{r-2}) + k_r = s
    nodes = list(range(r % 2, r + 1, 2))
    tr = d.ta(r)
    for kr in range(s % tr, s + 1, tr):
        for ks in _compositions((s - kr) // tr, len(nodes) - 1):
            out.append(weight(dict(zip(nodes, ks + (kr,)))))
    return sorted(set(out))


def domino_exponent(aid: AlgebraId | str, r: int, s: int, lam: tuple[int, ...]) -> int:
    """(Lambda_n | s Lambda_r - lambda), the number of removed dominoes."""
    d = algebra_data(aid)
    n = d.rank
    diff = [-x for x in lam]
    diff[r - 1] += s
    ln = [0] * n
    ln[n - 1] = 1
    val = d.pair_weights(ln, diff)
    assert val.denominator == 1
    return int(val)


def classical_decomposition(aid: AlgebraId | str, r: int, s: int) -> Decomposition:
    """Sum_lambda q^{domino count} V(lambda), in the q -> 1/q convention."""
    aid = AlgebraId.parse(aid)
    if aid.family not in "ABCD":
        raise AlgebraError("closed forms exist only for A, B, C, D")
    if aid.family == "A":
        return {tuple(s if a == r else 0 for a in range(1, aid.rank + 1)): LaurentPoly.one()}
    return {lam: LaurentPoly.monomial(domino_exponent(aid, r, s, lam)) for lam in classical_support(aid, r, s)}


def _delta_rows(n: int) -> list[dict[int, int]]:
    return [dict() for _ in range(n)]


def _add(rows, a: int, j, v: int = 1) -> None:
    if j >= 1:
        assert Fraction(j).denominator == 1
        rows[a - 1][int(j)] = rows[a - 1].get(int(j), 0) + v


def classical_configuration(aid: AlgebraId | str, r: int, s: int, lam: tuple[int, ...]) -> Config:
    """The unique configuration with all vacancy numbers >= 0 for lambda in the support."""
    aid = AlgebraId.parse(aid)
    d = algebra_data(aid)
    n = aid.rank
    fam = aid.family
    rows = _delta_rows(n)
    k = {a: lam[a - 1] for a in range(1, n + 1)}
    if fam == "A" or (fam == "C" and r == n) or (fam == "D" and r >= n - 1):
        pass
    elif fam == "C":
        ls = {b: Fraction(s - sum(k[c] for c in range(b, r + 1)), 2) for b in range(1, r + 1)}
        for a in range(1, n):
            for b in range(1, min(a, r) + 1):
                _add(rows, a, 2 * ls[b])
        for b in range(1, r + 1):
            _add(rows, n, ls[b])
    else:
        r0 = r % 2
        u = r // 2
        tr = d.ta(r)
        top = n - 1 if fam == "B" else n - 2

        def l_of(b: int) -> Fraction:
            tail = sum(k[c] for c in range(2 * b + r0, r - 1) if (c - r) % 2 == 0)
            if fam == "B":
                return Fraction(s - k[r], tr) - tail
            return Fraction(s - k[r]) - tail

        ls = {b: l_of(b) for b in range(1, u + 1)}
        for a in range(1, top + 1):
            # colors alternate between "single + single" and "double" rows
            if (a - r0) % 2 == 1:
                half = (a + 1 - r0) // 2
                for b in range(1, min(half - 1, u) + 1):
                    _add(rows, a, ls[b])
                for b in range(1, min(half, u) + 1):
                    _add(rows, a, ls[b])
            elif a >= 2:
                half = (a - r0) // 2
                for b in range(1, min(half, u) + 1):
                    _add(rows, a, ls[b], 2)
        if fam == "B":
            for b in range(1, u + 1):
                _add(rows, n, 2 * ls[b])
        else:
            for b in range(1, u + 1):
                _add(rows, n - 1, ls[b])
                _add(rows, n, ls[b])
    out = []
    for row in rows:
        width = max(row, default=0)
        out.append(_trim([row.get(j, 0) for j in range(1, width + 1)]))
    return tuple(out)


def configuration_term(aid: AlgebraId | str, r: int, s: int, lam: tuple[int, ...]) -> tuple[bool, LaurentPoly]:
    """(all vacancies >= 0, q^c prod [p+m, m]) for the closed-form configuration."""
    spec = TensorSpec.make(aid, {(r, s): 1})
    m = classical_configuration(aid, r, s, lam)
    p = {}
    ok = True
    for a, mb in enumerate(m):
        for i in range(1, len(mb) + 1):
            p[(a, i)] = vacancy(spec, m, a + 1, i)
            ok = ok and p[(a, i)] >= 0
    if not ok:
        return False, LaurentPoly.zero()
    return True, _contribution(spec, m, p)[1]


# ---------------------------------------------------------------------------
# exceptional families


def exceptional_table(aid: AlgebraId | str, r: int, s: int) -> Decomposition:
    key = (str(AlgebraId.parse(aid)), r, s)
    if key not in EXCEPTIONAL_TABLES:
        raise AlgebraError(f"no reference table for W^({r})_{s} in {key[0]}")
    return {lam: LaurentPoly(c) for lam, c in EXCEPTIONAL_TABLES[key].items()}


def _vec(n: int, pairs) -> tuple[int, ...]:
    lam = [0] * n
    for a, v in pairs:
        lam[a - 1] += v
    return tuple(lam)


def _acc(out: dict, lam, poly: LaurentPoly) -> None:
    out[lam] = out.get(lam, LaurentPoly.zero()) + poly


def _chain_sum(n: int, s: int, node: int) -> Decomposition:
    return {_vec(n, [(node, k)]): LaurentPoly.monomial(s - k) for k in range(s + 1)}


def _two_node(n: int, s: int, r: int, other: int) -> Decomposition:
    # sum_{j+k<=s} q^{2s-2k-j} V(j L_other + k L_r)
    out: Decomposition = {}
    for j in range(s + 1):
        for k in range(s + 1 - j):
            _acc(out, _vec(n, [(other, j), (r, k)]), LaurentPoly.monomial(2 * s - 2 * k - j))
    return out


def conjectured_decomposition(aid: AlgebraId | str, r: int, s: int) -> Decomposition:
    """Conjectured generating formulas for exceptional W^(r)_s (q -> 1/q convention)."""
    aid = AlgebraId.parse(aid)
    name = str(aid)
    out: Decomposition = {}
    one = LaurentPoly.one()

    if name == "G2":
        if r == 1:
            return _chain_sum(2, s, 1)
        if r == 2:
            for k in range(s // 3 + 1):
                for x in range(2 * k, s - k + 1):
                    mult = min((x - 2 * k) // 3, (s + k - 2 * x) // 3 + (x - 2 * k) // 3) + 1
                    poly = qbinom_bracket(k, 1).shift(x - k) * mult
                    _acc(out, _vec(2, [(1, k), (2, s - x - k)]), poly)
            return out
    if name == "F4":
        if r == 1:
            return _chain_sum(4, s, 1)
        if r == 2:
            return _min_family(4, s, [(1,), (2,), (3, 3), (4, 4)])
        if r == 4:
            for k in range(s // 2 + 1):
                for j in range(k + 1):
                    _acc(out, _vec(4, [(1, j), (4, s - 2 * k)]), LaurentPoly.monomial(2 * k - j))
            return out
    if name == "E6":
        if r in (1, 5):
            return {_vec(6, [(r, s)]): one}
        if r == 2:
            return {_vec(6, [(2, s - k), (5, k)]): LaurentPoly.monomial(k) for k in range(s + 1)}
        if r == 4:
            return {_vec(6, [(1, k), (4, s - k)]): LaurentPoly.monomial(k) for k in range(s + 1)}
        if r == 6:
            return _chain_sum(6, s, 6)
        if r == 3:
            for j1, j2, j3, j4 in product(range(s + 1), repeat=4):
                slack = s - j1 - 2 * j2 - j3 - j4
                if slack < 0:
                    continue
                mult = min(1 + j3, 1 + slack)
                poly = qbinom_bracket(j4, 1).shift(3 * s - 2 * j1 - 4 * j2 - 3 * j3 - 2 * j4) * mult
                lam = _vec(6, [(1, j1), (5, j1), (2, j2), (4, j2), (3, j3), (6, j4)])
                _acc(out, lam, poly)
            return out
    if name == "E7":
        if r == 1:
            return _chain_sum(7, s, 1)
        if r == 2:
            return _min_family(7, s, [(1,), (2,), (3,), (5,)])
        if r == 5:
            return _two_node(7, s, 5, 1)
        if r == 6:
            return {_vec(7, [(6, s)]): one}
        if r == 7:
            return {_vec(7, [(6, k), (7, s - k)]): LaurentPoly.monomial(k) for k in range(s + 1)}
    if name == "E8":
        if r == 1:
            return _chain_sum(8, s, 1)
        if r == 2:
            return _min_family(8, s, [(1,), (2,), (3,), (7,)])
        if r == 7:
            return _two_node(8, s, 7, 1)
    raise AlgebraError(f"no conjectured formula for W^({r})_s in {name}")


def _min_family(n: int, s: int, nodes) -> Decomposition:
    """The four-parameter formula shared by E7/E8 W^(2)_s and F4 W^(2)_s.

    ``nodes`` lists the fundamental weights attached to j1..j4; a tuple of length
    two means the weight carries coefficient two.
    """
    out: Decomposition = {}
    for j1, j2, j3, j4 in product(range(s + 1), repeat=4):
        slack = s - j1 - j2 - 2 * j3 - j4
        if slack < 0:
            continue
        mult = min(1 + j2, 1 + slack)
        poly = qbinom_bracket(j1, 1).shift(3 * s - 2 * j1 - 3 * j2 - 4 * j3 - 2 * j4) * mult
        pairs = []
        for j, node in zip((j1, j2, j3, j4), nodes):
            pairs.append((node[0], j * len(node)))
        _acc(out, _vec(n, pairs), poly)
    return out
