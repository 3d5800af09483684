"""Cartan data, bilinear forms and Weyl group helpers for the finite simple Lie algebras.

Node labelling (Kac):

* ``B_n``: node ``n`` is the short root.
* ``C_n``: node ``n`` is the long root.
* ``D_n``: node ``n-2`` branches to ``n-1`` and ``n``.
* ``E_6``: chain 1-2-3-4-5 with 6 attached to 3.
* ``E_7``: chain 1-...-6 with 7 attached to 3.
* ``E_8``: chain 1-...-7 with 8 attached to 5.
* ``F_4``: nodes 1, 2 long, 3, 4 short.
* ``G_2``: node 1 long, node 2 short.

Long roots have squared length 2, and ``t_a = 2 / (alpha_a | alpha_a)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]

DEFAULT_WEYL_BOUND = 10**6

_RANK_RULES = {
    "A": (lambda n: n >= 1, "A_n needs n >= 1"),
    "B": (lambda n: n >= 2, "B_n needs n >= 2"),
    "C": (lambda n: n >= 2, "C_n needs n >= 2"),
    "D": (lambda n: n >= 4, "D_n needs n >= 4"),
    "E": (lambda n: n in (6, 7, 8), "E_n needs n in {6, 7, 8}"),
    "F": (lambda n: n == 4, "F_n needs n = 4"),
    "G": (lambda n: n == 2, "G_n needs n = 2"),
}


class AlgebraError(ValueError):
    """Raised for invalid algebra identifiers or unsupported requests."""


@dataclass(frozen=True, order=True)
class AlgebraId:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in _RANK_RULES:
            raise AlgebraError(f"unknown family {self.family!r}")
        ok, msg = _RANK_RULES[self.family]
        if not ok(self.rank):
            raise AlgebraError(f"invalid rank {self.rank}: {msg}")

    @classmethod
    def parse(cls, text: "str | AlgebraId") -> "AlgebraId":
        if isinstance(text, AlgebraId):
            return text
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not m:
            raise AlgebraError(f"cannot parse algebra {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"


def _edges(aid: AlgebraId) -> list[tuple[int, int]]:
    n = aid.rank
    f = aid.family
    if f in "ABCFG":
        return [(a, a + 1) for a in range(1, n)]
    if f == "D":
        return [(a, a + 1) for a in range(1, n - 1)] + [(n - 2, n)]
    branch = {6: 3, 7: 3, 8: 5}[n]
    return [(a, a + 1) for a in range(1, n - 1)] + [(branch, n)]


def _t_values(aid: AlgebraId) -> tuple[int, ...]:
    n = aid.rank
    f = aid.family
    if f == "B":
        return (1,) * (n - 1) + (2,)
    if f == "C":
        return (2,) * (n - 1) + (1,)
    if f == "F":
        return (1, 1, 2, 2)
    if f == "G":
        return (1, 3)
    return (1,) * n


def _inverse(mat: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _freeze(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def kernel_K(l: int, i: int, j: int) -> Fraction:
    """min(i, j) - i*j/l."""
    if l == 0:
        raise ValueError("kernel_K needs l >= 1")
    return Fraction(min(i, j)) - Fraction(i * j, l)


@dataclass(frozen=True)
class AlgebraData:
    id: AlgebraId
    cartan: tuple[tuple[int, ...], ...]
    inv_cartan: Matrix
    t_values: tuple[int, ...]
    bilinear_roots: Matrix
    bilinear_weights: Matrix
    edges: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return self.id.rank

    @property
    def t(self) -> int:
        return max(self.t_values)

    def C(self, a: int, b: int) -> int:
        """1-based Cartan entry."""
        return self.cartan[a - 1][b - 1]

    def Cinv(self, a: int, b: int) -> Fraction:
        return self.inv_cartan[a - 1][b - 1]

    def ta(self, a: int) -> int:
        return self.t_values[a - 1]

    def neighbours(self, a: int) -> list[int]:
        return [b for b in range(1, self.rank + 1) if b != a and self.C(a, b) != 0]

    # Table of subalgebras attached to the non-simply-laced families.
    @property
    def y_algebra(self) -> AlgebraId | None:
        n, f = self.rank, self.id.family
        return {
            "B": lambda: AlgebraId("D", n + 1) if n + 1 >= 4 else AlgebraId("A", 3),
            "C": lambda: AlgebraId("A", 2 * n - 1),
            "F": lambda: AlgebraId("E", 6),
            "G": lambda: AlgebraId("B", 3),
        }.get(f, lambda: None)()

    @property
    def z_algebra(self) -> AlgebraId | None:
        n, f = self.rank, self.id.family
        return {
            "B": lambda: AlgebraId("A", 1),
            "C": lambda: AlgebraId("A", n - 1),
            "F": lambda: AlgebraId("A", 2),
            "G": lambda: AlgebraId("A", 1),
        }.get(f, lambda: None)()

    @property
    def short_nodes(self) -> list[int]:
        """Nodes with t_a = t (the index set of D^{-1})."""
        return [a for a in range(1, self.rank + 1) if self.ta(a) == self.t]

    @property
    def d_inverse(self) -> Matrix:
        """D^{-1} restricted to the short nodes (empty when simply laced)."""
        if self.id.simply_laced:
            return ()
        z = algebra_data(self.z_algebra)
        # short nodes form a chain that is the Dynkin diagram of Z_n
        if self.id.family == "B" or self.id.family == "G":
            return ((Fraction(1, 2),),)
        m = z.rank + 1
        return tuple(tuple(kernel_K(m, i, j) for j in range(1, m)) for i in range(1, m))

    def to_root_coords(self, weight: Sequence[int]) -> tuple[Fraction, ...]:
        """Weight in fundamental-weight coordinates -> simple-root coordinates."""
        n = self.rank
        # alpha_a = sum_b C_ba Lambda_b, so Lambda_b = sum_a Cinv_ab alpha_a
        return tuple(sum((self.inv_cartan[a][b] * weight[b] for b in range(n)), Fraction(0)) for a in range(n))

    def from_root_coords(self, coords: Sequence) -> tuple:
        n = self.rank
        return tuple(sum(self.cartan[b][a] * coords[a] for a in range(n)) for b in range(n))

    def simple_root(self, a: int) -> tuple[int, ...]:
        """alpha_a in fundamental-weight coordinates (column a of C)."""
        return tuple(self.cartan[b][a - 1] for b in range(self.rank))

    def pair_weights(self, x: Sequence, y: Sequence) -> Fraction:
        """(x | y) for two weights in fundamental-weight coordinates."""
        n = self.rank
        B = self.bilinear_weights
        return sum((B[a][b] * x[a] * y[b] for a in range(n) for b in range(n) if x[a] and y[b]), Fraction(0))

    def reflect(self, a: int, weight: Sequence[int]) -> tuple[int, ...]:
        if not 1 <= a <= self.rank:
            raise AlgebraError(f"node {a} out of range for {self.id}")
        la = weight[a - 1]
        return tuple(w - la * self.cartan[b][a - 1] for b, w in enumerate(weight))

    def to_dominant(self, weight: Sequence[int]) -> tuple[tuple[int, ...], int]:
        """Reflect into the dominant chamber; returns (dominant weight, sign of the word used)."""
        w = tuple(weight)
        sign = 1
        while True:
            for a in range(self.rank):
                if w[a] < 0:
                    w = self.reflect(a + 1, w)
                    sign = -sign
                    break
            else:
                return w, sign

    def orbit(self, weight: Sequence[int]) -> list[tuple[int, ...]]:
        """Weyl orbit of a weight (generated from its dominant representative)."""
        dom, _ = self.to_dominant(weight)
        seen = {dom}
        frontier = [dom]
        while frontier:
            nxt = []
            for w in frontier:
                for a in range(self.rank):
                    if w[a] > 0:
                        v = self.reflect(a + 1, w)
                        if v not in seen:
                            seen.add(v)
                            nxt.append(v)
            frontier = nxt
        return sorted(seen)

    def weyl_order(self) -> int:
        return weyl_group_order(self.id)

    def weyl_elements(self, bound: int = DEFAULT_WEYL_BOUND) -> Iterator[tuple[tuple[int, ...], int]]:
        """Yield (word, det) once per group element; words act right to left."""
        order = weyl_group_order(self.id)
        if order > bound:
            raise AlgebraError(f"Weyl group of {self.id} has order {order} > bound {bound}")
        rho = (1,) * self.rank
        seen = {rho: ()}
        frontier = [rho]
        yield (), 1
        while frontier:
            nxt = []
            for w in frontier:
                word = seen[w]
                for a in range(1, self.rank + 1):
                    v = self.reflect(a, w)
                    if v not in seen:
                        seen[v] = (a,) + word
                        nxt.append(v)
                        yield seen[v], (-1) ** len(seen[v])
            frontier = nxt

    def apply_word(self, word: Sequence[int], weight: Sequence[int]) -> tuple[int, ...]:
        w = tuple(weight)
        for a in reversed(word):
            w = self.reflect(a, w)
        return w

    def positive_roots(self) -> list[tuple[int, ...]]:
        """Positive roots in simple-root coordinates."""
        return _positive_roots(self.id)

    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    def dimension(self, weight: Sequence[int]) -> int:
        """Weyl dimension formula."""
        lam = tuple(x + 1 for x in weight)
        num = Fraction(1)
        for beta in self.positive_roots():
            # (lam | beta) with beta = sum c_a alpha_a and (Lambda_b | alpha_a) = delta_ab / t_a
            top = sum(Fraction(c * lam[a], self.t_values[a]) for a, c in enumerate(beta))
            bot = sum(Fraction(c, self.t_values[a]) for a, c in enumerate(beta))
            num *= top / bot
        assert num.denominator == 1
        return int(num)


@lru_cache(maxsize=None)
def _positive_roots(aid: AlgebraId) -> list[tuple[int, ...]]:
    data = algebra_data(aid)
    n = aid.rank
    simple = [tuple(int(a == b) for b in range(n)) for a in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            wt = data.from_root_coords(r)
            for a in range(n):
                # r + alpha_a is a root when the alpha_a-string through r extends upward
                q = 0
                s = r
                while True:
                    s = tuple(x - int(b == a) for b, x in enumerate(s))
                    if s in roots:
                        q += 1
                    else:
                        break
                p = q - wt[a]
                if p > 0:
                    v = tuple(x + int(b == a) for b, x in enumerate(r))
                    if v not in roots:
                        roots.add(v)
                        nxt.append(v)
        frontier = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


@lru_cache(maxsize=None)
def weyl_group_order(aid: AlgebraId) -> int:
    # |W| = prod over positive roots of (ht + 1) / ht
    out = Fraction(1)
    for beta in _positive_roots(aid):
        h = sum(beta)
        out *= Fraction(h + 1, h)
    assert out.denominator == 1
    return int(out)


@lru_cache(maxsize=None)
def algebra_data(aid: "AlgebraId | str") -> AlgebraData:
    aid = AlgebraId.parse(aid)
    n = aid.rank
    t = _t_values(aid)
    edges = _edges(aid)
    C = [[2 if a == b else 0 for b in range(n)] for a in range(n)]
    for a, b in edges:
        a, b = a - 1, b - 1
        C[a][b] = -max(1, t[a] // t[b])
        C[b][a] = -max(1, t[b] // t[a])
    cartan = tuple(tuple(row) for row in C)
    inv = _inverse([[Fraction(x) for x in row] for row in cartan])
    roots = _freeze([[Fraction(C[a][b], t[a]) for b in range(n)] for a in range(n)])
    weights = _freeze([[inv[a][b] / t[a] for b in range(n)] for a in range(n)])
    return AlgebraData(aid, cartan, inv, t, roots, weights, tuple(edges))


def index_set_H(aid, l: int, variant: str = "full", i: int | None = None) -> list[tuple[int, int]]:
    """H_l, H-bar_l or H_l[i] as sorted lists of (a, j)."""
    data = algebra_data(aid)
    if l < 1:
        raise ValueError("index_set_H needs l >= 1")
    out = []
    for a in range(1, data.rank + 1):
        ta = data.ta(a)
        if variant == "full":
            out += [(a, j) for j in range(1, ta * l + 1)]
        elif variant == "bar":
            out += [(a, j) for j in range(1, ta * l)]
        elif variant == "from_i":
            if i is None or not 1 <= i <= data.t * l + 1:
                raise ValueError("from_i needs 1 <= i <= t*l + 1")
            out += [(a, j) for j in range(1, ta * l + 1) if Fraction(ta, data.t) * (i - 1) < j]
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return out


ALL_FAMILIES_UP_TO_8 = (
    [AlgebraId("A", n) for n in range(1, 9)]
    + [AlgebraId("B", n) for n in range(2, 9)]
    + [AlgebraId("C", n) for n in range(2, 9)]
    + [AlgebraId("D", n) for n in range(4, 9)]
    + [AlgebraId("E", n) for n in (6, 7, 8)]
    + [AlgebraId("F", 4), AlgebraId("G", 2)]
)
