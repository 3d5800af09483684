"""Explicit finite affine crystals B^{r,s} for A_n and C_n, tensor products, R-matrices and energies.

Supported crystals:

* ``A_n``: ``B^{1,s}`` (rows), elements ``(x_1, ..., x_{n+1})`` with sum ``s``.
* ``C_n``: ``B^{1,s}`` (rows), elements ``(x_1..x_n, xb_n..xb_1)`` with
  ``sum <= s`` and ``sum = s mod 2``.
* ``C_n``: ``B^{r,1}`` (columns), 0/1 vectors of the same shape with sum ``r``.

The tensor product follows the rule: ``e_i`` acts on the left factor when
``phi_i(b1) >= eps_i(b2)``, and ``f_i`` acts on the left factor when
``phi_i(b1) > eps_i(b2)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence

from .root_data import AlgebraId

Element = tuple[int, ...]
Path = tuple[Element, ...]


class CrystalError(ValueError):
    pass


class CrystalSyntaxError(CrystalError):
    pass


@dataclass(frozen=True)
class CrystalId:
    algebra: AlgebraId
    r: int
    s: int

    def __post_init__(self) -> None:
        fam, n = self.algebra.family, self.algebra.rank
        ok = (fam == "A" and self.r == 1 and self.s >= 1) or (
            fam == "C" and ((self.r == 1 and self.s >= 1) or (1 <= self.r <= n and self.s == 1))
        )
        if not ok:
            raise CrystalError(f"B^({self.r},{self.s}) for {self.algebra} is not available; supported: A_n B^(1,s), C_n B^(1,s), C_n B^(r,1)")

    @classmethod
    def make(cls, algebra, r: int, s: int) -> "CrystalId":
        return cls(AlgebraId.parse(algebra), r, s)

    @property
    def kind(self) -> str:
        if self.algebra.family == "A":
            return "A-row"
        return "C-row" if self.r == 1 else "C-col"

    def __str__(self) -> str:
        return f"{self.algebra}:{self.r},{self.s}"


def parse_crystal_list(text: str) -> list[CrystalId]:
    """Parse ``"C2:1,2 C2:2,1x3 C2:1,1x2"`` into an ordered factor list."""
    out = []
    for tok in text.split():
        count = 1
        try:
            if "x" in tok:
                tok, c = tok.rsplit("x", 1)
                count = int(c)
            alg, rs = tok.split(":")
            r, s = (int(v) for v in rs.split(","))
        except ValueError as exc:
            raise CrystalSyntaxError(f"bad crystal token {tok!r}; expected ALG:r,s[xCOUNT]") from exc
        out.extend([CrystalId.make(alg, r, s)] * count)
    return out


def _pos(x: int) -> int:
    return x if x > 0 else 0


class KRCrystal:
    """One explicit crystal with Kashiwara operators indexed 0..n."""

    def __init__(self, cid: CrystalId):
        self.id = cid
        self.n = cid.algebra.rank
        self.elements: list[Element] = sorted(self._build(), reverse=True)
        self._index = {b: k for k, b in enumerate(self.elements)}

    # -- construction ---------------------------------------------------------

    def _build(self) -> Iterator[Element]:
        n, r, s = self.n, self.id.r, self.id.s
        kind = self.id.kind
        if kind == "A-row":
            for x in product(range(s + 1), repeat=n + 1):
                if sum(x) == s:
                    yield x
        elif kind == "C-row":
            for x in product(range(s + 1), repeat=2 * n):
                tot = sum(x)
                if tot <= s and (s - tot) % 2 == 0:
                    yield x
        else:
            for x in product((0, 1), repeat=2 * n):
                if sum(x) == r and self._column_ok(x):
                    yield x

    def _column_ok(self, x: Element) -> bool:
        n = self.n
        for k in range(1, n + 1):
            if x[k - 1] and x[2 * n - k]:
                if sum(x[i - 1] + x[2 * n - i] for i in range(1, k + 1)) > k:
                    return False
        return True

    def __contains__(self, b) -> bool:
        return b in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    # -- coordinates ----------------------------------------------------------

    def _bar(self, i: int) -> int:
        """Position of xb_i in the tuple."""
        return 2 * self.n - i

    def _moved(self, b: Element, moves: Sequence[tuple[int, int]]) -> Optional[Element]:
        x = list(b)
        for pos, delta in moves:
            x[pos] += delta
        t = tuple(x)
        return t if t in self._index else None

    # -- operators ------------------------------------------------------------

    def e(self, i: int, b: Element) -> Optional[Element]:
        return self._op(i, b, raising=True)

    def f(self, i: int, b: Element) -> Optional[Element]:
        return self._op(i, b, raising=False)

    def _op(self, i: int, b: Element, raising: bool) -> Optional[Element]:
        if not 0 <= i <= self.n:
            raise CrystalError(f"operator index {i} out of range 0..{self.n}")
        kind = self.id.kind
        sg = 1 if raising else -1
        n = self.n
        if kind == "A-row":
            if i == 0:
                return self._moved(b, [(0, -sg), (n, sg)])
            return self._moved(b, [(i - 1, sg), (i, -sg)])
        if kind == "C-row":
            return self._c_row(i, b, raising)
        return self._c_col(i, b, raising)

    def _c_row(self, i: int, b: Element, raising: bool) -> Optional[Element]:
        n = self.n
        if i == 0:
            x1, xb1 = b[0], b[self._bar(1)]
            if raising:
                if x1 >= xb1 + 2:
                    return self._moved(b, [(0, -2)])
                if x1 == xb1 + 1:
                    return self._moved(b, [(0, -1), (self._bar(1), 1)])
                return self._moved(b, [(self._bar(1), 2)])
            if x1 >= xb1:
                return self._moved(b, [(0, 2)])
            if x1 == xb1 - 1:
                return self._moved(b, [(0, 1), (self._bar(1), -1)])
            return self._moved(b, [(self._bar(1), -2)])
        if i == n:
            sg = 1 if raising else -1
            return self._moved(b, [(n - 1, sg), (self._bar(n), -sg)])
        xi1, xbi1 = b[i], b[self._bar(i + 1)]
        if raising:
            if xi1 > xbi1:
                return self._moved(b, [(i - 1, 1), (i, -1)])
            return self._moved(b, [(self._bar(i + 1), 1), (self._bar(i), -1)])
        if xi1 >= xbi1:
            return self._moved(b, [(i - 1, -1), (i, 1)])
        return self._moved(b, [(self._bar(i + 1), -1), (self._bar(i), 1)])

    def _c_col(self, i: int, b: Element, raising: bool) -> Optional[Element]:
        n = self.n
        if i == 0:
            sg = 1 if raising else -1
            return self._moved(b, [(0, -sg), (self._bar(1), sg)])
        if i == n:
            sg = 1 if raising else -1
            return self._moved(b, [(n - 1, sg), (self._bar(n), -sg)])
        unb = (b[i - 1], b[i])
        bar = (b[self._bar(i + 1)], b[self._bar(i)])
        if raising:
            if bar == (0, 1) and unb != (1, 0):
                return self._moved(b, [(self._bar(i + 1), 1), (self._bar(i), -1)])
            if bar != (0, 1) and unb == (0, 1):
                return self._moved(b, [(i - 1, 1), (i, -1)])
            return None
        if unb == (1, 0) and bar != (0, 1):
            return self._moved(b, [(i - 1, -1), (i, 1)])
        if unb != (1, 0) and bar == (1, 0):
            return self._moved(b, [(self._bar(i + 1), -1), (self._bar(i), 1)])
        return None

    # -- string lengths and weights --------------------------------------------

    def epsilon(self, i: int, b: Element) -> int:
        return self._eps_phi(b)[0][i]

    def phi(self, i: int, b: Element) -> int:
        return self._eps_phi(b)[1][i]

    def _eps_phi(self, b: Element) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return _string_lengths(self.id, b)

    def eps_vector(self, b: Element) -> tuple[int, ...]:
        return self._eps_phi(b)[0]

    def phi_vector(self, b: Element) -> tuple[int, ...]:
        return self._eps_phi(b)[1]

    def weight(self, b: Element) -> tuple[int, ...]:
        """Classical weight in fundamental-weight coordinates."""
        eps, phi = self._eps_phi(b)
        return tuple(phi[i] - eps[i] for i in range(1, self.n + 1))

    def level(self) -> int:
        # every dual Kac label is 1 for A_n and C_n
        return min(sum(self.eps_vector(b)) for b in self.elements)

    def minimal_elements(self) -> list[Element]:
        lv = self.level()
        return [b for b in self.elements if sum(self.eps_vector(b)) == lv]

    def highest(self) -> Element:
        """The unique element of classical weight s * Lambda_r."""
        top = tuple(self.id.s if a == self.id.r else 0 for a in range(1, self.n + 1))
        found = [b for b in self.elements if self.weight(b) == top]
        assert len(found) == 1
        return found[0]

    def ground_elements(self, k: int | None = None) -> list[Element]:
        """Elements with phi(b) = k Lambda_0 (k defaults to the level)."""
        k = self.level() if k is None else k
        want = (k,) + (0,) * self.n
        return [b for b in self.elements if self.phi_vector(b) == want]

    def ground_element(self) -> Element:
        found = self.ground_elements()
        if len(found) != 1:
            raise CrystalError(f"{self.id} has {len(found)} candidates with phi = k Lambda_0")
        return found[0]

    # -- rendering ------------------------------------------------------------

    def letters(self, b: Element) -> list[int]:
        """Tableau content as letters 1..n (unbarred) and -n..-1 (barred)."""
        n = self.n
        if self.id.kind == "A-row":
            return [i + 1 for i, v in enumerate(b) for _ in range(v)]
        out = [i + 1 for i in range(n) for _ in range(b[i])]
        out += [-(n - k) for k in range(n) for _ in range(b[n + k])]
        return out

    def render(self, b: Element) -> str:
        word = self.letters(b)
        if not word:
            return "phi"
        return "".join(str(x) for x in word)

    def parse(self, text: str) -> Element:
        """Inverse of render."""
        for b in self.elements:
            if self.render(b) == text:
                return b
        raise CrystalError(f"{text!r} is not an element of {self.id}")

    def to_dot(self) -> str:
        lines = [f'digraph "{self.id}" {{']
        for b in self.elements:
            lines.append(f'  "{self.render(b)}" [label="{self.render(b)}\\n{b}"];')
        for b in self.elements:
            for i in range(self.n + 1):
                c = self.f(i, b)
                if c is not None:
                    lines.append(f'  "{self.render(b)}" -> "{self.render(c)}" [label="{i}"];')
        lines.append("}")
        return "\n".join(lines)


@lru_cache(maxsize=None)
def _string_lengths(cid: CrystalId, b: Element) -> tuple[tuple[int, ...], tuple[int, ...]]:
    B = kr_crystal(cid)
    eps, phi = [], []
    for i in range(B.n + 1):
        k, x = 0, b
        while (x := B.e(i, x)) is not None:
            k += 1
        eps.append(k)
        k, x = 0, b
        while (x := B.f(i, x)) is not None:
            k += 1
        phi.append(k)
    return tuple(eps), tuple(phi)


@lru_cache(maxsize=None)
def kr_crystal(cid: CrystalId) -> KRCrystal:
    return KRCrystal(cid)


def closed_form_eps_phi(cid: CrystalId, b: Element) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The closed formulas for eps and phi on the row crystals."""
    n, s = cid.algebra.rank, cid.s
    if cid.kind == "A-row":
        return tuple(b[i] for i in range(n + 1)), (b[n],) + tuple(b[i - 1] for i in range(1, n + 1))
    if cid.kind != "C-row":
        raise CrystalError("closed forms are only known for row crystals")
    x = b[:n]
    xb = tuple(reversed(b[n:]))  # xb[i-1] = xb_i
    half = (s - sum(b)) // 2
    eps = [half + _pos(x[0] - xb[0])]
    phi = [half + _pos(xb[0] - x[0])]
    for i in range(1, n):
        eps.append(xb[i - 1] + _pos(x[i] - xb[i]))
        phi.append(x[i - 1] + _pos(xb[i] - x[i]))
    eps.append(xb[n - 1])
    phi.append(x[n - 1])
    return tuple(eps), tuple(phi)


# ---------------------------------------------------------------------------
# tensor products


class Tensor:
    """The tensor product B_1 x ... x B_L of explicit crystals."""

    def __init__(self, factors: Sequence[CrystalId]):
        if not factors:
            raise CrystalError("empty tensor product")
        algs = {c.algebra for c in factors}
        if len(algs) != 1:
            raise CrystalError("all factors must share one algebra")
        self.ids = tuple(factors)
        self.crystals = tuple(kr_crystal(c) for c in factors)
        self.n = factors[0].algebra.rank

    def _signature(self, i: int, p: Path) -> tuple[int, int, int, int]:
        """(eps, phi, position acted on by e, position acted on by f)."""
        minus = 0  # uncancelled minus signs so far
        plus_stack: list[int] = []  # positions carrying uncancelled plus signs
        last_minus = -1
        for k, (B, b) in enumerate(zip(self.crystals, p)):
            ek, fk = B.epsilon(i, b), B.phi(i, b)
            cancel = min(ek, sum(1 for _ in plus_stack))
            # cancel the most recent plus signs against this factor's minus signs
            for _ in range(cancel):
                plus_stack.pop()
            if ek > cancel:
                minus += ek - cancel
                last_minus = k
            plus_stack.extend([k] * fk)
        first_plus = plus_stack[0] if plus_stack else -1
        return minus, len(plus_stack), last_minus, first_plus

    def epsilon(self, i: int, p: Path) -> int:
        return self._signature(i, p)[0]

    def phi(self, i: int, p: Path) -> int:
        return self._signature(i, p)[1]

    def e(self, i: int, p: Path) -> Optional[Path]:
        _, _, pos, _ = self._signature(i, p)
        if pos < 0:
            return None
        return p[:pos] + (self.crystals[pos].e(i, p[pos]),) + p[pos + 1:]

    def f(self, i: int, p: Path) -> Optional[Path]:
        _, _, _, pos = self._signature(i, p)
        if pos < 0:
            return None
        return p[:pos] + (self.crystals[pos].f(i, p[pos]),) + p[pos + 1:]

    def weight(self, p: Path) -> tuple[int, ...]:
        out = [0] * self.n
        for B, b in zip(self.crystals, p):
            for a, v in enumerate(B.weight(b)):
                out[a] += v
        return tuple(out)

    def classical_highest(self, p: Path) -> bool:
        return all(self.epsilon(i, p) == 0 for i in range(1, self.n + 1))

    def elements(self) -> Iterator[Path]:
        return product(*(B.elements for B in self.crystals))

    def highest_paths(self, lam: Sequence[int] | None = None, level: int | None = None) -> Iterator[Path]:
        """Classically restricted paths (optionally of weight lam and with eps_0 <= level).

        Built left to right with the local conditions eps_i(b_j) <= <h_i, wt(b_1..b_{j-1})>.
        """
        L = len(self.crystals)
        lam = tuple(lam) if lam is not None else None

        def rec(k: int, acc: tuple, wt: tuple[int, ...]):
            if k == L:
                if lam is None or wt == lam:
                    if level is None or self.epsilon(0, acc) <= level:
                        yield acc
                return
            B = self.crystals[k]
            for b in B.elements:
                eps = B.eps_vector(b)
                if all(eps[i] <= wt[i - 1] for i in range(1, self.n + 1)):
                    w = B.weight(b)
                    yield from rec(k + 1, acc + (b,), tuple(x + y for x, y in zip(wt, w)))

        yield from rec(0, (), (0,) * self.n)

    def render(self, p: Path) -> str:
        return " x ".join(B.render(b) for B, b in zip(self.crystals, p))


def classical_decompose(factors: Sequence[CrystalId]) -> dict[tuple[int, ...], int]:
    """Multiplicity of each classical highest weight in the tensor product."""
    T = Tensor(factors)
    out: dict[tuple[int, ...], int] = {}
    for p in T.highest_paths():
        w = T.weight(p)
        out[w] = out.get(w, 0) + 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# combinatorial R-matrix and energy


@dataclass
class RMatrix:
    left: CrystalId
    right: CrystalId
    image: dict[tuple[Element, Element], tuple[Element, Element]] = field(default_factory=dict)
    energy: dict[tuple[Element, Element], int] = field(default_factory=dict)

    def __call__(self, b1: Element, b2: Element) -> tuple[Element, Element]:
        return self.image[(b1, b2)]

    def H(self, b1: Element, b2: Element) -> int:
        return self.energy[(b1, b2)]

    def to_json(self) -> dict:
        B1, B2 = kr_crystal(self.left), kr_crystal(self.right)
        rows = []
        for (b1, b2), (c2, c1) in sorted(self.image.items(), key=lambda kv: (B1._index[kv[0][0]], B2._index[kv[0][1]])):
            rows.append({
                "b1": B1.render(b1),
                "b2": B2.render(b2),
                "image": [B2.render(c2), B1.render(c1)],
                "minus_H": -self.energy[(b1, b2)],
            })
        return {"left": str(self.left), "right": str(self.right), "rows": rows}


@lru_cache(maxsize=None)
def combinatorial_R(left: CrystalId, right: CrystalId) -> RMatrix:
    """R: B1 x B2 -> B2 x B1 and the energy H on B1 x B2, by propagation from u1 x u2."""
    src = Tensor([left, right])
    dst = Tensor([right, left])
    B1, B2 = src.crystals
    u1, u2 = B1.highest(), B2.highest()
    seed = (u1, u2)
    top = src.weight(seed)
    tops = [p for p in src.highest_paths(top)]
    if tops != [seed]:
        raise CrystalError("highest element of top weight is not unique")
    R = RMatrix(left, right)
    R.image[seed] = (u2, u1)
    R.energy[seed] = 0
    n = src.n
    queue = deque([seed])

    def step0(x: Path, y: Path) -> int:
        # energy change for e_0 applied to x (image y)
        _, _, px, _ = src._signature(0, x)
        _, _, py, _ = dst._signature(0, y)
        if px == 0 and py == 0:
            return 1
        if px == 1 and py == 1:
            return -1
        return 0

    while queue:
        x = queue.popleft()
        y = R.image[x]
        hx = R.energy[x]
        for i in range(n + 1):
            for raising in (True, False):
                xn = src.e(i, x) if raising else src.f(i, x)
                yn = dst.e(i, y) if raising else dst.f(i, y)
                if (xn is None) != (yn is None):
                    raise CrystalError(f"R does not commute with operator {i} at {x}")
                if xn is None:
                    continue
                if i == 0:
                    h = hx + step0(x, y) if raising else hx - step0(xn, yn)
                else:
                    h = hx
                if xn in R.image:
                    if R.image[xn] != yn or R.energy[xn] != h:
                        raise CrystalError(f"propagation conflict at {xn}")
                    continue
                R.image[xn] = yn
                R.energy[xn] = h
                queue.append(xn)
    if len(R.image) != len(B1) * len(B2):
        raise CrystalError(f"{left} x {right} is not connected from the seed")
    return R
