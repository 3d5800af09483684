"""Fermionic forms M, M_l and N_l.

Configurations are stored as one tuple of multiplicities per color:
``m[a-1][i-1]`` is the number of parts of size ``i`` in color ``a``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .qseries import (
    LaurentPoly,
    TruncatedSeries,
    poch_q,
    qbinom_brace,
    qbinom_bracket,
)
from .root_data import AlgebraData, AlgebraError, AlgebraId, algebra_data, kernel_K

Config = tuple[tuple[int, ...], ...]


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class TensorSpec:
    """W = tensor over (a, j) of (W^{(a)}_j)^{nu[a, j]}."""

    algebra: AlgebraId
    nu_items: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def make(cls, algebra, nu: Mapping[tuple[int, int], int]) -> "TensorSpec":
        aid = AlgebraId.parse(algebra)
        clean = {}
        for (a, j), v in nu.items():
            if not 1 <= a <= aid.rank:
                raise SpecError(f"color {a} out of range for {aid}")
            if j < 1 or v < 0:
                raise SpecError(f"bad entry nu[{a},{j}] = {v}")
            if v:
                clean[(a, j)] = clean.get((a, j), 0) + v
        return cls(aid, tuple(sorted(clean.items())))

    @classmethod
    def from_factors(cls, algebra, factors: Iterable[Sequence[int]]) -> "TensorSpec":
        """factors: iterable of (a, s) or (a, s, count)."""
        nu: dict[tuple[int, int], int] = {}
        for f in factors:
            a, s = f[0], f[1]
            cnt = f[2] if len(f) > 2 else 1
            if s == 0:
                continue
            nu[(a, s)] = nu.get((a, s), 0) + cnt
        return cls.make(algebra, nu)

    @classmethod
    def from_json(cls, payload: "str | Mapping") -> "TensorSpec":
        data = json.loads(payload) if isinstance(payload, str) else payload
        if not isinstance(data, Mapping) or "algebra" not in data or "factors" not in data:
            raise SpecError("spec needs keys 'algebra' and 'factors'")
        if set(data) - {"algebra", "factors"}:
            raise SpecError(f"unknown spec keys {sorted(set(data) - {'algebra', 'factors'})}")
        if not isinstance(data["factors"], list):
            raise SpecError("'factors' must be a list")
        facs = []
        for f in data["factors"]:
            if not isinstance(f, Mapping) or not {"a", "s"} <= set(f) or set(f) - {"a", "s", "count"}:
                raise SpecError(f"bad factor {f!r}")
            if not all(isinstance(f[k], int) and not isinstance(f[k], bool) for k in f):
                raise SpecError(f"factor fields must be integers: {f!r}")
            facs.append((int(f["a"]), int(f["s"]), int(f.get("count", 1))))
        try:
            return cls.from_factors(data["algebra"], facs)
        except AlgebraError as exc:
            raise SpecError(str(exc)) from exc

    def to_json(self) -> dict:
        return {
            "algebra": str(self.algebra),
            "factors": [{"a": a, "s": j, "count": v} for (a, j), v in self.nu_items],
        }

    @property
    def nu(self) -> dict[tuple[int, int], int]:
        return dict(self.nu_items)

    @property
    def data(self) -> AlgebraData:
        return algebra_data(self.algebra)

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def max_index(self, a: int) -> int:
        return max((j for (b, j), _ in self.nu_items if b == a), default=0)

    def gamma(self, a: int, i: int, cap: int | None = None) -> int:
        """sum_j nu[a, j] min(i, j), optionally over j <= cap only."""
        return sum(v * min(i, j) for (b, j), v in self.nu_items if b == a and (cap is None or j <= cap))

    def weight(self) -> tuple[int, ...]:
        """Lambda = sum j nu[a, j] Lambda_a as fundamental-weight coordinates."""
        w = [0] * self.rank
        for (a, j), v in self.nu_items:
            w[a - 1] += j * v
        return tuple(w)

    def in_H(self, l: int) -> bool:
        d = self.data
        return all(j <= d.ta(a) * l for (a, j), _ in self.nu_items)

    def min_level(self) -> int:
        d = self.data
        return max([1] + [-(-j // d.ta(a)) for (a, j), _ in self.nu_items])

    def tensor(self, other: "TensorSpec") -> "TensorSpec":
        nu = self.nu
        for k, v in other.nu_items:
            nu[k] = nu.get(k, 0) + v
        return TensorSpec.make(self.algebra, nu)

    def factor_list(self) -> list[tuple[int, int]]:
        out = []
        for (a, j), v in self.nu_items:
            out += [(a, j)] * v
        return out

    def __str__(self) -> str:
        parts = [f"W({a},{j})" + (f"^{v}" if v > 1 else "") for (a, j), v in self.nu_items]
        return f"{self.algebra}: " + (" x ".join(parts) if parts else "trivial")


# ---------------------------------------------------------------------------
# vacancy numbers and cocharge


def _Q(mb: Sequence[int], x: Fraction | int) -> Fraction:
    return sum((min(x, k) * v for k, v in enumerate(mb, 1) if v), Fraction(0))


def vacancy(spec: TensorSpec, m: Config, a: int, i: int, level: int | None = None) -> int:
    """p^{(a)}_i; in level mode the sums run over H_l only."""
    d = spec.data
    if level is not None and not 1 <= i <= d.ta(a) * level:
        raise SpecError(f"({a},{i}) is outside H_{level}")
    cap = None if level is None else d.ta(a) * level
    total = Fraction(spec.gamma(a, i, cap))
    ta = d.ta(a)
    for b in range(1, spec.rank + 1):
        cab = d.C(a, b)
        if cab:
            total -= cab * _Q(m[b - 1], Fraction(d.ta(b) * i, ta))
    assert total.denominator == 1
    return int(total)


def vacancy_tail_form(spec: TensorSpec, m: Config, a: int, i: int, l: int) -> int:
    """The equivalent expression gamma - mu + tail sum (level mode)."""
    d = spec.data
    ta = d.ta(a)
    total = Fraction(spec.gamma(a, i, ta * l) - mu_vector(spec, m)[a - 1])
    for b in range(1, spec.rank + 1):
        cab = d.C(a, b)
        if not cab:
            continue
        x = Fraction(d.ta(b) * i, ta)
        mb = m[b - 1]
        for k in range(1, min(len(mb), d.ta(b) * l) + 1):
            if k > x and mb[k - 1]:
                total += cab * (k - x) * mb[k - 1]
    assert total.denominator == 1
    return int(total)


def mu_vector(spec: TensorSpec, m: Config) -> tuple[int, ...]:
    """mu_a = sum_b C_ab sum_k k m^{(b)}_k."""
    d = spec.data
    sizes = [sum(k * v for k, v in enumerate(mb, 1)) for mb in m]
    return tuple(sum(d.C(a, b) * sizes[b - 1] for b in range(1, spec.rank + 1)) for a in range(1, spec.rank + 1))


def cocharge(spec: TensorSpec, m: Config, level: int | None = None) -> int:
    """c({m}) from the quadratic form (level mode truncates nu to H_l)."""
    d = spec.data
    n = spec.rank
    cap = (lambda a: None) if level is None else (lambda a: d.ta(a) * level)
    quad = Fraction(0)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            ab = d.bilinear_roots[a - 1][b - 1]
            if not ab:
                continue
            for j, mj in enumerate(m[a - 1], 1):
                if not mj:
                    continue
                for k, mk in enumerate(m[b - 1], 1):
                    if mk:
                        quad += ab * min(d.ta(b) * j, d.ta(a) * k) * mj * mk
    lin = sum(spec.gamma(a, k, cap(a)) * mk for a in range(1, n + 1) for k, mk in enumerate(m[a - 1], 1))
    c = quad / 2 - lin
    assert c.denominator == 1
    return int(c)


def vacancy_eliminated(spec: TensorSpec, m: Config, a: int, i: int, l: int) -> Fraction:
    """Kernel form of p over H-bar_l (m is only read on H-bar_l)."""
    d = spec.data
    ta = d.ta(a)
    total = sum((kernel_K(ta * l, i, j) * v for (b, j), v in spec.nu_items if b == a and j < ta * l), Fraction(0))
    for b in range(1, spec.rank + 1):
        ab = d.bilinear_roots[a - 1][b - 1]
        if not ab:
            continue
        tb = d.ta(b)
        for k, v in enumerate(m[b - 1][: tb * l - 1], 1):
            if v:
                total -= ab * kernel_K(ta * tb * l, tb * i, ta * k) * v
    return total


def cocharge_eliminated(spec: TensorSpec, m: Config, l: int) -> Fraction:
    d = spec.data
    n = spec.rank
    quad = Fraction(0)
    for a in range(1, n + 1):
        ta = d.ta(a)
        for b in range(1, n + 1):
            ab = d.bilinear_roots[a - 1][b - 1]
            if not ab:
                continue
            tb = d.ta(b)
            for j, mj in enumerate(m[a - 1][: ta * l - 1], 1):
                if not mj:
                    continue
                for k, mk in enumerate(m[b - 1][: tb * l - 1], 1):
                    if mk:
                        quad += ab * kernel_K(ta * tb * l, tb * j, ta * k) * mj * mk
    lin = Fraction(0)
    for a in range(1, n + 1):
        ta = d.ta(a)
        for j, mj in enumerate(m[a - 1][: ta * l - 1], 1):
            if mj:
                lin += sum((kernel_K(ta * l, i, j) * v for (b, i), v in spec.nu_items if b == a and i < ta * l), Fraction(0)) * mj
    lam = spec.weight()
    return quad / 2 - lin - d.pair_weights(lam, lam) / (2 * l)


# ---------------------------------------------------------------------------
# weight constraint and plain enumeration


def target_sizes(spec: TensorSpec, lam: Sequence[int] | None = None, level: int | None = None) -> tuple[int, ...] | None:
    """N_a = sum_k k m^{(a)}_k forced by the weight constraint, or None if not a nonnegative integer."""
    d = spec.data
    lam = tuple(lam) if lam is not None else (0,) * spec.rank
    if len(lam) != spec.rank:
        raise SpecError(f"lambda must have {spec.rank} entries")
    if level is None:
        top = spec.weight()
    else:
        top = tuple(
            sum(j * v for (b, j), v in spec.nu_items if b == a and j <= d.ta(a) * level) for a in range(1, spec.rank + 1)
        )
    diff = [x - y for x, y in zip(top, lam)]
    N = d.to_root_coords(diff)
    if any(x.denominator != 1 or x < 0 for x in N):
        return None
    return tuple(int(x) for x in N)


def partitions_bounded(total: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Multiplicity vectors (length max_part) of partitions of total with parts <= max_part.

    Ordered by increasing multiplicity of the largest part first... concretely,
    lexicographic on the reversed vector, which is deterministic.
    """
    if total == 0:
        yield (0,) * max_part
        return
    if max_part <= 0:
        return
    m = [0] * max_part

    def rec(k: int, remaining: int):
        if k == 0:
            if remaining == 0:
                yield tuple(m)
            return
        if k == 1:
            m[0] = remaining
            yield tuple(m)
            m[0] = 0
            return
        for c in range(remaining // k + 1):
            m[k - 1] = c
            yield from rec(k - 1, remaining - c * k)
        m[k - 1] = 0

    yield from rec(max_part, total)


def _trim(mb: Sequence[int]) -> tuple[int, ...]:
    mb = list(mb)
    while mb and mb[-1] == 0:
        mb.pop()
    return tuple(mb)


def enumerate_configurations(
    spec: TensorSpec, lam: Sequence[int] | None = None, level: int | None = None
) -> Iterator[Config]:
    """All configurations satisfying the weight constraint (no vacancy condition).

    Color-major: the last color varies fastest. Without ``level`` the parts of
    color a are bounded only by N_a; with ``level`` they lie in H_l.
    """
    N = target_sizes(spec, lam, level)
    if N is None:
        return
    d = spec.data
    bounds = [N[a] if level is None else d.ta(a + 1) * level for a in range(spec.rank)]
    lists = [[_trim(p) for p in partitions_bounded(N[a], bounds[a])] for a in range(spec.rank)]

    def rec(a: int, acc: list):
        if a == spec.rank:
            yield tuple(acc)
            return
        for p in lists[a]:
            acc.append(p)
            yield from rec(a + 1, acc)
            acc.pop()

    yield from rec(0, [])


# ---------------------------------------------------------------------------
# results


@dataclass
class LedgerRow:
    m: Config
    p: tuple[tuple[int, ...], ...]
    contribution: LaurentPoly
    level: int | None = None


@dataclass
class FermionicResult:
    value: LaurentPoly
    configuration_count: int
    configs_total: int | None = None
    ledger: list[LedgerRow] = field(default_factory=list)

    def to_json(self, lam: Sequence[int]) -> dict:
        out = {"lambda": list(lam), "poly": self.value.to_json(), "configs": self.configuration_count}
        if self.configs_total is not None:
            out["configs_total"] = self.configs_total
        return out


def _bracket_product(ps: Iterable[tuple[int, int]], brace: bool = False) -> LaurentPoly:
    out = LaurentPoly.one()
    f = qbinom_brace if brace else qbinom_bracket
    for p, mm in ps:
        if mm == 0 and (brace or p >= 0):
            continue
        out = out * f(p, mm)
        if out.is_zero():
            break
    return out


def ext_binom_at_one(p: int, m: int) -> int:
    if m == 0:
        return 1
    if p >= 0:
        return math.comb(p + m, m)
    if p >= -m:
        return 0
    return (-1) ** m * math.comb(-p - 1, m)


# ---------------------------------------------------------------------------
# slope search


class _SlopeSearch:
    """Depth-first search over slope sequences with vacancy pruning.

    Color b's index k lives at global time u = k * t / t_b. The state
    G_b(u) = t * Q_b(u t_b / t) grows by t_b * slope per time step, where the
    slope is the number of parts of size >= the current index.
    """

    def __init__(
        self,
        spec: TensorSpec,
        N: Sequence[int] | None = None,
        Nmax: Sequence[int] | None = None,
        level: int | None = None,
    ):
        self.spec = spec
        d = self.d = spec.data
        self.n = n = spec.rank
        self.t = d.t
        self.tb = [d.ta(b + 1) for b in range(n)]
        self.r = [self.t // x for x in self.tb]
        self.C = [list(row) for row in d.cartan]
        self.nbr = [[b for b in range(n) if b != a and self.C[a][b]] for a in range(n)]
        self.fixed = N is not None
        self.cap = list(N) if N is not None else list(Nmax)
        self.level = level
        # the index bound per color in level mode
        self.K = [None if level is None else self.tb[b] * level for b in range(n)]
        self.u_nu = max([0] + [self.r[a - 1] * j for (a, j), _ in spec.nu_items])
        cap_i = None if level is None else (lambda a: self.tb[a] * level)
        self._gamma_cache = {}
        self._gcap = cap_i
        self._inv_cache = {}

    def gamma(self, a: int, i: int) -> int:
        key = (a, i)
        v = self._gamma_cache.get(key)
        if v is None:
            cap = None if self._gcap is None else self._gcap(a)
            v = self.spec.gamma(a + 1, i, cap)
            self._gamma_cache[key] = v
        return v

    def run(self, on_leaf: Callable[[list[list[int]], dict, list[int]], None]) -> None:
        n = self.n
        self.G = [0] * n
        self.slope = [None] * n  # None = not started (unbounded previous slope)
        self.hist = [[] for _ in range(n)]
        self.p = {}
        self.on_leaf = on_leaf
        self._step(1)

    def _done(self, u: int) -> bool:
        """True when no further change or check can happen after time u-1."""
        prev = u - 1
        if prev % self.t:
            return False
        if self.level is not None:
            return prev == self.t * self.level
        if prev < self.u_nu:
            return False
        return all(s == 0 for s in self.slope)

    def _step(self, u: int) -> None:
        if self._done(u):
            self.on_leaf(self.hist, self.p, [g // self.t for g in self.G])
            return
        n, t = self.n, self.t
        choosers = []
        bounds = []
        for b in range(n):
            if (u - 1) % self.r[b]:
                continue
            k = (u - 1) // self.r[b] + 1
            prev = self.slope[b]
            R = self.cap[b] - self.G[b] // t
            hi = R if prev is None else min(prev, R)
            if self.fixed:
                lo = 1 if R > 0 else 0
            else:
                lo = 0
            if self.K[b] is not None:
                if k == self.K[b]:
                    if self.fixed:
                        lo = R
                    # in unrestricted-total level mode the rest is dropped
                elif k > self.K[b]:
                    lo = hi = 0
                    if self.fixed and R:
                        return
            if lo > hi:
                return
            choosers.append(b)
            bounds.append((lo, hi))
        checked = [a for a in range(n) if u % self.r[a] == 0]
        if self.level is not None and u > t * self.level:
            checked = []
        rows = self._rows(u, choosers, checked)
        self._assign(u, choosers, bounds, checked, rows, 0)

    def _rows(self, u, choosers, checked):
        """Linear necessary conditions A s <= rhs, one row per chooser.

        A chooser that is checked now gets its exact row. A long chooser at
        the start of a block gets a relaxed row for the end of the block,
        bounding every neighbour's growth over the block by its current slope.
        """
        t = self.t
        block_start = (u - 1) % t == 0
        chooser_set = set(choosers)
        mults, rhs = [], []
        for b in choosers:
            if b in checked:
                mult = 1
                bound = t * self.gamma(b, u // self.r[b])
                const = 0
                for c in range(self.n):
                    cbc = self.C[b][c]
                    if cbc:
                        g = self.G[c]
                        if c not in chooser_set:
                            g += self.tb[c] * (self.slope[c] or 0)
                        const += cbc * g
            elif block_start and self.r[b] == t and t > 1:
                mult = t
                bound = t * self.gamma(b, (u - 1) // t + 1)
                const = sum(self.C[b][c] * self.G[c] for c in range(self.n) if self.C[b][c])
            else:
                return None
            mults.append(mult)
            rhs.append(bound - const)
        A = [[mults[i] * self.C[b][c] * self.tb[c] for c in choosers] for i, b in enumerate(choosers)]
        return A, rhs, tuple(mults)

    def _inverse(self, A, idx, mults, choosers):
        key = (tuple(choosers[idx:]), mults[idx:])
        hit = self._inv_cache.get(key)
        if hit is None:
            sub = [[Fraction(A[i][j]) for j in range(idx, len(A))] for i in range(idx, len(A))]
            inv = _invert_fraction_matrix(sub)
            den = 1
            for row in inv:
                for x in row:
                    den = den * x.denominator // math.gcd(den, x.denominator)
            hit = ([[int(x * den) for x in row] for row in inv], den)
            self._inv_cache[key] = hit
        return hit

    def _assign(self, u, choosers, bounds, checked, rows, idx) -> None:
        if idx == len(choosers):
            self._advance(u, choosers, checked)
            return
        b = choosers[idx]
        lo, hi = bounds[idx]
        if rows is not None:
            A, rhs, mults = rows
            k = len(choosers)
            v = [rhs[i] - sum(A[i][j] * bounds[j][0] for j in range(idx, k)) for i in range(idx, k)]
            inv, den = self._inverse(A, idx, mults, choosers)
            xs = [sum(r * y for r, y in zip(row, v)) for row in inv]
            if any(x < 0 for x in xs):
                return
            hi = min(hi, lo + xs[0] // den)
        saved = self.slope[b]
        for s in range(lo, hi + 1):
            self.slope[b] = s
            self.hist[b].append(s)
            if rows is not None:
                for i in range(idx + 1, len(choosers)):
                    rhs[i] -= A[i][idx] * s
            self._assign(u, choosers, bounds, checked, rows, idx + 1)
            if rows is not None:
                for i in range(idx + 1, len(choosers)):
                    rhs[i] += A[i][idx] * s
            self.hist[b].pop()
        self.slope[b] = saved

    def _advance(self, u, choosers, checked) -> None:
        n, t = self.n, self.t
        G = self.G
        old = list(G)
        for b in range(n):
            s = self.slope[b]
            if s:
                G[b] += self.tb[b] * s
        ok = True
        recorded = []
        for a in checked:
            i = u // self.r[a]
            lhs = 0
            for b in range(n):
                cab = self.C[a][b]
                if cab:
                    lhs += cab * G[b]
            tp = t * self.gamma(a, i) - lhs
            if tp < 0:
                ok = False
                break
            self.p[(a, i)] = tp // t
            recorded.append((a, i))
        if ok:
            self._step(u + 1)
        for key in recorded:
            del self.p[key]
        G[:] = old


def _invert_fraction_matrix(mat):
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _config_from_slopes(hist: list[list[int]]) -> Config:
    out = []
    for slopes in hist:
        s = list(slopes) + [0]
        mb = [s[k] - s[k + 1] for k in range(len(slopes))]
        out.append(_trim(mb))
    return tuple(out)


def _contribution(spec: TensorSpec, m: Config, p: Mapping[tuple[int, int], int], brace: bool = False) -> tuple[int, LaurentPoly]:
    c2 = 0
    pairs = []
    for a, mb in enumerate(m):
        for i, v in enumerate(mb, 1):
            if v:
                pa = p[(a, i)]
                c2 += v * (pa + spec.gamma(a + 1, i))
                pairs.append((pa, v))
    assert c2 % 2 == 0
    c = -c2 // 2
    return c, _bracket_product(pairs, brace).shift(c)


def _level_window(spec: TensorSpec, m: Config) -> int:
    d = spec.data
    lv = spec.min_level()
    for a, mb in enumerate(m, 1):
        if mb:
            lv = max(lv, -(-len(mb) // d.ta(a)))
    return lv


def _ledger_row(spec: TensorSpec, m: Config, contrib: LaurentPoly) -> LedgerRow:
    d = spec.data
    lv = _level_window(spec, m)
    ms, ps = [], []
    for a in range(1, spec.rank + 1):
        w = d.ta(a) * lv
        mb = tuple(m[a - 1]) + (0,) * (w - len(m[a - 1]))
        ms.append(mb[:w])
        ps.append(tuple(vacancy(spec, m, a, i) for i in range(1, w + 1)))
    return LedgerRow(tuple(ms), tuple(ps), contrib, lv)


def fermionic_M(spec: TensorSpec, lam: Sequence[int] | None = None, ledger: bool = False, count_total: bool = False) -> FermionicResult:
    """M(W, lambda, q): sum over configurations with every vacancy number >= 0."""
    lam = tuple(lam) if lam is not None else (0,) * spec.rank
    N = target_sizes(spec, lam)
    total = None
    if count_total:
        total = sum(1 for _ in enumerate_configurations(spec, lam)) if N is not None else 0
    if N is None:
        return FermionicResult(LaurentPoly.zero(), 0, total)
    acc: dict[int, int] = {}
    rows: list[LedgerRow] = []
    count = 0

    def leaf(hist, p, Nfin):
        nonlocal count
        # vacancies past the last part equal (t_a alpha_a | lambda) = lambda_a
        if any(x < 0 for x in lam):
            return
        m = _config_from_slopes(hist)
        c, contrib = _contribution(spec, m, p)
        count += 1
        for e, v in contrib._c.items():
            acc[e] = acc.get(e, 0) + v
        if ledger:
            rows.append(_ledger_row(spec, m, contrib))

    _SlopeSearch(spec, N=N).run(leaf)
    value = LaurentPoly(acc)
    assert value.nonnegative() and (value.is_zero() or value.max_degree() <= 0)
    return FermionicResult(value, count, total, rows)


def fermionic_M_all(spec: TensorSpec) -> dict[tuple[int, ...], LaurentPoly]:
    """M(W, lambda, q) for every dominant lambda at once."""
    d = spec.data
    top = spec.weight()
    Nmax = [int(x) for x in map(math.floor, d.to_root_coords(top))]
    out: dict[tuple[int, ...], dict[int, int]] = {}

    def leaf(hist, p, Nfin):
        lam = tuple(top[b] - sum(d.cartan[b][a] * Nfin[a] for a in range(spec.rank)) for b in range(spec.rank))
        if any(x < 0 for x in lam):
            return
        m = _config_from_slopes(hist)
        _, contrib = _contribution(spec, m, p)
        acc = out.setdefault(lam, {})
        for e, v in contrib._c.items():
            acc[e] = acc.get(e, 0) + v

    _SlopeSearch(spec, Nmax=Nmax).run(leaf)
    res = {lam: LaurentPoly(c) for lam, c in out.items()}
    return {lam: v for lam, v in sorted(res.items()) if not v.is_zero()}


def fermionic_M_l(spec: TensorSpec, l: int, route: str = "search", ledger: bool = False) -> FermionicResult:
    """M_l(W, q). ``route`` is 'search' (sum over H_l) or 'eliminated' (sum over H-bar_l)."""
    if not spec.in_H(l):
        raise SpecError(f"spec {spec} is not supported inside H_{l}")
    if route == "eliminated":
        return _M_l_eliminated(spec, l)
    N = target_sizes(spec, None, level=l)
    if N is None:
        return FermionicResult(LaurentPoly.zero(), 0)
    acc: dict[int, int] = {}
    rows = []
    count = 0

    def leaf(hist, p, Nfin):
        nonlocal count
        m = _config_from_slopes(hist)
        _, contrib = _contribution(spec, m, p)
        count += 1
        for e, v in contrib._c.items():
            acc[e] = acc.get(e, 0) + v
        if ledger:
            rows.append(_ledger_row(spec, m, contrib))

    _SlopeSearch(spec, N=N, level=l).run(leaf)
    value = LaurentPoly(acc)
    assert value.nonnegative() and (value.is_zero() or value.max_degree() <= 0)
    return FermionicResult(value, count, None, rows)


def _M_l_eliminated(spec: TensorSpec, l: int) -> FermionicResult:
    d = spec.data
    n = spec.rank
    N = target_sizes(spec, None, level=l)
    if N is None:
        return FermionicResult(LaurentPoly.zero(), 0)
    per_color = []
    for a in range(n):
        top = d.ta(a + 1) * l
        opts = []
        for size in range(N[a], -1, -top):
            for part in partitions_bounded(size, top - 1):
                opts.append(_trim(part))
        per_color.append(opts)
    acc = LaurentPoly.zero()
    count = 0

    def rec(a, cur):
        nonlocal acc, count
        if a == n:
            m = tuple(cur)
            pairs = []
            for b in range(1, n + 1):
                mb = m[b - 1]
                for i in range(1, d.ta(b) * l):
                    p = vacancy_eliminated(spec, m, b, i, l)
                    assert p.denominator == 1
                    p = int(p)
                    if p < 0:
                        return
                    mi = mb[i - 1] if i <= len(mb) else 0
                    pairs.append((p, mi))
            c = cocharge_eliminated(spec, m, l)
            assert c.denominator == 1
            term = _bracket_product(pairs).shift(int(c))
            count += 1
            acc = acc + term
            return
        for opt in per_color[a]:
            cur.append(opt)
            rec(a + 1, cur)
            cur.pop()

    rec(0, [])
    return FermionicResult(acc, count)


def fermionic_M_bar_l(spec: TensorSpec, l: int, route: str = "search") -> LaurentPoly:
    """q^{|Lambda|^2 / 2l} M_l; the shift must be integral."""
    lam = spec.weight()
    sh = spec.data.pair_weights(lam, lam) / (2 * l)
    if sh.denominator != 1:
        raise SpecError(f"|Lambda|^2/2l = {sh} is not an integer")
    return fermionic_M_l(spec, l, route).value.shift(int(sh))


def brute_force_M(spec: TensorSpec, lam: Sequence[int] | None = None, level: int | None = None) -> LaurentPoly:
    """Direct sum over every configuration (oracle for the search)."""
    d = spec.data
    acc = LaurentPoly.zero()
    for m in enumerate_configurations(spec, lam, level):
        pairs = []
        ok = True
        for a in range(1, spec.rank + 1):
            top = d.ta(a) * level if level is not None else max(len(m[a - 1]), spec.max_index(a), 1) + 1
            for i in range(1, top + 1):
                p = vacancy(spec, m, a, i, level)
                if p < 0:
                    ok = False
                    break
                mi = m[a - 1][i - 1] if i <= len(m[a - 1]) else 0
                pairs.append((p, mi))
            if not ok:
                break
        if ok:
            acc = acc + _bracket_product(pairs).shift(cocharge(spec, m, level))
    return acc


# ---------------------------------------------------------------------------
# N_l


def infinite_level(spec: TensorSpec, lam: Sequence[int] | None) -> int | None:
    """A level l* beyond which N_l(W, lambda) no longer changes."""
    N = target_sizes(spec, lam)
    if N is None:
        return None
    d = spec.data
    need = spec.min_level()
    for a in range(spec.rank):
        need = max(need, -(-N[a] // d.ta(a + 1)))
    return need


def _N_terms(spec: TensorSpec, lam: Sequence[int], l: int) -> Iterator[tuple[Config, list[tuple[int, int]], int]]:
    n = spec.rank
    for m in enumerate_configurations(spec, lam, level=l):
        pairs = []
        for a in range(1, n + 1):
            mb = m[a - 1]
            last = len(mb)
            for i in range(1, last + 1):
                if mb[i - 1]:
                    pairs.append((vacancy(spec, m, a, i, l), mb[i - 1]))
        yield m, pairs, cocharge(spec, m, l)


def fermionic_N_l(spec: TensorSpec, lam: Sequence[int] | None = None, l: int | None = None) -> FermionicResult:
    """N_l(W, lambda, q); ``l=None`` means l = infinity."""
    lam = tuple(lam) if lam is not None else (0,) * spec.rank
    if l is None:
        l = infinite_level(spec, lam)
        if l is None:
            return FermionicResult(LaurentPoly.zero(), 0, 0)
    elif not spec.in_H(l):
        raise SpecError(f"spec {spec} is not supported inside H_{l}")
    acc = LaurentPoly.zero()
    total = 0
    for m, pairs, c in _N_terms(spec, lam, l):
        total += 1
        acc = acc + _bracket_product(pairs, brace=True).shift(c)
    return FermionicResult(acc, total, total)


def fermionic_N_at_one(spec: TensorSpec, lam: Sequence[int] | None = None, l: int | None = None) -> int:
    """N_l(W, lambda, 1) using integer binomials only."""
    lam = tuple(lam) if lam is not None else (0,) * spec.rank
    if l is None:
        l = infinite_level(spec, lam)
        if l is None:
            return 0
    total = 0
    for _, pairs, _ in _N_terms(spec, lam, l):
        term = 1
        for p, mm in pairs:
            term *= ext_binom_at_one(p, mm)
            if not term:
                break
        total += term
    return total


# ---------------------------------------------------------------------------
# level one reduction


def reduce_level_one(spec: TensorSpec) -> tuple[TensorSpec, int]:
    """Primed spec over Z_n such that M-bar_1(spec) = M-bar_t(primed spec)."""
    d = spec.data
    aid = spec.algebra
    if aid.simply_laced:
        raise SpecError("reduce_level_one needs a non-simply-laced algebra")
    if not spec.in_H(1):
        raise SpecError("spec must lie inside H_1")
    if target_sizes(spec, None, level=1) is None:
        raise SpecError("weight constraint at level 1 is not integral")
    nu = spec.nu
    n = aid.rank
    v = lambda a, j: Fraction(nu.get((a, j), 0))
    out: dict[tuple[int, int], Fraction] = {}
    f = aid.family
    if f == "B":
        out[(1, 1)] = v(n, 1)
        out[(1, 2)] = sum((a * v(a, 1) for a in range(1, n)), Fraction(0)) + Fraction(n - 1, 2) * v(n, 1) + n * v(n, 2)
    elif f == "C":
        extra = (sum((a * (v(a, 1) + 2 * v(a, 2)) for a in range(1, n)), Fraction(0)) + n * v(n, 1)) / 2
        for a in range(1, n):
            out[(a, 1)] = v(a, 1)
            out[(a, 2)] = v(a, 2) + (extra if a == n - 1 else 0)
    elif f == "F":
        for a in (1, 2):
            for j in (1, 2):
                out[(a, j)] = v(a + 2, j)
        out[(1, 2)] = 3 * v(1, 1) + 6 * v(2, 1) + 4 * v(3, 1) + 9 * v(3, 2) + 2 * v(4, 1) + 4 * v(4, 2)
    elif f == "G":
        out[(1, 1)] = v(2, 1)
        out[(1, 2)] = v(2, 2)
        out[(1, 3)] = 2 * v(1, 1) + v(2, 1) + 2 * v(2, 2)
    bad = {k: x for k, x in out.items() if x.denominator != 1}
    if bad:
        raise SpecError(f"primed multiplicities are fractional: {bad}")
    return TensorSpec.make(d.z_algebra, {k: int(x) for k, x in out.items()}), d.t


# ---------------------------------------------------------------------------
# critical configurations


def critical_configuration(aid, r: int, s: int, L: int | Fraction) -> dict[tuple[int, int], Fraction]:
    """The stationary configuration {m^{(a)}_{j,0}} for W = (W^{(r)}_s)^{L}."""
    d = algebra_data(aid)
    aid = d.id
    n = d.rank
    L = Fraction(L)
    tr = d.ta(r)
    m: dict[tuple[int, int], Fraction] = {}

    def add(a, j, val):
        # a delta at index 0 never fires
        if val and j != 0:
            if j < 0 or Fraction(j).denominator != 1:
                raise AssertionError(f"bad index {j}")
            key = (a, int(j))
            m[key] = m.get(key, Fraction(0)) + val

    if s % tr == 0:
        for a in range(1, n + 1):
            add(a, d.ta(a) * s // tr, L * d.Cinv(r, a))
        _check_critical(d, r, s, L, m)
        return m
    f = aid.family
    if f == "B":  # r = n, s odd
        for a in range(1, n):
            add(a, (s - 1) // 2, L * a / 2)
            add(a, (s + 1) // 2, L * a / 2)
        add(n, s - 1, L * (n - 1) / 4)
        add(n, s + 1, L * (n - 1) / 4)
        add(n, s, L / 2)
    elif f == "C":  # r < n, s odd
        for a in range(1, n + 1):
            ta = d.ta(a)
            w = L * a * r / (2 * n)
            add(a, Fraction(ta * (s - 1), 2), w)
            add(a, Fraction(ta * (s + 1), 2), w)
            add(a, Fraction(ta * s, 2), L * (min(a, r) - Fraction(a * r, n)))
    elif f == "F":  # r in {3, 4}, s not divisible by 2
        k1 = L / 3 * (2 * (r == 3) + (r == 4))
        k2 = L / 3 * ((r == 3) + 2 * (r == 4))
        for a in range(1, n + 1):
            ta = d.ta(a)
            # the weight is (Lambda_2 | Lambda_a) = C^-1_{2a}; C^-1_{a2} fails the equations
            add(a, Fraction(ta * (s - 1), 2), k1 * d.Cinv(2, a))
            add(a, Fraction(ta * (s + 1), 2), k1 * d.Cinv(2, a))
        add(3, s, k1)
        add(4, s, k2)
    elif f == "G":  # r = 2, s not divisible by 3
        _g2_critical(L, s, add)
    _check_critical(d, r, s, L, m)
    return m


def _g2_critical(L: Fraction, s: int, add) -> None:
    if s % 3 == 1:
        add(1, (s - 1) // 3, 2 * L)
        add(1, (s + 2) // 3, L)
        add(2, s - 1, L)
        add(2, s, L / 2)
        add(2, s + 2, L / 2)
    else:
        add(1, (s - 2) // 3, L)
        add(1, (s + 1) // 3, 2 * L)
        add(2, s - 2, L / 2)
        add(2, s, L / 2)
        add(2, s + 1, L)


def critical_residual(d: AlgebraData, r: int, s: int, L: Fraction, m: Mapping[tuple[int, int], Fraction], j: int, a: int) -> Fraction:
    """LHS - RHS of the stationarity equation at (a, j)."""
    lhs = Fraction(0)
    for (b, k), v in m.items():
        ab = d.bilinear_roots[a - 1][b - 1]
        if ab:
            lhs += ab * min(d.ta(b) * j, d.ta(a) * k) * v
    rhs = L * min(s, j) if a == r else Fraction(0)
    return lhs - rhs


def _check_critical(d: AlgebraData, r, s, L, m) -> None:
    top = max([k for (_, k) in m] + [s]) + 2
    for a in range(1, d.rank + 1):
        for j in range(1, top * d.t + 1):
            res = critical_residual(d, r, s, L, m, j, a)
            if res:
                raise AssertionError(f"critical configuration fails at (a={a}, j={j}): residual {res}")
    tot = [Fraction(0)] * d.rank
    for (a, k), v in m.items():
        tot[a - 1] += k * v
    # sum_j j m alpha_a = L s Lambda_r in root coordinates
    want = d.to_root_coords(tuple(L * s * (b == r) for b in range(1, d.rank + 1)))
    if tuple(tot) != tuple(want):
        raise AssertionError(f"weight identity fails: {tot} vs {want}")


def critical_integrality_modulus(aid, r: int, s: int) -> int:
    """Smallest L0 such that every multiple of L0 gives an integral critical configuration."""
    m = critical_configuration(aid, r, s, 1)
    den = 1
    for v in m.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    return den


# ---------------------------------------------------------------------------
# truncated stabilization check


@dataclass
class StabilizationReport:
    lhs: dict[int, list[int]]
    rhs: list[int]
    stable_from: int | None
    degree_cap: int

    @property
    def ok(self) -> bool:
        return self.stable_from is not None


def spinon_stabilization_check(aid, r: int, s: int, lam: Sequence[int], degree_cap: int, L_list: Sequence[int], zeta_bound: int | None = None) -> StabilizationReport:
    d = algebra_data(aid)
    tr = d.ta(r)
    if s % tr:
        raise AlgebraError("only s divisible by t_r is supported; the half and third integer limits are out of scope")
    lam = tuple(lam)
    lhs: dict[int, list[int]] = {}
    for L in L_list:
        if any((L * d.Cinv(r, a)).denominator != 1 for a in range(1, d.rank + 1)):
            raise AlgebraError(f"L = {L} violates the integrality of L C^-1_(r,a)")
        c0 = -Fraction(L * L * s) * d.Cinv(r, r) / 2
        assert c0.denominator == 1
        spec = TensorSpec.from_factors(d.id, [(r, s, L)])
        val = fermionic_M(spec, lam).value.shift(-int(c0))
        lhs[L] = TruncatedSeries.from_poly(val, degree_cap).as_list()
    rhs = _spinon_rhs(d, r, s, lam, degree_cap, zeta_bound)
    stable = None
    for L in sorted(lhs, reverse=True):
        if lhs[L] == rhs:
            stable = L
        else:
            break
    return StabilizationReport(lhs, rhs, stable, degree_cap)


def _spinon_rhs(d: AlgebraData, r: int, s: int, lam, D: int, zeta_bound: int | None) -> list[int]:
    import itertools

    level = s // d.ta(r)
    bound = zeta_bound if zeta_bound is not None else 2 * D + 2
    total = TruncatedSeries({}, D)
    for zeta in itertools.product(range(bound + 1), repeat=d.rank):
        rc = d.to_root_coords(zeta)
        if any(x.denominator != 1 for x in rc):
            continue
        spec = TensorSpec.from_factors(d.id, [(a + 1, 1, z) for a, z in enumerate(zeta) if z])
        # M_l needs the level-l weight constraint to be integral
        Mz = fermionic_M(spec, lam).value.invert()
        if Mz.is_zero():
            continue
        Ml = fermionic_M_l(spec, level).value.invert() if spec.nu_items else LaurentPoly.one()
        num = TruncatedSeries.from_poly(Mz * Ml, D)
        den = TruncatedSeries.from_poly(LaurentPoly.one(), D)
        for z in zeta:
            den = den * TruncatedSeries.from_poly(poch_q(z), D)
        total = total + num * den.reciprocal()
    return total.as_list()
