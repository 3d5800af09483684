"""Characters of finite dimensional simple modules and Q-system solutions.

Two representations are used:

* ``CharacterPoly``: a Laurent polynomial in ``x_a = e^{Lambda_a}``, keyed by
  exponent vectors in fundamental-weight coordinates.
* ``RepElement``: a virtual character written in the basis ``ch V(lambda)``.
  Products are computed with the Brauer-Klimyk rule, which keeps the Q-system
  checks cheap even when the characters have many monomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Mapping, Sequence

from .root_data import AlgebraData, AlgebraError, AlgebraId, DEFAULT_WEYL_BOUND, algebra_data

Weight = tuple[int, ...]


class CharacterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Laurent polynomials in x_1..x_n


class CharacterPoly:
    __slots__ = ("aid", "terms")

    def __init__(self, aid, terms: Mapping[Weight, int] | None = None):
        self.aid = AlgebraId.parse(aid)
        self.terms: dict[Weight, int] = {tuple(k): int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, aid, weight: Sequence[int], coeff: int = 1) -> "CharacterPoly":
        return cls(aid, {tuple(weight): coeff})

    def _check(self, other: "CharacterPoly") -> None:
        if other.aid != self.aid:
            raise CharacterError("characters of different algebras")

    def __add__(self, other: "CharacterPoly") -> "CharacterPoly":
        self._check(other)
        d = dict(self.terms)
        for k, v in other.terms.items():
            d[k] = d.get(k, 0) + v
        return CharacterPoly(self.aid, d)

    def __neg__(self) -> "CharacterPoly":
        return CharacterPoly(self.aid, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "CharacterPoly") -> "CharacterPoly":
        return self + (-other)

    def __mul__(self, other) -> "CharacterPoly":
        if isinstance(other, int):
            return CharacterPoly(self.aid, {k: v * other for k, v in self.terms.items()})
        self._check(other)
        d: dict[Weight, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                d[k] = d.get(k, 0) + v1 * v2
        return CharacterPoly(self.aid, d)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, CharacterPoly) and self.aid == other.aid and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.aid, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def eval_at_one(self) -> int:
        return sum(self.terms.values())

    def reflect(self, a: int) -> "CharacterPoly":
        """Apply the simple reflection s_a to every exponent."""
        d = algebra_data(self.aid)
        return CharacterPoly(self.aid, {d.reflect(a, k): v for k, v in self.terms.items()})

    def is_weyl_invariant(self) -> bool:
        return all(self.reflect(a) == self for a in range(1, self.aid.rank + 1))

    def dominant_part(self) -> dict[Weight, int]:
        return {k: v for k, v in self.terms.items() if all(x >= 0 for x in k)}

    def evaluate(self, logs: Sequence[float]) -> float:
        return sum(v * math.exp(sum(e * l for e, l in zip(k, logs))) for k, v in self.terms.items())

    def to_json(self) -> dict[str, str]:
        return {",".join(map(str, k)): str(v) for k, v in sorted(self.terms.items())}

    def __repr__(self) -> str:
        return f"CharacterPoly({self.aid}, {dict(sorted(self.terms.items()))})"


# ---------------------------------------------------------------------------
# weight multiplicities


def _height(d: AlgebraData, weight: Sequence[int]) -> Fraction:
    return sum(d.to_root_coords(weight), Fraction(0))


def _positive_roots_fund(d: AlgebraData) -> list[Weight]:
    n = d.rank
    return [tuple(sum(d.cartan[b][a] * beta[a] for a in range(n)) for b in range(n)) for beta in d.positive_roots()]


@lru_cache(maxsize=None)
def dominant_weights(aid: AlgebraId, lam: Weight) -> tuple[Weight, ...]:
    """Dominant weights of V(lam), sorted by decreasing height."""
    d = algebra_data(aid)
    roots = _positive_roots_fund(d)
    seen = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for beta in roots:
            nu = tuple(x - y for x, y in zip(mu, beta))
            if all(x >= 0 for x in nu) and nu not in seen:
                seen.add(nu)
                stack.append(nu)
    return tuple(sorted(seen, key=lambda w: (-_height(d, w), w)))


@lru_cache(maxsize=None)
def dominant_multiplicities(aid: AlgebraId, lam: Weight) -> dict[Weight, int]:
    """Freudenthal's formula on the dominant chamber."""
    d = algebra_data(aid)
    if any(x < 0 for x in lam):
        raise CharacterError(f"{lam} is not dominant")
    roots = _positive_roots_fund(d)
    rho = d.rho()
    lr = tuple(x + 1 for x in lam)
    norm_top = d.pair_weights(lr, lr)
    mult: dict[Weight, int] = {}
    for mu in dominant_weights(aid, lam):
        if mu == lam:
            mult[mu] = 1
            continue
        acc = Fraction(0)
        for beta in roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, beta))
                dom, _ = d.to_dominant(nu)
                m = mult.get(dom, 0)
                if not m:
                    break
                acc += m * d.pair_weights(nu, beta)
                k += 1
        mr = tuple(x + y for x, y in zip(mu, rho))
        val = 2 * acc / (norm_top - d.pair_weights(mr, mr))
        assert val.denominator == 1
        if val:
            mult[mu] = int(val)
    return mult


@lru_cache(maxsize=None)
def all_weights(aid: AlgebraId, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    d = algebra_data(aid)
    out = []
    for mu, m in dominant_multiplicities(aid, lam).items():
        for nu in d.orbit(mu):
            out.append((nu, m))
    return tuple(sorted(out))


def weyl_character(aid, lam: Sequence[int], method: str = "division", bound: int = DEFAULT_WEYL_BOUND) -> CharacterPoly:
    """ch V(lam).

    ``method="division"`` divides the alternating orbit sum by the Weyl
    denominator; ``method="freudenthal"`` expands dominant multiplicities
    over Weyl orbits and is much faster for large groups.
    """
    aid = AlgebraId.parse(aid)
    lam = tuple(lam)
    if any(x < 0 for x in lam) or len(lam) != aid.rank:
        raise CharacterError(f"{lam} is not a dominant weight of {aid}")
    d = algebra_data(aid)
    if method == "freudenthal":
        return CharacterPoly(aid, dict(all_weights(aid, lam)))
    if method != "division":
        raise CharacterError(f"unknown method {method!r}")
    if d.weyl_order() > bound:
        raise CharacterError(f"Weyl group of {aid} exceeds the bound {bound}")
    return weyl_character_by_division(aid, lam)


def _divide_by_root_factor(f: dict[Weight, int], alpha: Weight) -> dict[Weight, int]:
    """Exact quotient f / (1 - e^{-alpha})."""
    c = next(i for i, v in enumerate(alpha) if v > 0)
    strings: dict[Weight, list[tuple[int, int]]] = {}
    for w, v in f.items():
        k = w[c] // alpha[c]
        base = tuple(x - k * y for x, y in zip(w, alpha))
        strings.setdefault(base, []).append((k, v))
    out: dict[Weight, int] = {}
    for base, entries in strings.items():
        entries.sort(reverse=True)
        run = 0
        pos = entries[0][0]
        lookup = dict(entries)
        low = entries[-1][0]
        while pos >= low:
            run += lookup.get(pos, 0)
            if run:
                out[tuple(x + pos * y for x, y in zip(base, alpha))] = run
            pos -= 1
        if run:
            raise CharacterError("polynomial is not divisible by the root factor")
    return out


def weyl_character_by_division(aid, lam: Sequence[int]) -> CharacterPoly:
    """Alternating orbit sum divided by e^rho prod_{alpha > 0} (1 - e^{-alpha})."""
    aid = AlgebraId.parse(aid)
    d = algebra_data(aid)
    lr = tuple(x + 1 for x in lam)
    num: dict[Weight, int] = {}
    for word, sign in d.weyl_elements():
        w = d.apply_word(word, lr)
        num[w] = num.get(w, 0) + sign
    f = {tuple(x - 1 for x in w): v for w, v in num.items() if v}
    for alpha in _positive_roots_fund(d):
        f = _divide_by_root_factor(f, alpha)
    return CharacterPoly(aid, f)


def dimension(aid, lam: Sequence[int]) -> int:
    return algebra_data(aid).dimension(tuple(lam))


# ---------------------------------------------------------------------------
# virtual characters in the irreducible basis


class RepElement:
    """Finite Z-linear combination of ch V(lambda) over dominant lambda."""

    __slots__ = ("aid", "terms")

    def __init__(self, aid, terms: Mapping[Weight, int] | None = None):
        self.aid = AlgebraId.parse(aid)
        self.terms: dict[Weight, int] = {tuple(k): int(v) for k, v in (terms or {}).items() if v}
        for k in self.terms:
            if any(x < 0 for x in k) or len(k) != self.aid.rank:
                raise CharacterError(f"{k} is not a dominant weight of {self.aid}")

    @classmethod
    def irreducible(cls, aid, lam: Sequence[int]) -> "RepElement":
        return cls(aid, {tuple(lam): 1})

    @classmethod
    def one(cls, aid) -> "RepElement":
        aid = AlgebraId.parse(aid)
        return cls(aid, {(0,) * aid.rank: 1})

    @classmethod
    def zero(cls, aid) -> "RepElement":
        return cls(aid, {})

    def _check(self, other: "RepElement") -> None:
        if other.aid != self.aid:
            raise CharacterError("characters of different algebras")

    def __add__(self, other: "RepElement") -> "RepElement":
        self._check(other)
        d = dict(self.terms)
        for k, v in other.terms.items():
            d[k] = d.get(k, 0) + v
        return RepElement(self.aid, d)

    def __neg__(self) -> "RepElement":
        return RepElement(self.aid, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "RepElement") -> "RepElement":
        return self + (-other)

    def __mul__(self, other) -> "RepElement":
        if isinstance(other, int):
            return RepElement(self.aid, {k: v * other for k, v in self.terms.items()})
        self._check(other)
        d: dict[Weight, int] = {}
        for l1, v1 in self.terms.items():
            for l2, v2 in other.terms.items():
                for mu, c in tensor_irreducibles(self.aid, l1, l2).items():
                    d[mu] = d.get(mu, 0) + v1 * v2 * c
        return RepElement(self.aid, d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RepElement":
        out = RepElement.one(self.aid)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, RepElement) and self.aid == other.aid and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.aid, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def dimension(self) -> int:
        d = algebra_data(self.aid)
        return sum(v * d.dimension(k) for k, v in self.terms.items())

    def to_character(self) -> CharacterPoly:
        out: dict[Weight, int] = {}
        for lam, v in self.terms.items():
            for nu, m in all_weights(self.aid, lam):
                out[nu] = out.get(nu, 0) + v * m
        return CharacterPoly(self.aid, out)

    def evaluate(self, logs: Sequence[float]) -> float:
        total = 0.0
        for lam, v in self.terms.items():
            for nu, m in all_weights(self.aid, lam):
                total += v * m * math.exp(sum(e * l for e, l in zip(nu, logs)))
        return total

    def to_json(self) -> list[dict]:
        d = algebra_data(self.aid)
        rows = sorted(self.terms.items(), key=lambda kv: (-_height(d, kv[0]), kv[0]))
        return [{"lambda": list(k), "mult": v} for k, v in rows]

    def __repr__(self) -> str:
        return f"RepElement({self.aid}, {dict(sorted(self.terms.items()))})"


@lru_cache(maxsize=None)
def _tensor_cached(aid: AlgebraId, l1: Weight, l2: Weight) -> tuple[tuple[Weight, int], ...]:
    d = algebra_data(aid)
    # iterate over the weights of the factor with fewer weights
    if len(all_weights(aid, l1)) < len(all_weights(aid, l2)):
        l1, l2 = l2, l1
    out: dict[Weight, int] = {}
    for nu, m in all_weights(aid, l2):
        v = tuple(a + b + 1 for a, b in zip(l1, nu))
        dom, sign = d.to_dominant(v)
        if any(x == 0 for x in dom):
            continue
        mu = tuple(x - 1 for x in dom)
        out[mu] = out.get(mu, 0) + sign * m
    return tuple(sorted((k, v) for k, v in out.items() if v))


def tensor_irreducibles(aid, l1: Sequence[int], l2: Sequence[int]) -> dict[Weight, int]:
    """V(l1) x V(l2) decomposed with the Brauer-Klimyk rule."""
    aid = AlgebraId.parse(aid)
    a, b = tuple(l1), tuple(l2)
    if a > b:
        a, b = b, a
    return dict(_tensor_cached(aid, a, b))


def decompose(f: CharacterPoly, allow_virtual: bool = False) -> RepElement:
    """Irreducible decomposition by peeling off the highest dominant term.

    The highest term is the one of largest height; ties are broken by the
    lexicographically largest weight.
    """
    d = algebra_data(f.aid)
    rest = f.dominant_part()
    out: dict[Weight, int] = {}
    while rest:
        lam = max(rest, key=lambda w: (_height(d, w), w))
        c = rest[lam]
        if c < 0 and not allow_virtual:
            raise CharacterError(f"negative multiplicity {c} at {lam}: not a character")
        out[lam] = c
        for mu, m in dominant_multiplicities(f.aid, lam).items():
            v = rest.get(mu, 0) - c * m
            if v:
                rest[mu] = v
            else:
                rest.pop(mu, None)
    return RepElement(f.aid, out)


# ---------------------------------------------------------------------------
# domino-sum solutions of the Q-system


def _weight(n: int, ks: Mapping[int, int]) -> Weight:
    lam = [0] * n
    for a, k in ks.items():
        if a >= 1:
            lam[a - 1] += k
    return tuple(lam)


@lru_cache(maxsize=None)
def _chi_terms(aid: AlgebraId, a: int, j: int) -> tuple[Weight, ...]:
    n = aid.rank
    fam = aid.family
    d = algebra_data(aid)
    if j == 0:
        return ((0,) * n,)
    if fam == "A" or (fam == "C" and a == n) or (fam == "D" and a >= n - 1):
        return (_weight(n, {a: j}),)
    out = []
    if fam == "C":
        for ks in product(range(j + 1), repeat=a):
            if sum(ks) <= j and all((k - (j if b == a else 0)) % 2 == 0 for b, k in enumerate(ks, 1)):
                out.append(_weight(n, dict(enumerate(ks, 1))))
        return tuple(sorted(out))
    nodes = list(range(a % 2, a + 1, 2))
    ta = d.ta(a)
    for ka in range(j % ta, j + 1, ta):
        rest = (j - ka) // ta
        for ks in product(range(rest + 1), repeat=len(nodes) - 1):
            if sum(ks) == rest:
                out.append(_weight(n, dict(zip(nodes, ks + (ka,)))))
    return tuple(sorted(set(out)))


def chi_Q(aid, a: int, j: int) -> RepElement:
    """The domino-sum character chi^(a)_j for A, B, C, D (chi^(a)_0 = 1)."""
    aid = AlgebraId.parse(aid)
    if aid.family not in "ABCD":
        raise CharacterError(f"no closed Q-system solution for {aid}; supply a provider instead")
    if not 1 <= a <= aid.rank:
        raise CharacterError(f"node {a} out of range")
    if j < 0:
        raise CharacterError("chi_Q needs j >= 0")
    return RepElement(aid, {lam: 1 for lam in _chi_terms(aid, a, j)})


Provider = Callable[[int, int], RepElement]


def chi_provider(aid) -> Provider:
    aid = AlgebraId.parse(aid)
    return lambda a, j: chi_Q(aid, a, j)


def _Q(provider: Provider, aid: AlgebraId, a: int, j: int) -> RepElement:
    if not 1 <= a <= aid.rank or j == 0:
        return RepElement.one(aid)
    if j < 0:
        raise CharacterError("negative index in the Q-system")
    return provider(a, j)


def qsystem_rhs_generic(aid, a: int, j: int, provider: Provider) -> RepElement:
    """Q_{j+1} Q_{j-1} + prod_{b~a} prod_{k=0}^{-C_ab-1} Q^(b)_{[(C_ba j - k)/C_ab]}."""
    aid = AlgebraId.parse(aid)
    d = algebra_data(aid)
    out = _Q(provider, aid, a, j + 1) * _Q(provider, aid, a, j - 1)
    prod_term = RepElement.one(aid)
    for b in d.neighbours(a):
        cab, cba = d.C(a, b), d.C(b, a)
        for k in range(-cab):
            prod_term = prod_term * _Q(provider, aid, b, (cba * j - k) // cab)
    return out + prod_term


def qsystem_rhs_explicit(aid, a: int, j: int, provider: Provider) -> RepElement:
    """The family-by-family forms with parity split (non simply laced)."""
    aid = AlgebraId.parse(aid)
    n, fam = aid.rank, aid.family
    Q = lambda b, k: _Q(provider, aid, b, k)  # noqa: E731
    base = Q(a, j + 1) * Q(a, j - 1)
    if fam in "ADE":
        d = algebra_data(aid)
        term = RepElement.one(aid)
        for b in d.neighbours(a):
            term = term * Q(b, j)
        return base + term
    if fam == "B":
        if a <= n - 2:
            return base + Q(a - 1, j) * Q(a + 1, j)
        if a == n - 1:
            return base + Q(n - 2, j) * Q(n, 2 * j)
        h = j // 2
        if j % 2 == 0:
            return base + Q(n - 1, h) ** 2
        return base + Q(n - 1, h) * Q(n - 1, h + 1)
    if fam == "C":
        if a <= n - 2:
            return base + Q(a - 1, j) * Q(a + 1, j)
        if a == n - 1:
            h = j // 2
            if j % 2 == 0:
                return base + Q(n - 2, j) * Q(n, h) ** 2
            return base + Q(n - 2, j) * Q(n, h) * Q(n, h + 1)
        return base + Q(n - 1, 2 * j)
    if fam == "F":
        if a == 1:
            return base + Q(2, j)
        if a == 2:
            return base + Q(1, j) * Q(3, 2 * j)
        if a == 3:
            h = j // 2
            if j % 2 == 0:
                return base + Q(2, h) ** 2 * Q(4, j)
            return base + Q(2, h) * Q(2, h + 1) * Q(4, j)
        return base + Q(3, j)
    if fam == "G":
        if a == 1:
            return base + Q(2, 3 * j)
        h, r = divmod(j, 3)
        if r == 0:
            return base + Q(1, h) ** 3
        if r == 1:
            return base + Q(1, h) ** 2 * Q(1, h + 1)
        return base + Q(1, h) * Q(1, h + 1) ** 2
    raise AlgebraError(f"unknown family {fam}")


def qsystem_residual(aid, a: int, j: int, provider: Provider | None = None) -> RepElement:
    """LHS - RHS of the Q-system at (a, j); zero means the equation holds."""
    aid = AlgebraId.parse(aid)
    if j < 1:
        raise CharacterError("the Q-system is stated for j >= 1")
    provider = provider or chi_provider(aid)
    lhs = _Q(provider, aid, a, j) ** 2
    return lhs - qsystem_rhs_explicit(aid, a, j, provider)


# ---------------------------------------------------------------------------
# determinant formulas for B_n


def _det(mat: list[list[RepElement]], aid: AlgebraId) -> RepElement:
    size = len(mat)
    out = RepElement.zero(aid)
    for perm in permutations(range(size)):
        sign = 1
        for i in range(size):
            for k in range(i + 1, size):
                if perm[i] > perm[k]:
                    sign = -sign
        term = RepElement.one(aid)
        for i in range(size):
            term = term * mat[i][perm[i]]
            if term.is_zero():
                break
        out = out + term * sign
    return out


def jacobi_trudi_Q(aid, partition: Sequence[int], provider: Provider | None = None) -> RepElement:
    """Q(lambda) = det(Q^(1)_{lambda_i - i + j}) with Q^(1)_k = 0 for k < 0."""
    aid = AlgebraId.parse(aid)
    provider = provider or chi_provider(aid)
    parts = [p for p in partition if p > 0]
    if not parts:
        return RepElement.one(aid)

    def entry(k: int) -> RepElement:
        if k < 0:
            return RepElement.zero(aid)
        return _Q(provider, aid, 1, k)

    size = len(parts)
    mat = [[entry(parts[i] - i + j) for j in range(size)] for i in range(size)]
    return _det(mat, aid)


def determinant_identities_check(aid, a: int, j: int) -> tuple[bool, bool]:
    """Check both determinant identities for B_n at (a, j).

    Returns (Q^(a)_{t_a j} == Q((j^a)),
    Q^(n)_{2j+1} == Q^(n)_1 sum_k (-1)^{j-k} Q((j^{n-1}, k))).
    The alternating sum must end with a plus sign on k = j.
    """
    aid = AlgebraId.parse(aid)
    if aid.family != "B":
        raise CharacterError("the determinant identities are stated for B_n")
    n = aid.rank
    d = algebra_data(aid)
    first = chi_Q(aid, a, d.ta(a) * j) == jacobi_trudi_Q(aid, [j] * a)
    alt = RepElement.zero(aid)
    for k in range(j + 1):
        alt = alt + jacobi_trudi_Q(aid, [j] * (n - 1) + [k]) * (-1) ** (j - k)
    second = chi_Q(aid, n, 2 * j + 1) == chi_Q(aid, n, 1) * alt
    return first, second


# ---------------------------------------------------------------------------
# asymptotics


@dataclass
class RatioReport:
    errors: list[float] = field(default_factory=list)
    degenerate: bool = False
    warning: str = ""

    @property
    def decreasing(self) -> bool:
        return all(b <= a for a, b in zip(self.errors, self.errors[1:]))


def default_sample(aid, y: float = 2.0) -> list[float]:
    """log x_a = y (Lambda_a | rho)."""
    d = algebra_data(aid)
    n = d.rank
    return [y * float(d.pair_weights([int(b == a) for b in range(n)], d.rho())) for a in range(n)]


def asymptotic_ratio_check(aid, a: int, j_max: int, logs: Sequence[float] | None = None, provider: Provider | None = None) -> RatioReport:
    """|chi_j / chi_{j+1} * x_a - 1| for j = 1..j_max at a sample point."""
    aid = AlgebraId.parse(aid)
    d = algebra_data(aid)
    logs = list(logs) if logs is not None else default_sample(aid)
    report = RatioReport()
    for b in range(1, d.rank + 1):
        # log |e^{alpha_b}| = sum_c C_cb log x_c
        if sum(d.cartan[c][b - 1] * logs[c] for c in range(d.rank)) <= 0:
            report.warning = "sample point lies outside |e^alpha| > 1"
    provider = provider or chi_provider(aid)
    vals = [_Q(provider, aid, a, j).evaluate(logs) for j in range(1, j_max + 2)]
    if len(set(vals)) == 1:
        report.degenerate = True
    xa = math.exp(logs[a - 1])
    for j in range(j_max):
        report.errors.append(abs(vals[j] / vals[j + 1] * xa - 1))
    return report
