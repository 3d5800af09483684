"""Laurent polynomials in one variable q with exact integer coefficients, and q-binomials."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping


class LaurentPoly:
    """Sparse Laurent polynomial in q. Treated as immutable."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c: dict[int, int] = {int(e): int(v) for e, v in (coeffs or {}).items() if v}

    @classmethod
    def _raw(cls, d: dict[int, int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = d
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({0: 1})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        d = dict(self._c)
        for e, v in other._c.items():
            nv = d.get(e, 0) + v
            if nv:
                d[e] = nv
            else:
                d.pop(e, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, vb), = b.items()
            return LaurentPoly._raw({e + eb: v * vb for e, v in a.items()})
        d: dict[int, int] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                k = e1 + e2
                d[k] = d.get(k, 0) + v1 * v2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def invert(self) -> "LaurentPoly":
        """Substitute q -> 1/q."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def eval_at_one(self) -> int:
        return sum(self._c.values())

    def min_degree(self) -> int | None:
        return min(self._c) if self._c else None

    def max_degree(self) -> int | None:
        return max(self._c) if self._c else None

    def nonnegative(self) -> bool:
        return all(v > 0 for v in self._c.values())

    def to_json(self) -> dict[str, str]:
        return {str(e): str(v) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, "str | int"]) -> "LaurentPoly":
        return cls({int(e): int(v) for e, v in data.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def latex(self) -> str:
        if not self._c:
            return "0"
        out = ""
        for e, v in sorted(self._c.items()):
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{{{e}}}"
                body = mono if a == 1 else f"{a}{mono}"
            if not out:
                out = ("-" if v < 0 else "") + body
            else:
                out += (" - " if v < 0 else " + ") + body
        return out


def q_power(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e)


@lru_cache(maxsize=None)
def _gauss(n: int, k: int) -> LaurentPoly:
    if k < 0 or k > n:
        return LaurentPoly.zero()
    if k == 0 or k == n:
        return LaurentPoly.one()
    k = min(k, n - k)
    # q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    return _gauss(n - 1, k - 1) + _gauss(n - 1, k).shift(k)


def gaussian(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial [n choose k]_q."""
    return _gauss(n, k)


def qbinom_bracket(p: int, m: int) -> LaurentPoly:
    """[p+m choose m]_q for p >= 0, zero for p < 0."""
    if m < 0:
        raise ValueError("qbinom_bracket needs m >= 0")
    if p < 0:
        return LaurentPoly.zero()
    return _gauss(p + m, m)


def qbinom_brace(p: int, m: int) -> LaurentPoly:
    """The extended binomial that is allowed a negative top entry."""
    if m < 0:
        raise ValueError("qbinom_brace needs m >= 0")
    if m == 0:
        return LaurentPoly.one()
    if p >= 0:
        return _gauss(p + m, m)
    if p >= -m:
        return LaurentPoly.zero()
    sign = -1 if m % 2 else 1
    return _gauss(-p - 1, m).shift(m * p + m * (m + 1) // 2) * sign


@lru_cache(maxsize=None)
def poch_q(k: int) -> LaurentPoly:
    """(q)_k = prod_{j=1}^{k} (1 - q^j)."""
    if k < 0:
        raise ValueError("poch_q needs k >= 0")
    if k == 0:
        return LaurentPoly.one()
    return poch_q(k - 1) * LaurentPoly({0: 1, k: -1})


def poly_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    d: dict[int, int] = {}
    for p in polys:
        for e, v in p._c.items():
            d[e] = d.get(e, 0) + v
    return LaurentPoly(d)


class TruncatedSeries:
    """Laurent series in q known up to and including degree ``cap``."""

    __slots__ = ("coeffs", "cap")

    def __init__(self, coeffs: Mapping[int, int], cap: int):
        self.cap = cap
        self.coeffs = {e: v for e, v in coeffs.items() if v and e <= cap}

    @classmethod
    def from_poly(cls, f: LaurentPoly, cap: int) -> "TruncatedSeries":
        return cls(f.coeffs, cap)

    def _combine_cap(self, other: "TruncatedSeries") -> int:
        return min(self.cap, other.cap)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        d = dict(self.coeffs)
        for e, v in other.coeffs.items():
            d[e] = d.get(e, 0) + v
        return TruncatedSeries(d, self._combine_cap(other))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not self.coeffs or not other.coeffs:
            return TruncatedSeries({}, self._combine_cap(other))
        # precision of a product is limited by the other factor's lowest term
        cap = min(self.cap, other.cap, self.cap + min(other.coeffs), other.cap + min(self.coeffs))
        d: dict[int, int] = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                if e1 + e2 <= cap:
                    d[e1 + e2] = d.get(e1 + e2, 0) + v1 * v2
        return TruncatedSeries(d, cap)

    def reciprocal(self) -> "TruncatedSeries":
        """1/f for f with constant term 1 and no negative powers."""
        if self.coeffs.get(0) != 1 or min(self.coeffs) < 0:
            raise ValueError("reciprocal needs a power series with constant term 1")
        out = {0: 1}
        for n in range(1, self.cap + 1):
            s = -sum(self.coeffs.get(k, 0) * out.get(n - k, 0) for k in range(1, n + 1))
            if s:
                out[n] = s
        return TruncatedSeries(out, self.cap)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and self.cap == other.cap and self.coeffs == other.coeffs

    def as_list(self, low: int = 0) -> list[int]:
        return [self.coeffs.get(e, 0) for e in range(low, self.cap + 1)]

    def __repr__(self) -> str:
        return f"TruncatedSeries({dict(sorted(self.coeffs.items()))}, cap={self.cap})"


def truncate(f: LaurentPoly, cap: int) -> TruncatedSeries:
    return TruncatedSeries.from_poly(f, cap)
