"""Classically restricted and level restricted one dimensional sums."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .crystals import (
    CrystalError,
    CrystalId,
    Element,
    Path,
    Tensor,
    combinatorial_R,
    kr_crystal,
)
from .qseries import LaurentPoly


@dataclass(frozen=True)
class PathSumSpec:
    """B^{r_1,s_1} x ... x B^{r_L,s_L} with a reference crystal B_0 and element b_0.

    ``b0_crystal`` defaults to the factor of largest level (first one on ties);
    ``b0`` defaults to the unique element of that crystal with phi = k Lambda_0.
    """

    factors: tuple[CrystalId, ...]
    b0_crystal: Optional[CrystalId] = None
    b0: Optional[Element] = None

    def __post_init__(self) -> None:
        if not self.factors:
            raise CrystalError("a path sum needs at least one factor")

    @property
    def reference(self) -> CrystalId:
        if self.b0_crystal is not None:
            return self.b0_crystal
        levels = [kr_crystal(c).level() for c in self.factors]
        return self.factors[levels.index(max(levels))]

    @property
    def ground(self) -> Element:
        if self.b0 is not None:
            if self.b0 not in kr_crystal(self.reference):
                raise CrystalError(f"{self.b0} is not an element of {self.reference}")
            return self.b0
        return kr_crystal(self.reference).ground_element()


@dataclass
class OneDSumResult:
    value: LaurentPoly
    count: int
    ledger: list[tuple[Path, int, int]] = field(default_factory=list)


def corner_elements(ids: Sequence[CrystalId], path: Sequence[Element]) -> list[list[Element]]:
    """b^{(i)}_j for 0 <= i <= j < len(path): b_j carried left across b_{j-1}, ..., b_i."""
    L = len(path)
    corner = [[None] * L for _ in range(L)]
    for j in range(L):
        cur = path[j]
        corner[j][j] = cur
        for i in range(j - 1, -1, -1):
            cur, _ = combinatorial_R(ids[i], ids[j])(path[i], cur)
            corner[i][j] = cur
    return corner


def path_energy(ids: Sequence[CrystalId], path: Sequence[Element]) -> int:
    """sum_{0 <= i < j} H(b_i x b^{(i+1)}_j) with position 0 holding b_0."""
    corner = corner_elements(ids, path)
    total = 0
    for j in range(1, len(path)):
        for i in range(j):
            total += combinatorial_R(ids[i], ids[j]).H(path[i], corner[i + 1][j])
    return total


def homogeneous_energy(cid: CrystalId, path: Sequence[Element]) -> int:
    """sum_{j=0}^{L-1} (L - j) H(b_j x b_{j+1}) for a homogeneous path with b_0 in front."""
    R = combinatorial_R(cid, cid)
    L = len(path) - 1
    return sum((L - j) * R.H(path[j], path[j + 1]) for j in range(L))


def normalization_c(spec: PathSumSpec) -> int:
    ids = (spec.reference,) + spec.factors
    hw = (spec.ground,) + tuple(kr_crystal(c).highest() for c in spec.factors)
    return path_energy(ids, hw)


def one_d_sum(
    spec: PathSumSpec,
    lam: Sequence[int] | None = None,
    level: int | None = None,
    ledger: bool = False,
    relative: bool = False,
) -> OneDSumResult:
    """X (or X_l when ``level`` is given) as a Laurent polynomial in q.

    With ``relative`` the normalization constant is subtracted, so the result is
    directly comparable with the fermionic form M.
    """
    T = Tensor(spec.factors)
    n = T.n
    lam = tuple(lam) if lam is not None else (0,) * n
    ids = (spec.reference,) + spec.factors
    b0 = spec.ground
    shift = normalization_c(spec) if relative else 0
    acc: dict[int, int] = {}
    rows = []
    count = 0
    for p in T.highest_paths(lam, level):
        E = path_energy(ids, (b0,) + p) - shift
        acc[E] = acc.get(E, 0) + 1
        count += 1
        if ledger:
            rows.append((p, -E, T.epsilon(0, p)))
    return OneDSumResult(LaurentPoly(acc), count, rows)


def ledger_csv(spec: PathSumSpec, rows) -> str:
    T = Tensor(spec.factors)
    lines = ["path,minus_E,eps0"]
    for p, mE, e0 in rows:
        lines.append(f"{T.render(p)},{mE},{e0}")
    return "\n".join(lines) + "\n"
