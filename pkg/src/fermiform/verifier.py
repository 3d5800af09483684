"""Checks that tie the fermionic, crystal and character sides together.

Every check returns a ``CheckReport``.  Checks of proved identities report
``proved-identity-pass``; checks of conjectured identities report
``conjecture-evidence-pass``.  A failing report always carries a witness.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from . import golden
from .characters import (
    Provider,
    RepElement,
    chi_provider,
    dominant_weights,
    qsystem_residual,
)
from .closed_forms import classical_decomposition, conjectured_decomposition, exceptional_table
from .crystals import CrystalId, combinatorial_R, parse_crystal_list
from .fermionic import (
    TensorSpec,
    fermionic_M,
    fermionic_M_all,
    fermionic_M_l,
    fermionic_N_at_one,
    fermionic_N_l,
)
from .fixtures import EXCEPTIONAL_TABLES
from .onedsum import PathSumSpec, normalization_c, one_d_sum
from .qseries import LaurentPoly
from .root_data import AlgebraId, algebra_data

PROVED = "proved-identity-pass"
EVIDENCE = "conjecture-evidence-pass"
FAIL = "fail"
OUT_OF_SCOPE = "out-of-scope"


class VerifierError(ValueError):
    """A check was asked for outside its hypotheses."""


@dataclass
class CheckReport:
    check: str
    instance: str
    status: str
    theorem: bool = True
    witness: dict[str, Any] | None = None
    note: str = ""
    seconds: float = 0.0

    def __post_init__(self) -> None:
        if self.status == FAIL and not self.witness:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.status in (PROVED, EVIDENCE, OUT_OF_SCOPE)

    def to_json(self) -> dict[str, Any]:
        out = {
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "kind": "theorem" if self.theorem else "conjecture",
        }
        if self.witness:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


def _poly_witness(lhs: LaurentPoly, rhs: LaurentPoly) -> dict[str, Any]:
    return {"lhs": str(lhs), "rhs": str(rhs), "difference": str(lhs - rhs)}


def _compare(check: str, instance: str, lhs, rhs, theorem: bool, note: str = "") -> CheckReport:
    if lhs == rhs:
        return CheckReport(check, instance, PROVED if theorem else EVIDENCE, theorem, note=note)
    if isinstance(lhs, LaurentPoly):
        witness = _poly_witness(lhs, rhs)
    else:
        witness = {"lhs": repr(lhs), "rhs": repr(rhs)}
    return CheckReport(check, instance, FAIL, theorem, witness, note)


# ---------------------------------------------------------------------------
# recursion


def recursion_specs(spec: TensorSpec, a0: int, j0: int) -> tuple[TensorSpec, TensorSpec, TensorSpec, int]:
    """(W1, W2, W3, theta) for the three-term recursion at (a0, j0)."""
    d = spec.data
    if not 1 <= a0 <= spec.rank or j0 < 1:
        raise VerifierError(f"need 1 <= a0 <= {spec.rank} and j0 >= 1")
    W1 = spec.tensor(TensorSpec.make(spec.algebra, {(a0, j0): 2}))
    W2 = spec.tensor(TensorSpec.from_factors(spec.algebra, [(a0, j0 + 1), (a0, j0 - 1)]))
    extra = []
    for b in d.neighbours(a0):
        cab, cba = d.C(a0, b), d.C(b, a0)
        for k in range(-cab):
            extra.append((b, (cba * j0 - k) // cab))
    W3 = spec.tensor(TensorSpec.from_factors(spec.algebra, extra))
    theta = j0 + spec.gamma(a0, j0)
    return W1, W2, W3, theta


def check_recursion(spec: TensorSpec, a0: int, j0: int, lam: Sequence[int] | None = None, mode: str = "M", l: int | None = None) -> CheckReport:
    lam = tuple(lam) if lam is not None else (0,) * spec.rank
    W1, W2, W3, theta = recursion_specs(spec, a0, j0)
    if mode in ("M_l", "N_l"):
        if l is None:
            raise VerifierError(f"mode {mode} needs a level")
        if not all(W.in_H(l) for W in (W1, W2, W3)):
            raise VerifierError(f"W1, W2, W3 are not all inside H_{l}")
    if mode == "M":
        f = lambda W: fermionic_M(W, lam).value  # noqa: E731
    elif mode == "M_l":
        f = lambda W: fermionic_M_l(W, l).value  # noqa: E731
    elif mode == "N_l":
        f = lambda W: fermionic_N_l(W, lam, l).value  # noqa: E731
    else:
        raise VerifierError(f"unknown mode {mode!r}")
    t = time.perf_counter()
    lhs = f(W1)
    rhs = f(W2) + f(W3).shift(-theta)
    lvl = f", l={l}" if l is not None else ""
    inst = f"{spec}; a0={a0}, j0={j0}, lambda={lam}, {mode}{lvl}"
    rep = _compare("recursion", inst, lhs, rhs, True)
    rep.seconds = time.perf_counter() - t
    return rep


# ---------------------------------------------------------------------------
# X = q^c M


def crystal_spec(factors: Sequence[CrystalId]) -> TensorSpec:
    alg = factors[0].algebra
    return TensorSpec.from_factors(alg, [(c.r, c.s) for c in factors])


def check_X_equals_M(factors: Sequence[CrystalId] | str, lam: Sequence[int] | None = None, level: int | None = None) -> CheckReport:
    if isinstance(factors, str):
        factors = parse_crystal_list(factors)
    factors = tuple(factors)
    ps = PathSumSpec(factors)
    spec = crystal_spec(factors)
    n = spec.rank
    if level is not None:
        lam = (0,) * n
    lam = tuple(lam) if lam is not None else (0,) * n
    c = normalization_c(ps)
    X = one_d_sum(ps, lam, level).value
    M = fermionic_M(spec, lam).value if level is None else fermionic_M_l(spec, level).value
    name = "X_l = q^c M_l" if level is not None else "X = q^c M"
    inst = " ".join(map(str, factors)) + f"; lambda={lam}" + (f", l={level}" if level is not None else "")
    return _compare(name, inst, X, M.shift(c), False, note=f"c={c}")


# ---------------------------------------------------------------------------
# M = N_infinity and M_l = N_l


def check_M_equals_Ninf(spec: TensorSpec, lam: Sequence[int]) -> CheckReport:
    lam = tuple(lam)
    M = fermionic_M(spec, lam).value
    N = fermionic_N_l(spec, lam, None).value
    inst = f"{spec}; lambda={lam}"
    if any(x < 0 for x in lam):
        return CheckReport("M = N_inf", inst, OUT_OF_SCOPE, False, {"M": str(M), "N_inf": str(N)}, "lambda is not dominant")
    return _compare("M = N_inf", inst, M, N, False)


def check_Ml_equals_Nl(spec: TensorSpec, l: int) -> CheckReport:
    M = fermionic_M_l(spec, l).value
    N = fermionic_N_l(spec, None, l).value
    return _compare("M_l = N_l", f"{spec}; l={l}", M, N, False)


# ---------------------------------------------------------------------------
# Weyl antisymmetry


def shifted_action(aid, word: Sequence[int], lam: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """(w(lam + rho) - rho, det w)."""
    d = algebra_data(aid)
    v = d.apply_word(word, tuple(x + 1 for x in lam))
    return tuple(x - 1 for x in v), (-1) ** len(word)


def check_weyl_antisymmetry(spec: TensorSpec, lam: Sequence[int], word: Sequence[int], at_q: str = "one") -> CheckReport:
    lam = tuple(lam)
    mu, sign = shifted_action(spec.algebra, word, lam)
    inst = f"{spec}; lambda={lam}, w={''.join(map(str, word)) or 'id'}"
    if at_q == "one":
        lhs = fermionic_N_at_one(spec, mu)
        rhs = sign * fermionic_N_at_one(spec, lam)
        return _compare("Weyl antisymmetry (q=1)", inst, lhs, rhs, True)
    if at_q == "generic":
        lhs = fermionic_N_l(spec, mu).value
        rhs = fermionic_N_l(spec, lam).value * sign
        return _compare("Weyl antisymmetry (generic q)", inst, lhs, rhs, False)
    raise VerifierError(f"at_q must be 'one' or 'generic', got {at_q!r}")


# ---------------------------------------------------------------------------
# completeness


def _root_lattice_below(aid: AlgebraId, top: Sequence[int], lam: Sequence[int]) -> bool:
    d = algebra_data(aid)
    diff = [t - x for t, x in zip(top, lam)]
    coords = d.to_root_coords(diff)
    return all(c.denominator == 1 and c >= 0 for c in coords)


def provider_hypotheses(aid, provider: Provider, j_max: int) -> str | None:
    """Name of the first failed hypothesis on 1 <= j <= j_max, or None."""
    aid = AlgebraId.parse(aid)
    n = aid.rank
    for a in range(1, n + 1):
        for j in range(1, j_max + 1):
            Q = provider(a, j)
            top = tuple(j if b == a else 0 for b in range(1, n + 1))
            if Q.terms.get(top) != 1 or not all(_root_lattice_below(aid, top, lam) for lam in Q.terms):
                return f"(A) fails for Q^({a})_{j}"
    for a in range(1, n + 1):
        for j in range(1, j_max + 1):
            if not qsystem_residual(aid, a, j, provider).is_zero():
                return f"(B) fails at a={a}, j={j}"
    return None


def character_of(spec: TensorSpec, provider: Provider) -> RepElement:
    out = RepElement.one(spec.algebra)
    for (a, j), v in spec.nu_items:
        out = out * provider(a, j) ** v
    return out


def check_completeness(spec: TensorSpec, provider: Provider | None = None) -> CheckReport:
    aid = spec.algebra
    user = provider is not None
    if provider is None:
        if aid.family not in "ABCD":
            raise VerifierError(f"no built-in Q-system solution for {aid}; pass a provider")
        provider = chi_provider(aid)
    j_max = max((j for (_, j), _ in spec.nu_items), default=1)
    failed = provider_hypotheses(aid, provider, j_max)
    if failed:
        raise VerifierError(f"provider rejected: {failed}")
    ch = character_of(spec, provider)
    top = spec.weight()
    bad = {}
    for lam in dominant_weights(aid, top):
        mult = ch.terms.get(lam, 0)
        N = fermionic_N_at_one(spec, lam)
        if mult != N:
            bad[str(lam)] = {"character": mult, "N_inf(1)": N}
    inst = f"{spec}" + ("; user provider" if user else "")
    if bad:
        return CheckReport("completeness", inst, FAIL, True, bad)
    # a user provider has only been checked on a finite range of (B)
    return CheckReport("completeness", inst, EVIDENCE if user else PROVED, not user)


# ---------------------------------------------------------------------------
# closed forms and fixtures


def appendix_a_oracle(aid, r: int, s: int) -> dict[tuple[int, ...], LaurentPoly]:
    return classical_decomposition(aid, r, s)


def appendix_a_fixture(aid, r: int, s: int) -> dict[tuple[int, ...], LaurentPoly]:
    return exceptional_table(aid, r, s)


def _decomposition_report(check: str, inst: str, got: dict, want: dict, theorem: bool) -> CheckReport:
    if got == want:
        return CheckReport(check, inst, PROVED if theorem else EVIDENCE, theorem)
    diff = {}
    for lam in sorted(set(got) | set(want)):
        g, w = got.get(lam, LaurentPoly.zero()), want.get(lam, LaurentPoly.zero())
        if g != w:
            diff[str(lam)] = {"engine": str(g), "expected": str(w)}
    return CheckReport(check, inst, FAIL, theorem, diff)


def engine_decomposition(aid, r: int, s: int) -> dict[tuple[int, ...], LaurentPoly]:
    """{lambda: M(W^(r)_s, lambda, q^{-1})}."""
    spec = TensorSpec.make(aid, {(r, s): 1})
    return {lam: p.invert() for lam, p in fermionic_M_all(spec).items()}


def check_decomposition(aid, r: int, s: int) -> CheckReport:
    aid = AlgebraId.parse(aid)
    inst = f"{aid} W^({r})_{s}"
    t = time.perf_counter()
    if aid.family in "ABCD":
        rep = _decomposition_report("closed form", inst, engine_decomposition(aid, r, s), appendix_a_oracle(aid, r, s), True)
    else:
        rep = _decomposition_report("reference table", inst, engine_decomposition(aid, r, s), appendix_a_fixture(aid, r, s), True)
    rep.seconds = time.perf_counter() - t
    return rep


def check_conjectured_formula(aid, r: int, s: int) -> CheckReport:
    aid = AlgebraId.parse(aid)
    want = {k: v for k, v in conjectured_decomposition(aid, r, s).items() if not v.is_zero()}
    return _decomposition_report("conjectured formula", f"{aid} W^({r})_{s}", engine_decomposition(aid, r, s), want, False)


# ---------------------------------------------------------------------------
# worked C_2 example


def _lp(coeffs: dict[int, int]) -> LaurentPoly:
    return LaurentPoly(coeffs)


def golden_worked_example() -> list[CheckReport]:
    out = []
    factors = parse_crystal_list(golden.CRYSTALS)
    ps = PathSumSpec(tuple(factors))
    spec = TensorSpec.from_json(golden.SPEC)
    expect = {None: golden.X_CLASSICAL, 2: golden.X_LEVEL_2, 1: golden.X_LEVEL_1}
    for level, want in expect.items():
        tag = "X" if level is None else f"X_{level}"
        X = one_d_sum(ps, (0, 0), level, relative=True).value.invert()
        out.append(_compare("golden 1dsum", f"{tag}(B,0,q^-1)", X, _lp(want), True))
        M = (fermionic_M(spec, (0, 0)) if level is None else fermionic_M_l(spec, level)).value.invert()
        out.append(_compare("golden fermionic", f"M{'' if level is None else '_' + str(level)}(W,0,q^-1)", M, _lp(want), True))

    res = fermionic_M(spec, (0, 0), ledger=True, count_total=True)
    rows = sorted((r.m, r.p, r.contribution.invert().coeffs) for r in res.ledger)
    want_rows = sorted((m, p, c) for m, p, c in golden.CONFIG_ROWS)
    counts = (res.configs_total, res.configuration_count)
    out.append(_compare("golden configurations", "105 admissible, 6 contributing", counts, (golden.CONFIGURATIONS_TOTAL, len(golden.CONFIG_ROWS)), True))
    out.append(_compare("golden configurations", "(m, p, contribution) rows", rows, want_rows, True))

    paths = one_d_sum(ps, (0, 0), ledger=True, relative=True).ledger
    got = sorted((" ".join(golden.element_name(c, b) for c, b in zip(factors, p)), mE, e0) for p, mE, e0 in paths)
    out.append(_compare("golden paths", "classically restricted paths", got, sorted(golden.PATHS), True))

    for entry in golden.R_TABLES:
        left = parse_crystal_list(entry[0])[0]
        right = parse_crystal_list(entry[1])[0]
        R = combinatorial_R(left, right)
        bad = {}
        for (n1, n2), ((i2, i1), h) in golden.parse_r_table(entry).items():
            b1 = golden.element_from_name(left, n1)
            b2 = golden.element_from_name(right, n2)
            c2, c1 = R(b1, b2)
            got_cell = ((golden.element_name(right, c2), golden.element_name(left, c1)), -R.H(b1, b2))
            if got_cell != ((i2, i1), h):
                bad[f"{n1} x {n2}"] = {"engine": got_cell, "expected": ((i2, i1), h)}
        inst = f"R and -H on {left} x {right}"
        out.append(CheckReport("golden R table", inst, FAIL, True, bad) if bad else CheckReport("golden R table", inst, PROVED, True))
    return out


# ---------------------------------------------------------------------------
# random instances


FAMILY_SAMPLES = ("A2", "B2", "C2", "G2")


def random_spec(aid, rng: random.Random, max_factors: int = 3, max_s: int = 3, max_height: int | None = None) -> TensorSpec:
    """A random tensor product with at most ``max_factors`` factors and s <= max_s.

    ``max_height`` bounds the height of the total weight in root coordinates
    and keeps the fermionic sums small.
    """
    aid = AlgebraId.parse(aid)
    d = algebra_data(aid)
    while True:
        k = rng.randint(1, max_factors)
        facs = [(rng.randint(1, aid.rank), rng.randint(1, max_s)) for _ in range(k)]
        spec = TensorSpec.from_factors(aid, facs)
        if max_height is None or sum(d.to_root_coords(spec.weight())) <= max_height:
            return spec


def random_recursion_instance(aid, rng: random.Random) -> tuple[TensorSpec, int, int, tuple[int, ...], str, int | None]:
    """(W, a0, j0, lambda, mode, l) with everything small."""
    aid = AlgebraId.parse(aid)
    d = algebra_data(aid)
    n = aid.rank
    mode = rng.choice(["M", "M_l", "N_l"])
    while True:
        spec = random_spec(aid, rng, max_factors=3, max_s=3, max_height=12)
        a0 = rng.randint(1, n)
        j0 = rng.randint(1, 3)
        W1, W2, W3, _ = recursion_specs(spec, a0, j0)
        top = W1.weight()
        if sum(d.to_root_coords(top)) > 20:
            continue
        l = None
        if mode != "M":
            l = max(W.min_level() for W in (W1, W2, W3)) + rng.randint(0, 1)
        weights = list(dominant_weights(aid, top))
        lam = rng.choice(weights) if mode != "M_l" else (0,) * n
        return spec, a0, j0, lam, mode, l


def recursion_suite(families: Iterable[str] = FAMILY_SAMPLES, per_family: int = 50, seed: int = 2024) -> list[CheckReport]:
    rng = random.Random(seed)
    out = []
    for fam in families:
        for _ in range(per_family):
            spec, a0, j0, lam, mode, l = random_recursion_instance(fam, rng)
            out.append(check_recursion(spec, a0, j0, lam, mode, l))
    return out


COMPLETENESS_SAMPLES = {"A2": None, "B2": None, "C2": None, "C3": 18, "D4": 16}


def completeness_suite(per_family: int = 20, seed: int = 7) -> list[CheckReport]:
    """Completeness plus q = 1 antisymmetry for every simple reflection."""
    rng = random.Random(seed)
    out = []
    for fam, height in COMPLETENESS_SAMPLES.items():
        n = AlgebraId.parse(fam).rank
        for _ in range(per_family):
            spec = random_spec(fam, rng, max_height=height)
            out.append(check_completeness(spec))
            lam = rng.choice(list(dominant_weights(spec.algebra, spec.weight())))
            for a in range(1, n + 1):
                out.append(check_weyl_antisymmetry(spec, lam, [a], "one"))
    return out


def qsystem_suite(algebras: Sequence[str] = ("A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4"), j_max: int = 4) -> list[CheckReport]:
    out = []
    for alg in algebras:
        d = algebra_data(alg)
        bad = {}
        for a in range(1, d.rank + 1):
            for j in range(1, j_max + 1):
                r = qsystem_residual(alg, a, j)
                if not r.is_zero():
                    bad[f"a={a}, j={j}"] = r.to_json()
        inst = f"{alg}, all a, j <= {j_max}"
        out.append(CheckReport("Q-system", inst, FAIL, True, bad) if bad else CheckReport("Q-system", inst, PROVED, True))
    return out


def decomposition_suite(include_slow: bool = True) -> list[CheckReport]:
    out = []
    for alg, ranks in (("A", (1, 2, 3, 4)), ("B", (2, 3, 4)), ("C", (2, 3, 4)), ("D", (4,))):
        for n in ranks:
            for r in range(1, n + 1):
                for s in (1, 2, 3):
                    out.append(check_decomposition(f"{alg}{n}", r, s))
    slow = {("E8", 4, 1), ("E8", 5, 1)}
    for key in sorted(EXCEPTIONAL_TABLES):
        if include_slow or key not in slow:
            out.append(check_decomposition(*key))
    return out


def conjecture_suite(seed: int = 11) -> list[CheckReport]:
    rng = random.Random(seed)
    out = []
    for alg in ("A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"):
        for a in range(1, algebra_data(alg).rank + 1):
            spec = TensorSpec.make(alg, {(a, 1): 1})
            for lam in dominant_weights(spec.algebra, spec.weight()):
                out.append(check_M_equals_Ninf(spec, lam))
    for L in range(1, 7):
        out.append(check_M_equals_Ninf(TensorSpec.make("A1", {(1, 1): L}), (L % 2,)))
    for _ in range(20):
        fam = rng.choice(["A2", "B2", "C2"])
        spec = random_spec(fam, rng, max_factors=2, max_s=2, max_height=6)
        lam = rng.choice(list(dominant_weights(spec.algebra, spec.weight())))
        word = [rng.randint(1, spec.rank) for _ in range(rng.randint(1, 3))]
        out.append(check_weyl_antisymmetry(spec, lam, word, "generic"))
    for cl in crystal_products(("A2", "C2"), 4):
        spec = crystal_spec(cl)
        for lam in dominant_weights(spec.algebra, spec.weight()):
            out.append(check_X_equals_M(cl, lam))
    return out


def crystal_products(algebras: Sequence[str], max_factors: int, max_height: int = 8) -> list[tuple[CrystalId, ...]]:
    """Ordered products of small supported crystals (up to reordering of equal heights)."""
    from itertools import combinations_with_replacement

    out = []
    for alg in algebras:
        d = algebra_data(alg)
        basic = [CrystalId.make(alg, 1, 1), CrystalId.make(alg, 1, 2)]
        if alg.startswith("C"):
            basic.append(CrystalId.make(alg, 2, 1))
        for k in range(1, max_factors + 1):
            for combo in combinations_with_replacement(basic, k):
                spec = crystal_spec(combo)
                if sum(d.to_root_coords(spec.weight())) <= max_height:
                    out.append(tuple(combo))
    return out


SUITES: dict[str, Callable[[], list[CheckReport]]] = {
    "golden": lambda: golden_worked_example() + decomposition_suite(),
    "theorems": lambda: recursion_suite() + qsystem_suite() + completeness_suite(),
    "conjectures": conjecture_suite,
}


def run_suite(name: str) -> list[CheckReport]:
    if name not in SUITES:
        raise VerifierError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name]()


def summary_table(reports: Sequence[CheckReport]) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r.status:26s} {r.check:28s} {r.instance}")
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} passed")
    return "\n".join(lines)

