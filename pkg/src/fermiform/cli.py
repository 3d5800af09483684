"""Command line front end.

Exit codes: 0 success, 1 failed theorem or golden check, 2 usage error,
3 instance outside what the library supports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import golden
from .characters import CharacterError, qsystem_residual
from .closed_forms import classical_decomposition
from .crystals import CrystalError, CrystalSyntaxError, Tensor, parse_crystal_list
from .fermionic import SpecError, TensorSpec, fermionic_M, fermionic_M_l, fermionic_N_l
from .onedsum import PathSumSpec, ledger_csv, normalization_c, one_d_sum
from .qseries import LaurentPoly
from .root_data import AlgebraError, AlgebraId, algebra_data
from .verifier import FAIL, VerifierError, engine_decomposition, run_suite, summary_table

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3
FORMATS = ("json", "csv", "latex", "text")
COMMANDS = ("fermionic", "onedsum", "qsystem", "verify", "tables")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _algebra(text: str) -> AlgebraId:
    try:
        return AlgebraId.parse(text)
    except AlgebraError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _load_spec(text: str) -> TensorSpec:
    path = Path(text)
    payload = path.read_text() if path.exists() else text
    try:
        data = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec is neither a file nor JSON: {exc}") from exc
    return TensorSpec.from_json(data)


def _check_lambda(lam: tuple[int, ...] | None, rank: int) -> tuple[int, ...]:
    if lam is None:
        return (0,) * rank
    if len(lam) != rank:
        raise UsageError(f"lambda needs {rank} entries, got {len(lam)}")
    return lam


# ---------------------------------------------------------------------------
# emitters


def _weight_latex(lam: Sequence[int]) -> str:
    parts = []
    for a, k in enumerate(lam, 1):
        if k:
            parts.append(("" if k == 1 else str(k)) + f"\\ol{{\\Lambda}}_{a}")
    return "+".join(parts) if parts else "0"


def _coeff_latex(p: LaurentPoly) -> str:
    if p == LaurentPoly.one():
        return ""
    if len(p.coeffs) == 1:
        return p.latex()
    return f"({p.latex()})"


def _sorted_weights(aid: AlgebraId, lams) -> list[tuple[int, ...]]:
    d = algebra_data(aid)
    return sorted(lams, key=lambda w: (-sum(d.to_root_coords(w)), tuple(-x for x in w)))


def decomposition_latex(aid: AlgebraId, r: int, s: int, dec: dict) -> str:
    terms = [f"{_coeff_latex(dec[lam])}V({_weight_latex(lam)})" for lam in _sorted_weights(aid, dec)]
    return f"{{\\mathcal W}}^{{({r})}}_{{{s}}} &= " + " + ".join(terms) + " \\\\"


def decomposition_text(aid: AlgebraId, r: int, s: int, dec: dict) -> str:
    lines = [f"{aid} W^({r})_{s}:"]
    for lam in _sorted_weights(aid, dec):
        lines.append(f"  V({','.join(map(str, lam))}): {dec[lam]}")
    return "\n".join(lines)


def poly_csv(p: LaurentPoly) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["exponent", "coefficient"])
    for e, v in sorted(p.coeffs.items()):
        w.writerow([e, v])
    return buf.getvalue()


def _emit(text: str, output: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_fermionic(args) -> int:
    spec = _load_spec(args.spec)
    lam = _check_lambda(args.lam, spec.rank)
    form = args.form or ("Ml" if args.level is not None else "M")
    if form == "Ml" and args.level is None:
        raise UsageError("--form Ml needs --level")
    if form == "M":
        res = fermionic_M(spec, lam, ledger=args.ledger)
    elif form == "Ml":
        if any(lam):
            raise UsageError("M_l is defined at lambda = 0 only")
        res = fermionic_M_l(spec, args.level, ledger=args.ledger)
    else:
        res = fermionic_N_l(spec, lam, args.level)
    inv = res.value.invert()
    label = {"M": "M", "Ml": f"M_{args.level}", "Nl": "N_inf" if args.level is None else f"N_{args.level}"}[form]
    if args.format == "json":
        payload = {
            "spec": spec.to_json(),
            "lambda": list(lam),
            "form": form,
            "level": args.level,
            "poly": res.value.to_json(),
            "poly_q_inverse": inv.to_json(),
            "configurations": res.configuration_count,
        }
        if args.ledger:
            payload["ledger"] = [
                {"m": [list(x) for x in r.m], "p": [list(x) for x in r.p], "contribution_q_inverse": r.contribution.invert().to_json()}
                for r in res.ledger
            ]
        text = json.dumps(payload, indent=2, sort_keys=True)
    elif args.format == "csv":
        text = poly_csv(inv)
    elif args.format == "latex":
        text = f"{label}(W,\\lambda,q^{{-1}}) = {inv.latex()}"
    else:
        text = f"{label}(W, {lam}, q^-1) = {inv}"
        if args.ledger:
            text += "\n" + "\n".join(f"  m={r.m} p={r.p} -> {r.contribution.invert()}" for r in res.ledger)
    _emit(text, args.output)
    return EXIT_OK


def cmd_onedsum(args) -> int:
    factors = parse_crystal_list(args.crystals)
    if not factors:
        raise UsageError("--crystals is empty")
    spec = PathSumSpec(tuple(factors))
    lam = _check_lambda(args.lam, factors[0].algebra.rank)
    res = one_d_sum(spec, lam, args.level, ledger=args.ledger, relative=not args.absolute)
    inv = res.value.invert()
    c = normalization_c(spec)
    label = "X" if args.level is None else f"X_{args.level}"
    if args.format == "json":
        payload = {
            "crystals": [str(f) for f in factors],
            "lambda": list(lam),
            "level": args.level,
            "relative": not args.absolute,
            "c": c,
            "paths": res.count,
            "poly_q_inverse": inv.to_json(),
        }
        if args.ledger:
            payload["ledger"] = [{"path": spec_render(factors, p), "minus_E": mE, "eps0": e0} for p, mE, e0 in res.ledger]
        text = json.dumps(payload, indent=2, sort_keys=True)
    elif args.format == "csv":
        text = ledger_csv(spec, res.ledger) if args.ledger else poly_csv(inv)
    elif args.format == "latex":
        text = f"{label}(B,\\lambda,q^{{-1}}) = {inv.latex()}"
    else:
        text = f"{label}(B, {lam}, q^-1) = {inv}   [{res.count} paths, c = {c}]"
        if args.ledger:
            text += "\n" + "\n".join(f"  {spec_render(factors, p)}  -E={mE}  eps0={e0}" for p, mE, e0 in res.ledger)
    _emit(text, args.output)
    return EXIT_OK


def spec_render(factors, path) -> str:
    return Tensor(factors).render(path)


def cmd_qsystem(args) -> int:
    aid = args.algebra
    if aid.family not in "ABCD":
        raise CharacterError(f"no built-in Q-system solution for {aid}")
    rows = []
    failed = False
    for a in range(1, aid.rank + 1):
        for j in range(1, args.max_j + 1):
            r = qsystem_residual(aid, a, j)
            failed |= not r.is_zero()
            rows.append({"a": a, "j": j, "residual": r.to_json()})
    if args.format == "json":
        text = json.dumps({"algebra": str(aid), "max_j": args.max_j, "rows": rows}, indent=2, sort_keys=True)
    elif args.format == "csv":
        text = "a,j,zero\n" + "\n".join(f"{r['a']},{r['j']},{int(not r['residual'])}" for r in rows)
    else:
        text = "\n".join(f"{aid} a={r['a']} j={r['j']}: " + ("0" if not r["residual"] else json.dumps(r["residual"])) for r in rows)
    _emit(text, args.output)
    return EXIT_CHECK if failed else EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suite(args.suite)
    if args.format == "json":
        text = json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True)
    else:
        text = summary_table(reports)
    _emit(text, args.output)
    # conjecture evidence never changes the exit code
    gating = args.suite in ("theorems", "golden")
    failed = any(r.status == FAIL for r in reports)
    return EXIT_CHECK if failed and gating else EXIT_OK


def cmd_tables(args) -> int:
    if args.appendix == "B":
        factors = parse_crystal_list(golden.CRYSTALS)
        ps = PathSumSpec(tuple(factors))
        rows = [
            ("X_1", one_d_sum(ps, (0, 0), 1, relative=True).value.invert()),
            ("X_2", one_d_sum(ps, (0, 0), 2, relative=True).value.invert()),
            ("X", one_d_sum(ps, (0, 0), relative=True).value.invert()),
        ]
        if args.format == "latex":
            text = "\n".join(f"{name}(B,0,q^{{-1}}) &=& {p.latex()}, \\\\" for name, p in rows)
        elif args.format == "json":
            text = json.dumps({name: p.to_json() for name, p in rows}, indent=2, sort_keys=True)
        elif args.format == "csv":
            text = "name,exponent,coefficient\n" + "\n".join(f"{n},{e},{v}" for n, p in rows for e, v in sorted(p.coeffs.items()))
        else:
            text = "\n".join(f"{name}(B,0,q^-1) = {p}" for name, p in rows)
        _emit(text, args.output)
        return EXIT_OK
    if args.algebra is None or args.r is None or args.s is None:
        raise UsageError("tables --appendix A needs --algebra, --r and --s")
    aid = args.algebra
    if not 1 <= args.r <= aid.rank or args.s < 1:
        raise UsageError(f"need 1 <= r <= {aid.rank} and s >= 1")
    if args.source == "oracle":
        if aid.family not in "ABCD":
            raise AlgebraError("the closed-form oracle covers A, B, C, D only")
        dec = classical_decomposition(aid, args.r, args.s)
    else:
        dec = engine_decomposition(aid, args.r, args.s)
    if args.format == "latex":
        text = decomposition_latex(aid, args.r, args.s, dec)
    elif args.format == "json":
        text = json.dumps(
            {"algebra": str(aid), "r": args.r, "s": args.s, "terms": [{"lambda": list(l), "poly_q_inverse": dec[l].to_json()} for l in _sorted_weights(aid, dec)]},
            indent=2,
            sort_keys=True,
        )
    elif args.format == "csv":
        text = "lambda,exponent,coefficient\n" + "\n".join(
            f"\"{','.join(map(str, l))}\",{e},{v}" for l in _sorted_weights(aid, dec) for e, v in sorted(dec[l].coeffs.items())
        )
    else:
        text = decomposition_text(aid, args.r, args.s, dec)
    _emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# job files


@dataclass
class JobConfig:
    command: str
    args: dict[str, Any] = field(default_factory=dict)
    output: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_json(cls, data: Any) -> "JobConfig":
        if not isinstance(data, dict) or "command" not in data:
            raise UsageError("job file needs a 'command' key")
        extra = set(data) - {"command", "args", "output"}
        if extra:
            raise UsageError(f"unknown job keys {sorted(extra)}")
        if data["command"] not in COMMANDS:
            raise UsageError(f"unknown command {data['command']!r}")
        args = data.get("args", {})
        out = data.get("output", {})
        if not isinstance(args, dict) or not isinstance(out, dict):
            raise UsageError("'args' and 'output' must be objects")
        if set(out) - {"path", "format"}:
            raise UsageError("'output' accepts only 'path' and 'format'")
        if out.get("format", "text") not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")
        return cls(data["command"], args, out)

    def to_argv(self) -> list[str]:
        argv = [self.command]
        for key, val in self.args.items():
            flag = "--" + key.replace("_", "-")
            if isinstance(val, bool):
                if val:
                    argv.append(flag)
                continue
            if isinstance(val, (dict, list)) and key == "spec":
                val = json.dumps(val)
            elif isinstance(val, list):
                val = ",".join(map(str, val))
            argv += [flag, str(val)]
        if "format" in self.output:
            argv += ["--format", self.output["format"]]
        if "path" in self.output:
            argv += ["--output", self.output["path"]]
        return argv


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fermiform",
        description="Fermionic forms, one dimensional sums and Q-system checks.",
        epilog='Crystal lists use "ALG:r,s[xCOUNT]" tokens separated by spaces, e.g. "C2:1,2 C2:2,1x3 C2:1,1x2".',
    )
    p.add_argument("--config", help="JSON job file with keys command, args, output")
    p.add_argument("--jobs", type=int, default=int(os.environ.get("FERMIFORM_JOBS", "1")), help="worker count (output never depends on it)")
    sub = p.add_subparsers(dest="command")

    def common(sp):
        sp.add_argument("--format", choices=FORMATS, default="text")
        sp.add_argument("--output", help="write to this path instead of stdout")

    f = sub.add_parser("fermionic", help="M, M_l or N_l for a tensor product spec")
    f.add_argument("--spec", required=True, help='JSON file or inline JSON: {"algebra": "C2", "factors": [{"a": 1, "s": 2, "count": 1}]}')
    f.add_argument("--lambda", dest="lam", type=_weight)
    f.add_argument("--level", type=int)
    f.add_argument("--form", choices=("M", "Ml", "Nl"))
    f.add_argument("--ledger", action="store_true")
    common(f)

    o = sub.add_parser("onedsum", help="X or X_l over classically restricted paths")
    o.add_argument("--crystals", required=True)
    o.add_argument("--lambda", dest="lam", type=_weight)
    o.add_argument("--level", type=int)
    o.add_argument("--ledger", action="store_true")
    o.add_argument("--absolute", action="store_true", help="do not subtract the normalization constant c")
    common(o)

    q = sub.add_parser("qsystem", help="Q-system residuals of the domino characters")
    q.add_argument("--algebra", type=_algebra, required=True)
    q.add_argument("--max-j", type=int, default=4)
    common(q)

    v = sub.add_parser("verify", help="run a check suite")
    v.add_argument("--suite", choices=("theorems", "conjectures", "golden"), required=True)
    common(v)

    t = sub.add_parser("tables", help="regenerate decomposition tables")
    t.add_argument("--appendix", choices=("A", "B"), required=True)
    t.add_argument("--algebra", type=_algebra)
    t.add_argument("--r", type=int)
    t.add_argument("--s", type=int)
    t.add_argument("--source", choices=("engine", "oracle"), default="engine")
    common(t)
    return p


HANDLERS = {
    "fermionic": cmd_fermionic,
    "onedsum": cmd_onedsum,
    "qsystem": cmd_qsystem,
    "verify": cmd_verify,
    "tables": cmd_tables,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.config:
            try:
                job = JobConfig.from_json(json.loads(Path(args.config).read_text()))
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read job file: {exc}") from exc
            return run(job.to_argv())
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return HANDLERS[args.command](args)
    except (UsageError, SpecError, CrystalSyntaxError) as exc:
        print(f"fermiform: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraError, CrystalError, CharacterError, VerifierError) as exc:
        print(f"fermiform: unsupported: {exc}", file=sys.stderr)
        return EXIT_REFUSED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
