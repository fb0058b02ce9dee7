"""``diaconf`` command-line interface.

Every command produces a :class:`Report`; the exit status is 0 when the overall
verdict is true, 1 when it is false and 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

from . import conformal as conf
from . import constructions as cons
from . import dialgebra as dia
from . import identities as ids
from .exactcore import Poly
from .specfile import SpecError, load_catalog, module_from_spec, parse_spec, resolve

BUILTIN_CONFORMAL = {"weyl": conf.weyl, "virasoro": conf.virasoro, "nounit": conf.no_unit_example}
BUILTIN_IDENTITIES = {
    "assoc": lambda: [ids.ASSOCIATIVITY],
    "comm": lambda: [ids.COMMUTATIVITY],
    "anticomm": lambda: [ids.ANTICOMMUTATIVITY],
    "jacobi": lambda: [ids.JACOBI],
    "lie": lambda: ids.variety_axioms("lie"),
    "jordan": lambda: ids.variety_axioms("jordan"),
}
VARIETIES = ("assoc", "comm", "anticomm", "lie", "leibniz", "jordan", "dijordan",
             "zero", "diassoc", "di-assoc", "di-lie", "di-comm")


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: List[dict] = field(default_factory=list)
    checks: List[dict] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    forced: bool | None = None  # overrides the conjunction for search commands

    @property
    def verdict(self) -> bool:
        if self.forced is not None:
            return self.forced
        return all(c["status"] for c in self.checks)

    def check(self, name: str, ok: bool, witness=None, detail: str = "") -> bool:
        entry = {"name": name, "status": bool(ok)}
        if witness is not None:
            entry["witness"] = witness
        if detail:
            entry["detail"] = detail
        self.checks.append(entry)
        return bool(ok)

    def add_result(self, r: dia.CheckResult, name: str | None = None) -> bool:
        return self.check(name or r.name, r.ok, r.witness, r.detail)

    def as_dict(self) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "checks": self.checks}
        if self.data:
            out["data"] = self.data
        out["verdict"] = self.verdict
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, default=_jsonable)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for inp in self.inputs:
            lines.append(f"input:   {inp['ref']} (sha256 {inp['sha256'][:12]})")
        for key, value in self.data.items():
            if isinstance(value, list) and value and all(isinstance(v, str) for v in value):
                lines.append(f"{key}:")
                lines.extend(f"  {v}" for v in value)
            elif not isinstance(value, (dict, list)) or len(json.dumps(value, default=_jsonable)) < 100:
                lines.append(f"{key}: {json.dumps(value, default=_jsonable) if not isinstance(value, str) else value}")
        for c in self.checks:
            mark = "PASS" if c["status"] else "FAIL"
            extra = ""
            if "witness" in c:
                extra += f" witness={json.dumps(c['witness'], default=_jsonable)}"
            if "detail" in c:
                extra += f" ({c['detail']})"
            lines.append(f"[{mark}] {c['name']}{extra}")
        lines.append(f"verdict: {str(self.verdict).lower()}")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Poly):
        return str(x)
    if isinstance(x, (tuple, set)):
        return list(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


# -- inputs ----------------------------------------------------------------------

def _digest(report: Report, ref: str, content: bytes) -> None:
    report.inputs.append({"ref": ref, "sha256": hashlib.sha256(content).hexdigest()})


def _load(report: Report, ref: str, kinds: Sequence[str]):
    if ref in BUILTIN_CONFORMAL and "conformal" in kinds:
        _digest(report, ref, f"builtin:{ref}".encode())
        return "conformal", BUILTIN_CONFORMAL[ref]()
    if ref.startswith("cur:") and "conformal" in kinds:
        kind, A = _load(report, ref[4:], ("algebra",))
        return "conformal", conf.current(A)
    try:
        path = resolve(ref)
        content = path.read_bytes()
    except (OSError, SpecError) as exc:
        raise UsageError(f"{ref}: {exc}") from None
    spec = parse_spec(ref)
    if spec.kind not in kinds:
        raise UsageError(f"{ref}: expected {' or '.join(kinds)}, got {spec.kind}")
    _digest(report, ref, content)
    return spec.kind, spec.build()


def _table_text(A: dia.Algebra) -> List[str]:
    out = []
    for (i, j), entries in sorted(A.table.items()):
        terms = " + ".join(A.names[k] if c == 1 else f"-{A.names[k]}" if c == -1 else f"{c}*{A.names[k]}"
                           for k, c in entries)
        out.append(f"[{A.names[i]}, {A.names[j]}] = {terms}")
    return out


# -- commands --------------------------------------------------------------------

def cmd_check(args, rep: Report) -> None:
    kind, obj = _load(rep, args.file, ("algebra", "dialgebra", "conformal"))
    v = args.variety
    rep.data["variety"] = v
    if kind == "conformal":
        if v == "assoc":
            rep.add_result(conf.check_conformal_associativity(obj))
        elif v == "lie":
            rep.add_result(conf.check_conformal_lie(obj))
        else:
            raise UsageError(f"variety {v!r} is not available for conformal algebras")
        rep.add_result(conf.check_sesquilinearity(obj, pairs=args.pairs))
        return
    if v in ("zero", "diassoc", "di-assoc", "di-lie", "di-comm"):
        D = obj if kind == "dialgebra" else None
        if D is None:
            raise UsageError(f"variety {v!r} needs a dialgebra")
        if v == "zero":
            rep.add_result(dia.check_zero_identities(D))
        elif v == "diassoc":
            rep.add_result(dia.is_diassociative(D))
        else:
            rep.add_result(dia.is_di_variety(D, ids.variety_axioms(v[3:])))
        return
    A = obj if kind == "algebra" else None
    if A is None:
        raise UsageError(f"variety {v!r} needs an algebra; use di-* varieties for dialgebras")
    fn = {
        "assoc": dia.is_associative, "comm": dia.is_commutative, "anticomm": dia.is_anticommutative,
        "lie": dia.is_lie, "leibniz": dia.is_leibniz, "jordan": dia.is_jordan, "dijordan": dia.is_di_jordan,
    }[v]
    rep.add_result(fn(A))


def cmd_series(args, rep: Report) -> None:
    _, obj = _load(rep, args.file, ("algebra", "dialgebra"))
    try:
        r = dia.series(obj, args.kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep.data.update({"kind": r.kind, "dims": r.dims})
    rep.check(f"{r.kind} series reaches 0", r.verdict,
              detail=f"X_{r.zero_index} = 0" if r.verdict else f"stable at dimension {r.dims[-1]}")


def cmd_translate(args, rep: Report) -> None:
    if args.identity in BUILTIN_IDENTITIES:
        _digest(rep, args.identity, f"builtin:{args.identity}".encode())
        axioms = BUILTIN_IDENTITIES[args.identity]()
    else:
        _, f = _load(rep, args.identity, ("identity",))
        axioms = [f]
    lin = []
    for f in axioms:
        lin.extend([f] if f.is_polylinear() else ids.linearize(f))
    rep.data["identities"] = [str(f) for f in lin]
    if args.k == "all":
        out = ids.di_identities(lin)
    else:
        try:
            k = int(args.k)
        except ValueError:
            raise UsageError(f"--k expects an integer or 'all', got {args.k!r}") from None
        bad = [f for f in lin if not 1 <= k <= f.degree]
        if bad:
            raise UsageError(f"--k {k} is out of range for {bad[0]} (degree {bad[0].degree})")
        out = [ids.psi(f, k) for f in lin]
    rep.data["translated"] = [str(g) for g in out]
    rep.check("translation", True, detail=f"{len(out)} identities")


def cmd_sident(args, rep: Report) -> None:
    _digest(rep, f"degree:{args.degree}", str(args.degree).encode())
    try:
        r = ids.s_identity_space(args.degree, force=args.force)
    except ids.TooLarge as exc:
        raise UsageError(f"{exc} (pass --force to run anyway)") from None
    rep.data.update(r.as_dict())
    rep.data["result"] = "no s-identities" if r.verdict else "s-identities found"
    rep.check("kernel of expansion within di-Jordan consequences", r.verdict,
              detail=f"dim K = {r.kernel_dim}, dim K meet C = {r.intersection_dim}")


def _record(rep: Report, rec: cons.LinearMapRecord) -> None:
    for c in rec.checks:
        rep.add_result(c)
    rep.data.update({"source": rec.source, "target": rec.target, "rank": rec.rank})


def cmd_embed(args, rep: Report) -> None:
    _, D = _load(rep, args.file, ("dialgebra",))
    zero = dia.check_zero_identities(D)
    if not zero:
        rep.add_result(zero)
        return
    rec, _ = cons.current_embedding(D)
    _record(rep, rec)
    rep.data["images"] = rec.images


def _leibniz(rep: Report, ref: str) -> dia.Algebra:
    kind, obj = _load(rep, ref, ("algebra", "dialgebra"))
    if kind == "dialgebra":
        obj = dia.minus_product(obj)
    return obj


def cmd_rep(args, rep: Report) -> None:
    L = _leibniz(rep, args.file)
    chk = dia.is_leibniz(L)
    if not rep.add_result(chk, "is_leibniz"):
        return
    V = None
    if args.module:
        try:
            content = resolve(args.module).read_bytes()
        except (OSError, SpecError) as exc:
            raise UsageError(f"{args.module}: {exc}") from None
        _digest(rep, args.module, content)
        V = module_from_spec(parse_spec(args.module), L)
        mod = cons.check_bar_module(L, V)
        if not rep.add_result(mod):
            return
    r = cons.leibniz_conformal_rep(L, V)
    _record(rep, r.record)
    rep.data.update({"module": r.V.name, "width": r.width, "images": r.record.images})


def cmd_ado(args, rep: Report) -> None:
    L = _leibniz(rep, args.file)
    if not rep.add_result(dia.is_leibniz(L), "is_leibniz"):
        return
    env = cons.ado_envelope(L)
    _record(rep, env.record)
    rep.add_result(dia.is_diassociative(env.dialgebra), "envelope is diassociative")
    rep.data["dim"] = env.dialgebra.dim
    rep.data["image"] = {L.names[i]: {str(k): c for k, c in enumerate(v) if c} for i, v in enumerate(env.image)}


def cmd_tkk(args, rep: Report) -> None:
    _, J = _load(rep, args.file, ("algebra",))
    dj = dia.is_di_jordan(J)
    if dia.is_jordan(J):
        T = cons.tkk(J)
        rep.check("TKK bracket is Lie", True)
        rep.data.update({"tkk_dim": T.algebra.dim, "tkk_table": _table_text(T.algebra)})
        if not dj:
            return
    if not rep.add_result(dj, "is_di_jordan"):
        return
    out = cons.leibniz_tkk(J)
    _record(rep, out.record)
    nil_t = dia.series(out.algebra).verdict
    nil_j = dia.series(J).verdict
    rep.check("T(J) nilpotent iff J nilpotent", nil_t == nil_j, detail=f"T(J): {nil_t}, J: {nil_j}")
    rep.data.update({"dim": out.algebra.dim, "hat_tkk_dim": out.tkk.algebra.dim, "nilpotent": nil_t})


def cmd_unit(args, rep: Report) -> None:
    _, C = _load(rep, args.file, ("conformal",))
    searches = []
    found = None
    for b in range(1, args.bound + 1):
        s = conf.find_left_unit(C, b)
        searches.append({"bound": b, "feasible": s.feasible, "unknowns": s.unknowns, "equations": s.equations})
        rep.check(f"left unit of degree <= {b}", s.feasible,
                  detail="solution found" if s.feasible else "infeasible, certificate y M = 0, y b != 0")
        if s.feasible:
            found = s.unit
            break
    rep.data["searches"] = searches
    if found is not None:
        rep.data["unit"] = C.format(found)
    rep.forced = found is not None


def cmd_catalog(args, rep: Report) -> None:
    if args.action == "list":
        specs = load_catalog(kind=args.kind)
        width = max((len(s.name) for s in specs), default=0)
        rep.data["entries"] = [f"{s.name:<{width}}  {s.kind:<9}  {','.join(s.tags)}".rstrip() for s in specs]
        rep.check("catalog", True, detail=f"{len(specs)} entries")
        return
    if not args.name:
        raise UsageError("catalog show needs a name")
    ref = args.name if args.name.startswith("catalog:") else f"catalog:{args.name}"
    try:
        content = resolve(ref).read_bytes()
    except (OSError, SpecError) as exc:
        raise UsageError(str(exc)) from None
    _digest(rep, ref, content)
    rep.data["spec"] = json.loads(parse_spec(ref).dumps())
    rep.check("valid spec", True)


COMMANDS = {
    "check": cmd_check, "series": cmd_series, "translate": cmd_translate, "sident": cmd_sident,
    "embed": cmd_embed, "rep": cmd_rep, "ado": cmd_ado, "tkk": cmd_tkk, "unit": cmd_unit,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diaconf", description="Exact checks for dialgebras and conformal algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help_text):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--json", action="store_true", help="machine-readable report")
        return s

    s = cmd("check", "check a variety's identities")
    s.add_argument("file", help="spec path, catalog:<name>, weyl, virasoro, nounit or cur:<algebra>")
    s.add_argument("--variety", required=True, choices=VARIETIES)
    s.add_argument("--pairs", type=int, default=500, help="random pairs for sesquilinearity")
    s = cmd("series", "lower central, derived or Penico series")
    s.add_argument("file")
    s.add_argument("--kind", default="lower_central", choices=dia.SERIES_KINDS + ("lcs",))
    s = cmd("translate", "apply the Psi_k translation to an identity")
    s.add_argument("identity", help=f"identity spec or one of {', '.join(BUILTIN_IDENTITIES)}")
    s.add_argument("--k", default="all")
    s = cmd("sident", "s-identities of di-Jordan algebras in one degree")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--force", action="store_true", help="lift the degree guard")
    s = cmd("embed", "current embedding of a dialgebra")
    s.add_argument("file")
    s = cmd("rep", "conformal representation of a Leibniz algebra")
    s.add_argument("file")
    s.add_argument("--module", help="module-action spec (default: trivial)")
    s = cmd("ado", "finite diassociative envelope of a Leibniz algebra")
    s.add_argument("file")
    s = cmd("tkk", "TKK of a Jordan algebra or T(J) of a di-Jordan algebra")
    s.add_argument("file")
    s = cmd("unit", "bounded search for a left unit of a conformal algebra")
    s.add_argument("file")
    s.add_argument("--bound", type=int, default=3)
    s = cmd("catalog", "list or show catalog entries")
    s.add_argument("action", choices=("list", "show"))
    s.add_argument("name", nargs="?")
    s.add_argument("--kind", choices=("algebra", "dialgebra", "conformal", "identity", "module-action"))
    return p


def run_command(argv: Sequence[str]) -> tuple[Report | None, int, str]:
    """Parse ``argv`` and run it; returns (report, exit code, rendered output)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return None, 2 if exc.code else 0, ""
    rep = Report(args.command)
    try:
        COMMANDS[args.command](args, rep)
    except (UsageError, SpecError) as exc:
        return None, 2, f"diaconf: error: {exc}"
    text = rep.to_json() if args.json else rep.to_text()
    return rep, 0 if rep.verdict else 1, text


def main(argv: Sequence[str] | None = None) -> int:
    rep, code, text = run_command(sys.argv[1:] if argv is None else argv)
    if text:
        print(text, file=sys.stderr if rep is None else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
