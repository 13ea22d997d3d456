"""Command line front end: classify, member, witness, search, audit, tables."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import oracles
from .classify import classify_mod3, classify_mod5, classify_mod9
from .errors import BudgetExceeded, CircdetError, TypeMismatch
from .membership import membership, theorem1_check
from .ntheory import DEFAULT_BUDGET
from .search import (
    SearchSpec,
    Strata,
    corpus_audit,
    exclusion_probe,
    read_records,
    run_search,
    stratified_family_search,
)
from .tables import CONTEXTS, tables
from .witness import witness_3p4, witness_3p5_mod3, witness_3p5_type3, witness_5cubed, witness_for_value


def stringify(obj):
    """Integers become decimal strings so no consumer loses precision."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stringify(v) for v in obj]
    return obj


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self._csv_header = None

    def emit(self, record: dict) -> None:
        rec = stringify(record)
        if self.fmt == "json":
            self.stream.write(json.dumps(rec, separators=(",", ":")) + "\n")
            return
        flat = {k: (json.dumps(v, separators=(",", ":")) if isinstance(v, (dict, list)) else v) for k, v in rec.items()}
        buf = io.StringIO()
        if self._csv_header is None:
            self._csv_header = list(flat)
            csv.writer(buf).writerow(self._csv_header)
        csv.writer(buf).writerow([flat.get(k, "") for k in self._csv_header])
        self.stream.write(buf.getvalue())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


# classify ---------------------------------------------------------------


def classify_record(q: int, context: str) -> dict:
    fn = {"mod5": classify_mod5, "mod3": classify_mod3, "mod9": classify_mod9}[context]
    v = fn(q)
    certs = {"reduction": [c.to_dict() for c in v.certificates]}
    if context == "mod5":
        fib = oracles.fibonacci_certificate(q)
        _, jac = oracles.jacobi_artiad_test(q) if q < oracles.JACOBI_LIMIT else (None, None)
        _, dick = oracles.dickson_artiad_test(q)
        certs.update(
            fibonacci=fib.to_dict(),
            quintic=oracles.quintic_residue_test(q),
            jacobi=None if jac is None else jac.to_dict(),
            dickson=dick.to_dict(),
        )
    else:
        sol = oracles.binary_form_solution(q)
        certs.update(
            binary_form=None if sol is None else {"x": sol[0], "y": sol[1]},
            cubic_residue=oracles.cubic_residue_test(q),
        )
    return {"q": q, "context": context, "label": v.label.value, "certificates": certs}


def _context_for(p: int, q: int, override: str | None) -> str:
    if override:
        return override
    if p == 5:
        return "mod5"
    if p == 3:
        return "mod9" if q % 9 == 1 else "mod3"
    raise CircdetError(f"no classification for p = {p}")


def cmd_classify(args, out: Output) -> int:
    for q in args.q:
        out.emit(classify_record(q, _context_for(args.p, q, args.context)))
    return 0


# member -----------------------------------------------------------------


def cmd_member(args, out: Output) -> int:
    negative = False
    for D in args.values:
        if args.p is not None:
            chk = theorem1_check(args.p, args.t, D, args.budget)
            out.emit(chk.to_dict())
            negative |= chk.status == "Excluded"
        else:
            v = membership(args.n, D, args.budget)
            out.emit(v.to_dict())
            negative |= not v.is_member
    return 1 if negative and args.strict else 0


# witness ----------------------------------------------------------------


def cmd_witness(args, out: Output) -> int:
    try:
        if args.target is not None:
            plan = witness_for_value(args.n, args.target, args.budget)
        elif args.n == 25:
            plan = witness_5cubed(args.q)
        elif args.level == 4:
            plan = witness_3p4(args.q)
        elif args.q % 9 == 1 and classify_mod3(args.q).label.value != "Type1":
            plan = witness_3p5_type3(args.q)
        else:
            plan = witness_3p5_mod3(args.q)
    except TypeMismatch as exc:
        out.emit({"error": "TypeMismatch", "message": str(exc)})
        return 1 if args.strict else 0
    rec = plan.to_dict()
    rec["verified"] = plan.verify()
    out.emit(rec)
    return 0


# search -----------------------------------------------------------------


def _spec_from_args(args) -> SearchSpec:
    shard = (0, 1)
    if args.shard:
        i, k = args.shard.split("/")
        shard = (int(i), int(k))
    strata = None
    if args.strata_sums:
        sums = _ints(args.strata_sums)
        fixed = tuple(tuple(_ints(x.replace(":", ","))) for x in (args.fixed or "").split(";") if x)
        strata = Strata(args.strata_modulus or len(sums), sums, fixed)
    return SearchSpec(
        args.p,
        args.t,
        _ints(args.coeffs),
        args.max_degree,
        _ints(args.f1) if args.f1 else None,
        _ints(args.vp_window) if args.vp_window else None,
        strata,
        shard,
        args.budget_nodes,
        not args.no_screen,
    )


def cmd_search(args, out: Output) -> int:
    spec = _spec_from_args(args)
    if args.probe is not None:
        rep = exclusion_probe(spec.p, spec.t, args.probe, spec)
        out.emit(rep.to_dict())
        return 1 if rep.hits and args.strict else 0
    if spec.strata is not None:
        for rec in stratified_family_search(spec.p, spec.t, spec.strata, spec, sample=args.sample, seed=args.seed):
            out.emit(rec.to_dict())
        return 0
    target = args.resume or args.out
    if target:
        try:
            man = run_search(spec, target, resume=bool(args.resume))
        except BudgetExceeded as exc:
            out.emit({"status": "budget-exceeded", "resume": exc.resume_token, "out": target})
            return 0
        out.emit({"status": "complete", "records": man["records"], "out": target, "spec_hash": man["spec_hash"]})
        return 0
    from .search import enumerate_measures

    try:
        for rec in enumerate_measures(spec):
            out.emit(rec.to_dict())
    except BudgetExceeded as exc:
        out.emit({"status": "budget-exceeded", "resume": exc.resume_token})
    return 0


# audit ------------------------------------------------------------------


def cmd_audit(args, out: Output) -> int:
    bad = False
    for path in args.files:
        rep = corpus_audit(read_records(path), args.budget)
        d = rep.to_dict()
        d["file"] = path
        if not args.full:
            d["flagged"] = len(d["flagged"])
        out.emit(d)
        bad |= not rep.clean
    return 1 if bad and args.strict else 0


# tables -----------------------------------------------------------------


def cmd_tables(args, out: Output) -> int:
    out.emit(tables(args.context, args.bound, args.threads).to_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circdet", description="Integer circulant determinants of order 25 and 27.")
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="factoring budget")
    ap.add_argument("--strict", action="store_true", help="exit 1 on negative results")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify")
    c.add_argument("--p", type=int, required=True, choices=(3, 5))
    c.add_argument("--q", type=int, nargs="+", required=True)
    c.add_argument("--context", choices=("mod5", "mod3", "mod9"))
    c.set_defaults(func=cmd_classify)

    m = sub.add_parser("member")
    m.add_argument("--n", type=int, choices=(25, 27), default=25)
    m.add_argument("--p", type=int)
    m.add_argument("--t", type=int)
    m.add_argument("values", type=int, nargs="+")
    m.set_defaults(func=cmd_member)

    w = sub.add_parser("witness")
    w.add_argument("--n", type=int, choices=(25, 27), required=True)
    g = w.add_mutually_exclusive_group(required=True)
    g.add_argument("--target", type=int)
    g.add_argument("--q", type=int)
    w.add_argument("--level", type=int, choices=(4, 5), default=4)
    w.set_defaults(func=cmd_witness)

    s = sub.add_parser("search")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--coeffs", default="-1,0,1")
    s.add_argument("--max-degree", type=int, default=12)
    s.add_argument("--f1")
    s.add_argument("--vp-window")
    s.add_argument("--shard")
    s.add_argument("--out")
    s.add_argument("--resume")
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--no-screen", action="store_true")
    s.add_argument("--probe", type=int, help="exclusion probe for measure +-p^J")
    s.add_argument("--strata-modulus", type=int)
    s.add_argument("--strata-sums")
    s.add_argument("--fixed", help="pinned coefficients as pos:val;pos:val")
    s.add_argument("--sample", type=int)
    s.set_defaults(func=cmd_search)

    a = sub.add_parser("audit")
    a.add_argument("files", nargs="+")
    a.add_argument("--full", action="store_true", help="list every flagged record")
    a.set_defaults(func=cmd_audit)

    t = sub.add_parser("tables")
    t.add_argument("--context", choices=sorted(CONTEXTS), default="mod5")
    t.add_argument("--bound", type=int, default=5000)
    t.set_defaults(func=cmd_tables)
    return ap


def run(argv=None, stream=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    out = Output(args.fmt, stream)
    try:
        return args.func(args, out)
    except (CircdetError, ValueError, ArithmeticError) as exc:
        out.emit({"error": type(exc).__name__, "message": str(exc)})
        return 2


def main() -> None:
    sys.exit(run())
