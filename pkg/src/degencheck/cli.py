"""Command-line interface.

Exit status: 0 when every requested check passes, 1 when a check fails
(reports are still printed), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import IDENTITIES, annihilator_dimension, is_nilpotent, lcs_dimensions
from .catalog import RIGID, Catalog, NotFound, builtin
from .degeneration import ExcludedParameter, verify_all, verify_certificate
from .derivations import derivation_analysis
from .expr import ALIASES, ParseError
from .arith import EvaluationPole

SCHEMA = 1
PARAM_ALIASES = {"a": "alpha", **ALIASES}


class UsageError(Exception):
    pass


def _parse_param(text: str) -> tuple[str, Fraction]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected <sym>=<rational>, got {text!r}")
    sym, value = text.split("=", 1)
    sym = sym.strip()
    try:
        return PARAM_ALIASES.get(sym, sym), Fraction(value.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--param", action="append", type=_parse_param, default=[],
                        metavar="SYM=RATIONAL", help="fix a parameter (e.g. alpha=2)")
    common.add_argument("--file", action="append", default=[], metavar="PATH",
                        help="load extra algebras/certificates from a text file")

    p = argparse.ArgumentParser(prog="degencheck", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", parents=[common], help="list algebras and certificates")
    ident = sub.add_parser("identities", parents=[common], help="check polynomial identities")
    ident.add_argument("names", nargs="*")
    ident.add_argument("--check", default="tortkara,malcev,jacobi,metabelian",
                       help="comma-separated subset of " + ",".join(IDENTITIES))
    dd = sub.add_parser("derdim", parents=[common], help="dimension of the derivation algebra")
    dd.add_argument("names", nargs="*")
    inv = sub.add_parser("invariants", parents=[common], help="lcs, annihilator and dim Der")
    inv.add_argument("names", nargs="*")
    ver = sub.add_parser("verify", parents=[common], help="verify degeneration certificates")
    ver.add_argument("ids", nargs="*", help="certificate ids such as T19->T00")
    sub.add_parser("verify-all", parents=[common], help="verify every built-in certificate")
    return p


def _catalog(args) -> tuple[Catalog, list]:
    cat = builtin()
    start = len(cat.certificates)
    for path in args.file:
        with open(path, encoding="utf-8") as fh:
            cat.load_text(fh.read())
    return cat, cat.certificates[start:]


def _algebras(cat: Catalog, names, params: dict):
    names = names or list(cat.algebras)
    out = []
    for name in names:
        A = cat.get(name)
        bind = {k: v for k, v in params.items() if k in A.params}
        if bind:
            A = A.specialize(bind)
        out.append(A)
    return out


def _fmt_params(params: dict) -> dict:
    return {k: str(v) for k, v in sorted(params.items())}


def cmd_list(args, cat, extra):
    algs = [{"name": A.name, "dim": A.dim, "params": sorted(A.params)} for A in cat.algebras.values()]
    certs = [c.id for c in cat.certificates]
    if args.json:
        return {"algebras": algs, "certificates": certs}, True
    lines = ["algebras:"]
    for a in algs:
        ps = f" ({', '.join(a['params'])})" if a["params"] else ""
        lines.append(f"  {a['name']}  dim {a['dim']}{ps}")
    lines.append("certificates:")
    lines += [f"  {c}" for c in certs]
    return lines, True


def cmd_identities(args, cat, extra):
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    unknown = [c for c in checks if c not in IDENTITIES]
    if unknown:
        raise UsageError(f"unknown identity {', '.join(unknown)}; choose from {', '.join(IDENTITIES)}")
    results = []
    ok = True
    for A in _algebras(cat, args.names, args.params):
        row = {"algebra": A.name, "checks": {}}
        for c in checks:
            w = IDENTITIES[c](A)
            row["checks"][c] = {"status": "pass"} if w is None else {"status": "fail", "witness": str(w)}
            ok &= w is None
        results.append(row)
    if args.json:
        return results, ok
    lines = []
    for row in results:
        for c, r in row["checks"].items():
            tail = f"  [{r['witness']}]" if "witness" in r else ""
            lines.append(f"{row['algebra']} {c}: {r['status']}{tail}")
    return lines, ok


def _derdim_row(A):
    res = derivation_analysis(A)
    return {
        "algebra": A.name,
        "dim_der": res.dimension,
        "assumed_nonzero": [str(x) for x in res.assumed_nonzero],
        "provenance": "published" if A.name in RIGID and not A.params else "computed",
    }


def cmd_derdim(args, cat, extra):
    rows = [_derdim_row(A) for A in _algebras(cat, args.names, args.params)]
    if args.json:
        return rows, True
    lines = []
    for r in rows:
        line = f"{r['algebra']} {r['dim_der']}"
        if r["assumed_nonzero"]:
            line += "  (generic; assuming " + ", ".join(f"{e} != 0" for e in r["assumed_nonzero"]) + ")"
        lines.append(line)
    return lines, True


def cmd_invariants(args, cat, extra):
    rows = []
    for A in _algebras(cat, args.names, args.params):
        row = _derdim_row(A)
        row["lcs"] = lcs_dimensions(A)
        row["annihilator"] = annihilator_dimension(A)
        row["nilpotent"] = is_nilpotent(A)
        rows.append(row)
    if args.json:
        return rows, True
    return [f"{r['algebra']} lcs={r['lcs']} ann={r['annihilator']} der={r['dim_der']} "
            f"nilpotent={'yes' if r['nilpotent'] else 'no'}" for r in rows], True


def _report_output(args, reports):
    ok = all(r.verified and r.dim_der_strict is not False for r in reports)
    if args.json:
        return [r.to_dict() for r in reports], ok
    lines = []
    for r in reports:
        lines.append(r.summary())
        lines += [f"  {d}" for d in r.discrepancies]
    lines.append(f"{sum(r.verified for r in reports)}/{len(reports)} verified")
    return lines, ok


def cmd_verify(args, cat, extra):
    certs = [cat.certificate(i) for i in args.ids] + list(extra)
    if not certs:
        raise UsageError("no certificate given (use ids such as T19->T00 or --file)")
    reports = []
    for c in certs:
        bind = {k: v for k, v in args.params.items()
                if k in c.family.params or k in cat.get(c.source).params or k in cat.get(c.target).params}
        reports.append(verify_certificate(c, cat, assignment=bind or None))
    return _report_output(args, reports)


def cmd_verify_all(args, cat, extra):
    if args.params:
        raise UsageError("verify-all checks the certificates symbolically; use 'verify --param' instead")
    workers = int(os.environ.get("DEGENCHECK_THREADS", "1") or 1)
    return _report_output(args, verify_all(cat, workers=workers))


COMMANDS = {
    "list": cmd_list,
    "identities": cmd_identities,
    "derdim": cmd_derdim,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
    "verify-all": cmd_verify_all,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    args.params = dict(args.param)
    try:
        cat, extra = _catalog(args)
        payload, ok = COMMANDS[args.command](args, cat, extra)
    except (UsageError, ExcludedParameter, EvaluationPole, NotFound, ParseError, OSError) as e:
        print(f"degencheck: error: {e}", file=err)
        return 2
    if args.json:
        doc = {"schema": SCHEMA, "command": args.command, "params": _fmt_params(args.params),
               "ok": ok, "results": payload}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(payload) + "\n")
    return 0 if ok else 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
