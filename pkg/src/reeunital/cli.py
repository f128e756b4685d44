"""Command line interface.

Exit codes: 0 pass, 1 a check failed, 2 usage error, 3 inconclusive
(search budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .embed import DEFAULT_BUDGET

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _budget(text: str) -> int:
    try:
        n = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return n


# -- run-suite --------------------------------------------------------------------------

def cmd_run_suite(args) -> int:
    from .report import UsageError, run_suite, to_json, to_text

    cert_dir, prefix = None, "report"
    if args.json and args.json != "-":
        cert_dir = Path(args.json).resolve().parent
        prefix = Path(args.json).stem
    elif args.cert_dir:
        cert_dir = Path(args.cert_dir)
    try:
        rep = run_suite(args.selector, args.include_long, args.budget, cert_dir, prefix)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    timing = not args.no_timing
    if args.json == "-":
        sys.stdout.write(to_json(rep, timing))
        return rep.exit_code
    if args.json:
        try:
            Path(args.json).write_text(to_json(rep, timing))
        except OSError as exc:
            print(f"error: cannot write report to {args.json}: {exc}", file=sys.stderr)
            return EXIT_FAIL
    if args.text:
        try:
            Path(args.text).write_text(to_text(rep, timing))
        except OSError as exc:
            print(f"error: cannot write report to {args.text}: {exc}", file=sys.stderr)
            return EXIT_FAIL
    sys.stdout.write(to_text(rep, timing))
    return rep.exit_code


# -- design -----------------------------------------------------------------------------

def _load_design(spec: str | None):
    from .conic import build_context
    from .design import IncidenceDesign, build_ree_unital, fano

    if spec in (None, "r3", "R3"):
        return build_ree_unital(build_context())
    if spec == "fano":
        return fano()
    return IncidenceDesign.load(spec)


def cmd_design(args) -> int:
    from .design import DesignError, validate

    try:
        d = _load_design(getattr(args, "design", None))
    except (DesignError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.action == "dump":
        text = d.to_text()
        if args.out:
            d.save(args.out)
        else:
            sys.stdout.write(text)
        return EXIT_PASS
    rep = validate(d, args.t, args.k, args.lam)
    print(_dump({"ok": rep.ok, "params": rep.params, "counterexample": rep.counterexample}))
    return EXIT_PASS if rep.ok else EXIT_FAIL


# -- group ------------------------------------------------------------------------------

def _group(name: str):
    from .conic import build_context
    from .design import automorphism_group, build_ree_unital
    from .groups import psl2

    if name == "ree3":
        return automorphism_group(build_ree_unital(build_context()))
    if name.startswith("psl2-"):
        return psl2(int(name.split("-", 1)[1]))
    raise ValueError(f"unknown group {name!r} (ree3 or psl2-<q>)")


def cmd_group(args) -> int:
    from .groups import commuting_graph, involutions

    try:
        G = _group(args.group)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.action == "order":
        print(G.order())
    elif args.action == "involutions":
        invs = involutions(G)
        print(_dump({"count": len(invs)}))
    else:
        cg = commuting_graph(G)
        out = {"vertices": len(cg.vertices), "edges": len(cg.edges), "connected": cg.is_connected()}
        if args.components:
            out["component_sizes"] = cg.component_sizes()
            out["components_are_cliques"] = all(cg.is_clique(c) for c in cg.components)
        print(_dump(out))
    return EXIT_PASS


# -- pentagons --------------------------------------------------------------------------

def cmd_pentagons(args) -> int:
    from .conic import build_context
    from .pentagons import d_lines, enumerate_pentagons, fundamental_pentagon, verify_penta_props

    ctx = build_context()
    P = ctx.plane
    if args.action == "enumerate":
        pents = enumerate_pentagons(ctx)
        out = {"count": len(pents), "all_A4_type": all(p.a4_type for p in pents)}
        if args.report:
            out["pentagons"] = [
                {"A": P.fmt_point(p.apex), "C": [P.fmt_point(c) for c in p.others], "stabilizer": p.stabilizer_order}
                for p in pents
            ]
        print(_dump(out))
        return EXIT_PASS
    pents = enumerate_pentagons(ctx) if args.all else [fundamental_pentagon(ctx)]
    results = []
    for p in pents:
        rep = verify_penta_props(ctx, p)
        rec = {"A": P.fmt_point(p.apex), "ok": rep.ok, "claims": rep.claims}
        if not args.all:
            rec["d_lines"] = {"".join(map(str, k)): P.fmt_line(v) for k, v in d_lines(ctx, p).items()}
        results.append(rec)
    ok = all(r["ok"] for r in results)
    print(_dump({"checked": len(results), "ok": ok, "results": results if not args.all else
                 [r for r in results if not r["ok"]]}))
    return EXIT_PASS if ok else EXIT_FAIL


# -- symbolic ---------------------------------------------------------------------------

def cmd_symbolic(args) -> int:
    from .symbolic import verify_thm1_identities

    r = verify_thm1_identities()
    for ident in r["identities"]:
        print(f"{ident['name']} [{ident['over']}]: residual = {ident['residual']}")
    for dp in r["d_points"]:
        print(f"{dp['name']} from joins/meets: {'ok' if dp['ok'] else 'MISMATCH'}")
    print(f"v^3+v^2+1 irreducible over GF(2): {r['v3_v2_1_irreducible_over_GF2']}")
    return EXIT_PASS if r["ok"] else EXIT_FAIL


# -- embed ------------------------------------------------------------------------------

def cmd_embed(args) -> int:
    from .design import DesignError
    from .embed import SearchConfig, search
    from .field import FieldError, parse_field
    from .plane import pg

    try:
        d = _load_design(args.design)
        F = parse_field(args.plane)
    except (DesignError, FieldError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = SearchConfig(level=args.level, budget=args.budget, fanout=args.fanout, cert_path=args.cert,
                       first_only=args.first)
    out = search(d, pg(F), cfg)
    print(_dump({"plane": F.spec_string(), "status": out.status, "embeddings": len(out.embeddings),
                 "search": out.digest}))
    return {"found": EXIT_PASS, "none": EXIT_PASS, "inconclusive": EXIT_INCONCLUSIVE}[out.status]


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="reeunital", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    rs = sub.add_parser("run-suite", help="run verification checks")
    rs.add_argument("selector", nargs="?", default="all",
                    help="all | census | groups | pentagons | soc | thm1 | embed-pg8 | embed-pg9 | embed-pg16")
    rs.add_argument("--include-long", action="store_true", help="include the long searches in 'all'")
    rs.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET, help="node budget per search")
    rs.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    rs.add_argument("--text", metavar="PATH", help="also write the one-line-per-check text report")
    rs.add_argument("--no-timing", action="store_true", help="omit wall-time fields")
    rs.add_argument("--cert-dir", help="where to write certificates when no JSON path is given")
    rs.set_defaults(func=cmd_run_suite)

    ds = sub.add_parser("design", help="dump or validate a design")
    ds.add_argument("action", choices=["dump", "validate"])
    ds.add_argument("design", nargs="?", default="r3", help="r3, fano, or a design file")
    ds.add_argument("--out")
    ds.add_argument("--t", type=int, default=2)
    ds.add_argument("--k", type=int, default=4)
    ds.add_argument("--lam", type=int, default=1)
    ds.set_defaults(func=cmd_design)

    gr = sub.add_parser("group", help="group computations")
    gr.add_argument("action", choices=["order", "involutions", "commuting-graph"])
    gr.add_argument("--group", default="ree3", help="ree3 or psl2-<q>")
    gr.add_argument("--components", action="store_true")
    gr.set_defaults(func=cmd_group)

    pe = sub.add_parser("pentagons", help="external pentagons of PG(2,8)")
    pe.add_argument("action", choices=["enumerate", "verify-prop"])
    pe.add_argument("--report", action="store_true")
    pe.add_argument("--all", action="store_true")
    pe.set_defaults(func=cmd_pentagons)

    sy = sub.add_parser("symbolic", help="polynomial identities")
    sy.add_argument("action", choices=["verify-thm1"])
    sy.set_defaults(func=cmd_symbolic)

    em = sub.add_parser("embed", help="embedding search")
    em.add_argument("action", choices=["search"])
    em.add_argument("--design", default="r3")
    em.add_argument("--plane", default="8", help="field order or spec string, e.g. 9 or 'GF(3^2; 2,2,1)'")
    em.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET)
    em.add_argument("--cert", help="certificate output path")
    em.add_argument("--level", type=int, choices=[0, 1, 2], default=2, help="symmetry reduction level")
    em.add_argument("--fanout", type=int, default=1, help="worker processes")
    em.add_argument("--first", action="store_true", help="stop at the first embedding")
    em.set_defaults(func=cmd_embed)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
