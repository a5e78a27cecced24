"""Command-line entry point ``tp``.

Every subcommand prints one JSON document on standard output and a short
summary on standard error.  Exit codes: 0 success, 2 domain or usage error
(with a JSON error document), 1 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import jsonschema

from . import io as tio
from . import reproduce as rep
from .core import ThermalError, make_context
from .decompose import (approx_bound, approx_bound_terms, build_P, klevel_generators,
                        min_l1_to, mixture_decomposable, product_decomposable, reach2_closure)
from .duality import conjecture1_scan, conjugate, duality_report, is_self_dual
from .render import curve_csv, curves_csv, curves_svg
from .thermo import curve, find_tp, thermomajorizes
from .thresholds import (allocation_total, construct_threshold_tp, find_threshold_roots,
                         threshold_pairs, undetermined_pairs)
from .vertices import (DEFAULT_CAP, catalog3, enumerate_vertices, generating_set_names,
                       name_vertices, regime)


class UsageError(ThermalError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input helpers -------------------------------------------------------------------

def _load(path, schema_name=None):
    data = tio.load_json(path)
    if schema_name is not None:
        jsonschema.validate(data, tio.schema(schema_name))
    return data


def _mode(args):
    mode = args.mode or os.environ.get("TP_MODE") or None
    if mode not in (None, "exact", "float"):
        raise UsageError(f"TP_MODE must be 'exact' or 'float', got {mode!r}")
    return mode


def _ctx(args):
    data = _load(args.ctx, "context")
    return tio.context_from_json(data, mode=_mode(args), eps=args.eps,
                                 rationalize_floats=args.rationalize)


def _state(ctx, path, args):
    data = tio.load_json(path)
    if isinstance(data, list):
        data = {"p": data}
    jsonschema.validate(data, tio.schema("state"))
    return tio.state_from_json(ctx, data, args.rationalize)


def _matrix(ctx, path, args):
    data = tio.load_json(path)
    if isinstance(data, list):
        data = {"matrix": data}
    jsonschema.validate(data, tio.schema("matrix"))
    return tio.matrix_from_json(ctx, data, args.rationalize)


def _levels(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad level list {text!r}") from None


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _named_matrices(ctx, verts):
    names = name_vertices(ctx, verts)
    out = []
    for n, v in zip(names, verts):
        row = {"matrix": tio.encode_matrix(v)}
        if n is not None:
            row["name"] = n
        out.append(row)
    return out


# -- subcommands ------------------------------------------------------------------------

def cmd_vertices(args):
    ctx = _ctx(args)
    vs = enumerate_vertices(ctx, cap=args.cap, jobs=args.jobs)
    res = {"context": tio.context_to_json(ctx), "count": len(vs),
           "regime": vs.regime.value if vs.regime else None,
           "vertices": _named_matrices(ctx, list(vs))}
    if args.out:
        _write(args.out, json.dumps({"vertices": res["vertices"]}, indent=2) + "\n")
    return res, f"{len(vs)} vertices at d = {ctx.d}"


def cmd_catalog3(args):
    ctx = _ctx(args)
    cat = catalog3(ctx)
    res = {"context": tio.context_to_json(ctx), "regime": regime(ctx).value,
           "entries": [{"name": n, "matrix": tio.encode_matrix(t)} for n, t in cat.items()],
           "generating_set": generating_set_names(ctx)}
    return res, f"{len(cat)} catalog processes ({res['regime']})"


def cmd_curve(args):
    ctx = _ctx(args)
    p = _state(ctx, args.state, args)
    c = curve(ctx, p)
    if args.csv:
        _write(args.csv, curve_csv(c))
    if args.svg:
        _write(args.svg, curves_svg([("p", c)]))
    res = {"order": list(c.order.one_based()),
           "classes": [[i + 1 for i in cl] for cl in c.order.classes],
           "degenerate": c.order.degenerate,
           "elbows": [[tio.encode_scalar(x), tio.encode_scalar(y)] for x, y in c.elbows]}
    return res, "beta-order (1-based) " + "".join(map(str, res["order"]))


def cmd_check(args):
    ctx = _ctx(args)
    p = _state(ctx, getattr(args, "from"), args)
    r = _state(ctx, args.to, args)
    maj = thermomajorizes(ctx, p, r)
    res = {"thermomajorizes": maj.holds,
           "violating_elbow": None if maj.witness is None else tio.encode(maj.witness)}
    if args.witness:
        t = find_tp(ctx, p, r)
        res["witness_found"] = t is not None
        if t is not None:
            _write(args.witness, json.dumps({"matrix": tio.encode_matrix(t)}, indent=2) + "\n")
    return res, "reachable" if maj.holds else "not reachable"


def cmd_decompose(args):
    ctx = _ctx(args)
    t = _matrix(ctx, args.matrix, args)
    gens = klevel_generators(ctx, args.k)
    prod = product_decomposable(ctx, t, args.k, args.depth, cap=args.cap, gens=gens)
    res = {"k": args.k, "depth": args.depth, "generators": len(gens) - 1,
           "product": {"found": prod.found, "depth": prod.depth, "explored": prod.explored,
                       "capped": prod.capped,
                       "word": [list(gens[i].levels) for i in prod.sequence]}}
    found = prod.found
    if args.mixtures:
        mx = mixture_decomposable(ctx, t, args.k, args.depth, cap=args.cap, gens=gens)
        res["mixture"] = {"found": mx.found, "products": mx.products, "capped": mx.capped,
                          "combination": [{"weight": tio.encode_scalar(w), "length": len(word)}
                                          for w, word, _ in mx.combination]}
        found |= mx.found
    if found:
        verdict = "decomposable"
    elif args.k < ctx.d and t.same(build_P(ctx)):
        verdict = "proved impossible: unique process for a forced transition"
    else:
        verdict = f"not found up to depth {args.depth}"
    res["verdict"] = verdict
    return res, verdict


def cmd_reach2(args):
    ctx = _ctx(args)
    p = _state(ctx, getattr(args, "from"), args)
    r = _state(ctx, args.to, args)
    rs = reach2_closure(ctx, p, args.depth)
    per = [{"depth": k, "vertices": len(h), "min_l1": tio.encode_scalar(min_l1_to(h, r))}
           for k, h in enumerate(rs.history)]
    res = {"per_depth": per, "fixed_point": rs.fixed_point, "partial": rs.partial}
    try:
        res["bound"] = tio.encode_scalar(approx_bound(ctx))
        printed = approx_bound(ctx, as_printed=True)
        if printed != approx_bound(ctx):
            res["bound_as_printed"] = tio.encode_scalar(printed)
    except ThermalError as exc:
        res["bound"] = None
        res["bound_note"] = str(exc)
    return res, f"min L1 distance {per[-1]['min_l1']} after depth {rs.depth}"


def cmd_pbound(args):
    ctx = _ctx(args)
    res = {}
    for label, printed in (("derived", False), ("as_printed", True)):
        terms = approx_bound_terms(ctx, as_printed=printed)
        res[label] = {"bound": tio.encode_scalar(min(terms.values())),
                      "terms": {k: tio.encode_scalar(v) for k, v in terms.items()}}
    res["variant"] = "as_printed" if args.as_printed else "derived"
    res["bound"] = res[res["variant"]]["bound"]
    res["variants_differ"] = res["derived"]["bound"] != res["as_printed"]["bound"]
    if not res["variants_differ"]:
        del res["as_printed" if not args.as_printed else "derived"]
    return res, f"bound {res['bound']} ({res['variant']})"


def cmd_conjugate(args):
    ctx = _ctx(args)
    t = _matrix(ctx, args.matrix, args)
    c = conjugate(ctx, t)
    res = {"matrix": tio.encode_matrix(c), "self_dual": is_self_dual(ctx, t)}
    return res, "self-dual" if res["self_dual"] else "not self-dual"


def cmd_duality(args):
    ctx = _ctx(args)
    vs = list(enumerate_vertices(ctx, cap=args.cap, jobs=args.jobs))
    r = duality_report(vs)
    res = {"self_dual": [n for n, _ in r.self_dual],
           "pairs": [[a[0], b[0]] for a, b in r.pairs]}
    return res, f"{len(r.self_dual)} self-dual, {len(r.pairs)} pairs"


def cmd_conjecture1(args):
    ctx = _ctx(args)
    rep1 = conjecture1_scan(ctx, depth=args.depth, cap=args.cap)
    res = {"depth": rep1.depth, "k": ctx.d - 1,
           "rows": [{"name": r.name, "self_dual": r.self_dual, "decomposable": r.decomposable,
                     "inconclusive": r.inconclusive} for r in rep1.rows],
           "counterexamples": [r.name for r in rep1.counterexamples]}
    return res, f"{len(rep1.counterexamples)} counterexamples at depth {rep1.depth}"


def cmd_thresholds(args):
    if args.energies is None:
        if args.d is None:
            raise UsageError("thresholds needs --energies or --d")
        d = args.d
        n = len(undetermined_pairs(d))
        res = {"d": d, "count": n, "allocation_total": allocation_total(d)}
        return res, f"{n} threshold temperatures at d = {d}"
    data = tio.load_json(args.energies)
    energies = data["energies"] if isinstance(data, dict) else data
    energies = [float(e) for e in energies]
    d = len(energies)
    if args.d is not None and args.d != d:
        raise UsageError(f"--d {args.d} does not match {d} energies")
    degenerate = len(set(energies)) < d
    res = {"d": d, "degenerate": degenerate, "comparable": not degenerate,
           "count": len(undetermined_pairs(d)), "allocation_total": allocation_total(d)}
    if not args.count_only:
        if degenerate:
            pairs = [find_threshold_roots(energies, A, B) for A, B in undetermined_pairs(d)]
        else:
            pairs = threshold_pairs(energies)
        res["pairs"] = [{"A": list(tp.A), "B": list(tp.B), "beta0": tp.beta0,
                         "roots": list(tp.roots)} for tp in pairs]
    note = " (degenerate spectrum, count not comparable)" if degenerate else ""
    return res, f"{res['count']} undetermined pairs{note}"


def cmd_construct(args):
    ctx = _ctx(args)
    A, B = _levels(args.A), _levels(args.B)
    t = construct_threshold_tp(ctx, A, B, method=args.method)
    res = {"A": list(A), "B": list(B), "method": args.method, "matrix": tio.encode_matrix(t)}
    return res, f"process sending levels {B} into {A}"


def cmd_reproduce(args):
    what = args.what
    if what == "table1":
        if not args.ctx:
            raise UsageError("reproduce table1 needs --ctx")
        ctx = _ctx(args)
        r = rep.table1(ctx, samples=args.samples, seed=args.seed)
        bad = sum(not c["match"] for c in r["cells"])
        return r, f"{len(r['cells']) - bad}/{len(r['cells'])} cells match ({r['regime']})"
    if what == "counts":
        rows = rep.threshold_counts(args.dmax)
        res = {"counts": [rows[d]["count"] for d in sorted(rows)],
               "rows": [rows[d] for d in sorted(rows)]}
        return res, ", ".join(str(c) for c in res["counts"])
    if what == "vertex-counts":
        r = rep.vertex_counts()
        return {"rows": r}, ", ".join(f"{k}: {v['count']}" for k, v in r.items())
    if what == "fig3":
        ctx, curves = rep.fig3_curves()
        if args.svg:
            _write(args.svg, curves_svg(curves))
        if args.csv:
            _write(args.csv, curves_csv(curves))
        res = {"curves": [{"label": lab, "order": list(c.order.one_based()),
                           "elbows": [[float(x), float(y)] for x, y in c.elbows]}
                          for lab, c in curves]}
        return res, f"{len(curves)} curves"
    raise UsageError(f"unknown reproduction target {what!r}")


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"), default=None,
                        help="arithmetic mode (default: TP_MODE or inferred from input)")
    common.add_argument("--eps", type=float, default=None, help="float comparison tolerance")
    common.add_argument("--rationalize", action="store_true",
                        help="convert float inputs to rationals (max denominator 10^6)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--cap", type=int, default=None)

    p = _Parser(prog="tp", description="Thermal Process toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(func=fn)
        return s

    s = add("vertices", cmd_vertices, "enumerate extreme points")
    s.add_argument("--ctx", required=True)
    s.add_argument("--out")
    s = add("catalog3", cmd_catalog3, "closed-form three-level vertices")
    s.add_argument("--ctx", required=True)
    s = add("curve", cmd_curve, "thermomajorization curve")
    s.add_argument("--ctx", required=True)
    s.add_argument("--state", required=True)
    s.add_argument("--svg")
    s.add_argument("--csv")
    s = add("check", cmd_check, "thermomajorization criterion")
    s.add_argument("--ctx", required=True)
    s.add_argument("--from", required=True)
    s.add_argument("--to", required=True)
    s.add_argument("--witness")
    s = add("decompose", cmd_decompose, "search for a k-level decomposition")
    s.add_argument("--ctx", required=True)
    s.add_argument("--matrix", required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--mixtures", action="store_true")
    s = add("reach2", cmd_reach2, "states reachable with two-level processes")
    s.add_argument("--ctx", required=True)
    s.add_argument("--from", required=True)
    s.add_argument("--to", required=True)
    s.add_argument("--depth", type=int, default=8)
    s = add("pbound", cmd_pbound, "distance bound for the two-level approximation")
    s.add_argument("--ctx", required=True)
    s.add_argument("--as-printed", action="store_true")
    s = add("conjugate", cmd_conjugate, "detailed-balance conjugate")
    s.add_argument("--ctx", required=True)
    s.add_argument("--matrix", required=True)
    s = add("duality-report", cmd_duality, "self-dual vertices and conjugate pairs")
    s.add_argument("--ctx", required=True)
    s = add("conjecture1", cmd_conjecture1, "self-dual vertices vs (d-1)-level products")
    s.add_argument("--ctx", required=True)
    s.add_argument("--depth", type=int, default=2)
    s = add("thresholds", cmd_thresholds, "threshold temperatures")
    s.add_argument("--energies")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--d", type=int)
    s = add("construct", cmd_construct, "extremal process between two level sets")
    s.add_argument("--ctx", required=True)
    s.add_argument("--A", required=True, help="comma-separated 0-based levels")
    s.add_argument("--B", required=True, help="comma-separated 0-based levels")
    s.add_argument("--method", choices=("block", "northwest"), default="block")
    s = add("reproduce", cmd_reproduce, "regenerate reference tables and figures")
    s.add_argument("what", choices=("table1", "counts", "vertex-counts", "fig3"))
    s.add_argument("--ctx")
    s.add_argument("--dmax", type=int, default=6)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--svg")
    s.add_argument("--csv")
    return p


_CAP_DEFAULTS = {"vertices": DEFAULT_CAP, "duality-report": DEFAULT_CAP}


def _emit(doc, out):
    out.write(json.dumps(doc, indent=2) + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    command = next((a for a in argv if not a.startswith("-")), "")
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        if args.cap is None:
            args.cap = _CAP_DEFAULTS.get(command, 200_000)
        result, summary = args.func(args)
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"command": command, "ok": False,
               "error": {"type": "io", "message": str(exc)}}, stdout)
        print(f"tp {command}: I/O error: {exc}", file=stderr)
        return 1
    except jsonschema.ValidationError as exc:
        _emit({"command": command, "ok": False,
               "error": {"type": "schema", "message": exc.message}}, stdout)
        print(f"tp {command}: schema violation: {exc.message}", file=stderr)
        return 2
    except (ThermalError, ValueError) as exc:
        kind = "usage" if isinstance(exc, UsageError) else type(exc).__name__
        err = {"type": kind, "message": str(exc)}
        if getattr(exc, "constraint", None):
            err["constraint"] = exc.constraint
        _emit({"command": command, "ok": False, "error": err}, stdout)
        print(f"tp {command}: {exc}", file=stderr)
        return 2
    _emit({"command": command, "ok": True, "result": tio.encode(result)}, stdout)
    print(f"tp {command}: {summary}", file=stderr)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
