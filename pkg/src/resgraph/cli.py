"""``resgraph`` command line.

Exit codes: 0 success, 2 invalid input (bad source, contractibility, parameter
ranges), 1 internal error or a failed verification.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import os
import sys
import traceback
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from . import del_pezzo
from .classify import NotNegativeDefinite, analyze, classify, smoothability
from .dsl import GRAMMAR, DslError, DslSyntaxError, ReportDocument, emit_report, format_shape, parse_graph, rational
from .graph_core import ForkedChain, GraphError, NotContractible, chain, forked_chain, is_negative_definite
from .hj import CyclicType, DuValMarker, TParams, dual, from_chain, t_singularity_params, to_chain
from .invariants import codiscrepancy, milnor_number
from .lefschetz import lefschetz_sum, solve_two_point

FORMATS = ("json", "text")
EPILOG = "graph source (inline text or a file path):\n" + GRAMMAR


class InvalidInput(Exception):
    pass


@dataclass
class Outcome:
    code: int
    doc: Optional[ReportDocument] = None
    text: str = ""


def read_source(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as f:
            return f.read()
    return arg


def _graph_report(source_arg: str):
    src = read_source(source_arg)
    g = parse_graph(src)
    return src, analyze(g)


# ---------------------------------------------------------------- subcommands


def cmd_invariants(args) -> Outcome:
    src, rep = _graph_report(args.source)
    doc = emit_report(rep, src)
    r = doc.results
    lines = [f"{k}: {v}" for k, v in r.items() if not isinstance(v, (dict, list))]
    lines.append("delta: " + " ".join(f"{k}={v}" for k, v in r["delta"].items()))
    lines.append("Z: " + " ".join(f"{k}={v}" for k, v in r["fundamental_cycle"]["Z"].items()))
    lines.append(f"mult: {r['fundamental_cycle']['mult']}  p_a(Z): {r['fundamental_cycle']['pa']}")
    lines.append(f"milnor: {r['milnor']['value']} ({r['milnor']['qualifier']})")
    lines.append(f"verdict: {r['verdict']['status']} ({r['verdict']['provenance']})")
    return Outcome(0, doc, "\n".join(lines))


def _verdict_fields(rep) -> dict:
    cls, vd = rep.klass, rep.verdict
    return {
        "class": cls.tag,
        "dv_or_ndv": cls.dv_or_ndv,
        "ade": cls.ade,
        "index": rep.codiscrepancy.index,
        "K2": rational(rep.codiscrepancy.K2),
        "mult": rep.fundamental.mult,
        "rational": rep.rational,
        "verdict": vd.status,
        "mu": vd.mu,
        "provenance": vd.provenance,
    }


def _sweep_index2(max_vertices: int, max_weight: int) -> list[dict]:
    out = []
    for s in range(1, max_vertices - 3):
        for spine in _spines(s, max_weight):
            g = forked_chain(spine)
            if is_negative_definite(g) != "Definite":
                continue
            cls = classify(g)
            vd = smoothability(g, cls)
            out.append({
                "spine": list(spine),
                "class": cls.tag,
                "K2": rational(codiscrepancy(g).K2),
                "verdict": vd.status,
                "mu": vd.mu,
            })
    return out


def _spines(s: int, max_weight: int):
    # spines up to reversal, lexicographically smaller representative
    def rec(prefix):
        if len(prefix) == s:
            t = tuple(prefix)
            if t <= t[::-1]:
                yield t
            return
        for w in range(2, max_weight + 1):
            yield from rec(prefix + [w])

    yield from rec([])


def cmd_classify(args) -> Outcome:
    if args.sweep:
        rows = _sweep_index2(args.max_vertices, args.max_weight)
        doc = ReportDocument(
            f"classify --sweep --max-vertices {args.max_vertices} --max-weight {args.max_weight}",
            {"index2_spines": rows},
        )
        text = "\n".join(
            f"{format_shape(ForkedChain(tuple(r['spine'])))}: "
            f"K2={r['K2']} {r['verdict']}" + (f" mu={r['mu']}" if r["mu"] is not None else "")
            for r in rows
        )
        return Outcome(0, doc, text)
    if args.source is None:
        raise InvalidInput("classify needs a graph source (or --sweep)")
    src, rep = _graph_report(args.source)
    fields = _verdict_fields(rep)
    doc = ReportDocument(src, fields)
    text = (
        f"{fields['class']}"
        + (f" {fields['ade']}" if fields["ade"] else "")
        + (f" ({fields['dv_or_ndv']})" if fields["dv_or_ndv"] != "NA" else "")
        + f"  index {fields['index']}  K2 {fields['K2']}\n"
        + f"{fields['verdict']}" + (f"  mu={fields['mu']}" if fields["mu"] is not None else "")
        + f"  [{fields['provenance']}]"
    )
    return Outcome(0, doc, text)


def cmd_hj(args) -> Outcome:
    try:
        c = CyclicType(args.r, args.q)
    except ValueError as e:
        raise InvalidInput(str(e)) from None
    ch = to_chain(c)
    tp = t_singularity_params(c)
    if isinstance(tp, TParams):
        t = {"kind": "T", "d": tp.d, "n": tp.n, "a": tp.a}
        ttxt = f"T-singularity 1/({tp.d}*{tp.n}^2)(1, {tp.d}*{tp.n}*{tp.a}-1)"
    elif isinstance(tp, DuValMarker):
        t = {"kind": "DuVal", "k": tp.k}
        ttxt = f"Du Val A{tp.k}"
    else:
        t = None
        ttxt = "not a T-singularity"
    d = dual(c)
    results = {
        "r": c.r,
        "q": c.q,
        "chain": ch,
        "dual": [d.r, d.q],
        "dual_chain": to_chain(d),
        "t_params": t,
    }
    assert from_chain(ch) == c
    text = f"1/{c.r}(1,{c.q}) = [{','.join(map(str, ch))}]\n{ttxt}"
    return Outcome(0, ReportDocument(f"hj {args.r} {args.q}", results), text)


def cmd_verify_table(args) -> Outcome:
    if (args.row is None) != (args.n is None):
        raise InvalidInput("--row and --n go together")
    if args.row is not None:
        try:
            v = del_pezzo.verify_row(args.row, args.n)
        except del_pezzo.RowParameterOutOfRange as e:
            raise InvalidInput(str(e)) from None
        rows, ok = [v], v.ok
        doc = emit_report(v)
    else:
        tv = del_pezzo.verify_theorem_main()
        rows, ok = list(tv.rows), tv.ok
        doc = emit_report(tv)
    lines = [f"{'row':>3} {'n':>3}  {'o':<10} {'rhoY':>4} {'K2X':>4} {'mu':>3} {'sum':>4}  status"]
    for v in rows:
        lines.append(
            f"{v.row_id:>3} {v.n:>3}  {v.o_class:<10} {v.rhoY:>4} {str(v.K2X):>4} "
            f"{'-' if v.mu_sum is None else v.mu_sum:>3} "
            f"{'-' if v.noether_sum is None else str(v.noether_sum):>4}  "
            f"{'ok' if v.ok else 'FAIL'} ({v.existence})"
        )
    if args.row is None:
        for r in del_pezzo.TABLE:
            lines.append(
                f"row {r.row_id}: declared n in {list(r.n_range)}, derived {list(tv.derived_ranges[r.row_id])}"
            )
        lines.append(f"{sum(v.ok for v in rows)}/{len(rows)} cells ok; table {'ok' if ok else 'FAILED'}")
    return Outcome(0 if ok else 1, doc, "\n".join(lines))


def t_sweep(max_r: int) -> dict:
    """Cyclic types with ``r <= max_r``: integral K^2 versus the T-congruence, and mu = d - 1."""
    checked = exceptions = 0
    bad = []
    for r in range(2, max_r + 1):
        for q in range(1, r):
            try:
                c = CyclicType(r, q)
            except ValueError:
                continue
            checked += 1
            integral = codiscrepancy(chain(to_chain(c))).K2.denominator == 1
            congruent = t_singularity_params(c) is not None
            if integral != congruent:
                exceptions += 1
                bad.append([r, q])
    mu_checked = 0
    mu_bad = []
    for n in range(2, int(max_r ** 0.5) + 1):
        for d in range(1, max_r // (n * n) + 1):
            for a in range(1, n):
                if gcd(a, n) != 1:
                    continue
                tp = TParams(d, n, a)
                g = chain(to_chain(tp.cyclic_type))
                mu = milnor_number(g).value
                mu_checked += 1
                if mu != d - 1:
                    mu_bad.append([d, n, a])
    return {
        "max_r": max_r,
        "types_checked": checked,
        "equivalence_exceptions": exceptions,
        "exceptions": bad,
        "t_singularities_checked": mu_checked,
        "milnor_exceptions": mu_bad,
    }


def cmd_sweep_t(args) -> Outcome:
    res = t_sweep(args.max_r)
    ok = res["equivalence_exceptions"] == 0 and not res["milnor_exceptions"]
    text = (
        f"cyclic types with r <= {args.max_r}: {res['types_checked']}, "
        f"K2 integral <=> T-congruence exceptions: {res['equivalence_exceptions']}\n"
        f"T-singularities dn^2 <= {args.max_r}: {res['t_singularities_checked']}, "
        f"mu != d-1: {len(res['milnor_exceptions'])}"
    )
    return Outcome(0 if ok else 1, ReportDocument(f"sweep-t-singularities --max-r {args.max_r}", res), text)


def cmd_lefschetz(args) -> Outcome:
    N = args.order
    if N < 2 or any(N % p == 0 for p in range(2, int(N ** 0.5) + 1)):
        raise InvalidInput(f"--order must be a prime, got {N}")
    sols = sorted(solve_two_point(N))
    for s in sols:
        assert lefschetz_sum(N, list(s)) == 1
    results = {
        "order": N,
        "tuples_searched": (N - 1) ** 4,
        "classes": [[list(p) for p in s] for s in sols],
    }
    text = f"order {N}: {len(sols)} class(es) with Lefschetz sum 1\n" + "\n".join(
        " ".join(f"({a},{b})" for a, b in s) for s in sols
    )
    return Outcome(0, ReportDocument(f"lefschetz --order {N}", results), text)


# ---------------------------------------------------------------- plumbing


def build_parser() -> argparse.ArgumentParser:
    default_fmt = os.environ.get("RESGRAPH_FORMAT", "json")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_fmt,
                        help="output format (default from RESGRAPH_FORMAT, else json)")
    kw = dict(epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter, parents=[common])
    p = argparse.ArgumentParser(
        prog="resgraph", description="Invariants and smoothability of surface singularities from dual graphs.",
        **kw,
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classification and smoothability verdict", **kw)
    c.add_argument("source", nargs="?", help="inline graph text or a file path")
    c.add_argument("--sweep", action="store_true", help="enumerate index-2 forked chains [n1..ns; [2]^4]")
    c.add_argument("--max-vertices", type=int, default=8)
    c.add_argument("--max-weight", type=int, default=6)
    c.set_defaults(func=cmd_classify)

    i = sub.add_parser("invariants", help="full invariant report", **kw)
    i.add_argument("source", help="inline graph text or a file path")
    i.set_defaults(func=cmd_invariants)

    h = sub.add_parser("hj", help="chain and T-parameters of 1/r(1,q)", **kw)
    h.add_argument("r", type=int)
    h.add_argument("q", type=int)
    h.set_defaults(func=cmd_hj)

    v = sub.add_parser("verify-table", help="verify the del Pezzo fibration table", **kw)
    v.add_argument("--row", type=int)
    v.add_argument("--n", type=int)
    v.set_defaults(func=cmd_verify_table)

    t = sub.add_parser("sweep-t-singularities", help="K^2 integrality vs T-congruence sweep", **kw)
    t.add_argument("--max-r", type=int, default=200)
    t.set_defaults(func=cmd_sweep_t)

    lf = sub.add_parser("lefschetz", help="two-fixed-point Lefschetz solutions mod a prime", **kw)
    lf.add_argument("--order", type=int, required=True)
    lf.set_defaults(func=cmd_lefschetz)
    return p


def _error(echo: str, code: int, kind: str, message: str, **extra) -> Outcome:
    err = {"kind": kind, "message": message, **extra}
    doc = ReportDocument(echo, {"error": err})
    return Outcome(code, doc, f"error ({kind}): {message}")


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run one invocation; returns (exit code, stdout, stderr)."""
    parser = build_parser()
    out_buf, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out_buf), contextlib.redirect_stderr(err):
            args = parser.parse_args(list(argv))
    except SystemExit as e:
        return int(e.code or 0), out_buf.getvalue(), err.getvalue()
    fmt = args.format
    if fmt not in FORMATS:
        return 2, "", f"RESGRAPH_FORMAT must be one of {', '.join(FORMATS)}, got {fmt!r}\n"
    echo = " ".join(argv)
    try:
        out = args.func(args)
    except DslError as e:
        out = _error(echo, 2, "syntax" if isinstance(e, DslSyntaxError) else "semantic",
                     e.reason, line=e.line, col=e.col)
    except (NotNegativeDefinite, NotContractible) as e:
        out = _error(echo, 2, "not_contractible", str(e))
    except (InvalidInput, GraphError) as e:
        out = _error(echo, 2, "invalid_input", str(e))
    except Exception as e:  # noqa: BLE001 - reported as an internal error
        out = _error(echo, 1, "internal", f"{type(e).__name__}: {e}")
        err.write(traceback.format_exc())
    if fmt == "json":
        stdout = out.doc.to_json() if out.doc else ""
    else:
        stdout = out.text + "\n"
    return out.code, stdout, err.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
