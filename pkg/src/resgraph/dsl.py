"""Text grammar for dual graphs and the JSON report format.

Grammar (whitespace and newlines are insignificant, ``#`` starts a comment)::

    graph  := decl+
    decl   := "chain" wlist | "cycle" wlist | "star" INT arms | "fork" wlist
            | "vertex" ID "w=" INT ("g=" INT)? | "edge" ID ID
    arms   := "[" wlist ("," wlist)* "]"
    wlist  := "[" INT ("," INT)* "]"

Shape declarations create vertices ``v0, v1, ...`` numbered across the whole
source, so ``edge`` lines may join them to each other or to named vertices.
``fork [n1,...,ns]`` is the spine with two (-2)-tips at each end; each arm of
``star`` is listed from the curve touching the center outwards.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .graph_core import (
    Chain,
    Cycle,
    DualGraph,
    EllipticVertex,
    ForkedChain,
    GraphError,
    GraphShape,
    QDivisor,
    Star,
    Vertex,
    cycle,
    chain,
    forked_chain,
    star,
)

SCHEMA_VERSION = "1"

GRAMMAR = """\
graph  := decl+
decl   := "chain" wlist | "cycle" wlist | "star" INT arms | "fork" wlist
        | "vertex" ID "w=" INT ("g=" INT)? | "edge" ID ID
arms   := "[" wlist ("," wlist)* "]"
wlist  := "[" INT ("," INT)* "]"
examples: "fork [4]"   "star 2 [[2],[3],[6]]"   "chain [3,5,2]"
          "vertex E w=1 g=1"   "chain [3] chain [2] edge v0 v1"
"""


class DslError(ValueError):
    def __init__(self, line: int, col: int, reason: str):
        super().__init__(f"line {line}, col {col}: {reason}")
        self.line, self.col, self.reason = line, col, reason


class DslSyntaxError(DslError):
    pass


class DslSemanticError(DslError):
    pass


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>-?\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_.']*)|(?P<punct>[\[\],=])"
)
_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_.']*\Z")
KEYWORDS = {"chain", "cycle", "star", "fork", "vertex", "edge"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise DslSyntaxError(line, pos - start + 1, f"unexpected character {src[pos]!r}")
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0
        self.vertices: list[Vertex] = []
        self.edges: list[tuple[str, str]] = []
        self.named_edges: list[tuple[str, str, Token]] = []
        self.where: dict[str, Token] = {}
        self.auto = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, reason: str, tok: Optional[Token] = None):
        t = tok or self.tok
        raise DslSyntaxError(t.line, t.col, reason)

    def take(self, kind: str, text: Optional[str] = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = repr(text) if text else kind
            got = repr(t.text) if t.kind != "eof" else "end of input"
            self.fail(f"expected {want}, got {got}")
        self.i += 1
        return t

    def integer(self) -> int:
        return int(self.take("int").text)

    def wlist(self) -> list[int]:
        self.take("punct", "[")
        ws = [self.integer()]
        while self.tok.text == ",":
            self.i += 1
            ws.append(self.integer())
        self.take("punct", "]")
        return ws

    def arms(self) -> list[list[int]]:
        self.take("punct", "[")
        arms = [self.wlist()]
        while self.tok.text == ",":
            self.i += 1
            arms.append(self.wlist())
        self.take("punct", "]")
        return arms

    def keyword_value(self, key: str) -> int:
        self.take("id", key)
        self.take("punct", "=")
        return self.integer()

    def add_vertex(self, v: Vertex, at: Token):
        if v.id in self.where:
            p = self.where[v.id]
            raise DslSemanticError(
                at.line, at.col, f"duplicate vertex id {v.id!r} (first defined at line {p.line}, col {p.col})"
            )
        if v.genus < 0:
            raise DslSemanticError(at.line, at.col, f"vertex {v.id!r}: negative genus")
        if v.weight < 1 or (v.genus == 0 and v.weight < 2):
            raise DslSemanticError(
                at.line, at.col, f"vertex {v.id!r}: weight {v.weight} < 2 on a genus-0 curve"
            )
        self.vertices.append(v)
        self.where[v.id] = at

    def add_shape(self, g: DualGraph, at: Token):
        rename = {}
        for v in g.vertices:
            rename[v.id] = f"v{self.auto}"
            self.auto += 1
            self.add_vertex(Vertex(rename[v.id], v.weight, v.genus), at)
        self.edges += [(rename[a], rename[b]) for a, b in g.edges]

    def decl(self):
        kw = self.tok
        if kw.kind != "id" or kw.text not in KEYWORDS:
            self.fail(f"expected a declaration ({', '.join(sorted(KEYWORDS))}), got {kw.text or 'end of input'!r}")
        self.i += 1
        try:
            if kw.text == "chain":
                self.add_shape(_shape_graph(chain, self.wlist(), kw), kw)
            elif kw.text == "cycle":
                self.add_shape(_shape_graph(cycle, self.wlist(), kw), kw)
            elif kw.text == "fork":
                self.add_shape(_shape_graph(forked_chain, self.wlist(), kw), kw)
            elif kw.text == "star":
                c = self.integer()
                arms = self.arms()
                if len(arms) < 3:
                    raise DslSemanticError(kw.line, kw.col, f"a star needs at least 3 arms, got {len(arms)}")
                self.add_shape(_shape_graph(lambda a: star(c, a), arms, kw, [c]), kw)
            elif kw.text == "vertex":
                vid = self.take("id").text
                w = self.keyword_value("w")
                g = self.keyword_value("g") if self.tok.text == "g" and self.toks[self.i + 1].text == "=" else 0
                self.add_vertex(Vertex(vid, w, g), kw)
            else:
                a, b = self.take("id"), self.take("id")
                self.edges.append((a.text, b.text))
                self.named_edges.append((a.text, b.text, a))
        except GraphError as e:
            raise DslSemanticError(kw.line, kw.col, str(e)) from None

    def graph(self) -> DualGraph:
        if self.tok.kind == "eof":
            self.fail("empty graph source")
        while self.tok.kind != "eof":
            self.decl()
        first = self.toks[0]
        for a, b, at in self.named_edges:
            for x in (a, b):
                if x not in self.where:
                    raise DslSemanticError(at.line, at.col, f"edge {a}-{b}: unknown vertex {x!r}")
        try:
            return DualGraph(tuple(self.vertices), tuple(self.edges))
        except GraphError as e:
            raise DslSemanticError(first.line, first.col, str(e)) from None


def _shape_graph(builder, arg, at: Token, extra=()) -> DualGraph:
    flat = list(extra) + [w for x in arg for w in (x if isinstance(x, list) else [x])]
    bad = [w for w in flat if w < 2]
    if bad:
        raise DslSemanticError(at.line, at.col, f"{at.text}: weight {bad[0]} < 2 on a genus-0 curve")
    return builder(arg)


def parse_graph(src: str) -> DualGraph:
    return _Parser(src).graph()


def format_graph(g: DualGraph) -> str:
    """Explicit ``vertex``/``edge`` source; ``parse_graph(format_graph(g)) == g``."""
    lines = []
    for v in g.vertices:
        if not _ID.match(v.id) or v.id in KEYWORDS or v.id in ("w", "g"):
            raise ValueError(f"vertex id {v.id!r} cannot be written in the graph grammar")
        lines.append(f"vertex {v.id} w={v.weight}" + (f" g={v.genus}" if v.genus else ""))
    lines += [f"edge {a} {b}" for a, b in g.edges]
    return "\n".join(lines) + "\n"


def format_shape(s: GraphShape) -> Optional[str]:
    """Short shape declaration, or None when the shape has no one-line form."""
    def wl(ws):
        return "[" + ",".join(map(str, ws)) + "]"

    if isinstance(s, Chain):
        return f"chain {wl(s.weights)}"
    if isinstance(s, Cycle):
        return f"cycle {wl(s.weights)}"
    if isinstance(s, ForkedChain):
        return f"fork {wl(s.spine)}"
    if isinstance(s, Star):
        return f"star {s.center} [" + ",".join(wl(a) for a in s.arms) + "]"
    if isinstance(s, EllipticVertex):
        return f"vertex E w={s.weight} g=1"
    return None


# ---------------------------------------------------------------- reports


def rational(x: Fraction) -> str:
    """``"p/q"`` in lowest terms (``"p"`` when integral)."""
    return str(Fraction(x))


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class ReportDocument:
    input: str
    results: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "input": self.input, "results": self.results}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
        return cls(d["input"], d["results"], d["schema_version"])


def graph_dict(g: DualGraph) -> dict:
    return {
        "vertices": [{"id": v.id, "weight": v.weight, "genus": v.genus} for v in g.vertices],
        "edges": [[a, b] for a, b in g.edges],
    }


def shape_dict(s: GraphShape) -> dict:
    tag = type(s).__name__
    if isinstance(s, (Chain, Cycle)):
        return {"tag": tag, "weights": list(s.weights)}
    if isinstance(s, Star):
        return {"tag": tag, "center": s.center, "arms": [list(a) for a in s.arms]}
    if isinstance(s, ForkedChain):
        return {"tag": tag, "spine": list(s.spine)}
    if isinstance(s, EllipticVertex):
        return {"tag": tag, "weight": s.weight}
    return {"tag": tag}


def divisor_dict(d: QDivisor) -> dict:
    return {k: rational(v) for k, v in zip(d.ids, d.coeffs)}


def _int_or_rational(x: Optional[Fraction]) -> Union[int, str, None]:
    if x is None:
        return None
    x = Fraction(x)
    return int(x) if x.denominator == 1 else rational(x)


def _opt(x, f):
    return None if x is None else f(x)


def singularity_results(r) -> dict:
    cd, fc, cls, vd = r.codiscrepancy, r.fundamental, r.klass, r.verdict
    return {
        "graph": graph_dict(r.graph),
        "shape": shape_dict(r.shape),
        "definiteness": r.definiteness,
        "class": cls.tag,
        "dv_or_ndv": cls.dv_or_ndv,
        "ade": cls.ade,
        "cyclic": _opt(cls.cyclic, lambda c: [c.r, c.q]),
        "index": cd.index,
        "K2": rational(cd.K2),
        "delta": divisor_dict(cd.delta),
        "log_canonical": cd.log_canonical,
        "log_terminal": cd.log_terminal,
        "fundamental_cycle": {
            "Z": divisor_dict(fc.Z),
            "Z2": rational(fc.Z2),
            "mult": fc.mult,
            "pa": fc.pa,
        },
        "rational": r.rational,
        "milnor": {
            "value": rational(r.milnor.value),
            "integral": r.milnor.integral,
            "qualifier": r.milnor_qualifier,
        },
        "index_one_cover": _opt(
            r.cover,
            lambda c: {"minus_K2": rational(c.minus_K2), "mult": c.mult, "embdim": c.embdim},
        ),
        "c_anticanonical": _opt(r.c_anticanonical, rational),
        "verdict": {"status": vd.status, "provenance": vd.provenance, "mu": vd.mu},
    }


def row_results(v) -> dict:
    return {
        "row_id": v.row_id,
        "n": v.n,
        "o_graph": graph_dict(v.o_graph),
        "o_class": v.o_class,
        "extra_duval": list(v.extra_duval),
        "rhoY": v.rhoY,
        "K2X": rational(v.K2X),
        "K2X_lattice": rational(v.K2X_lattice),
        "mu_sum": v.mu_sum,
        "noether_sum": _int_or_rational(v.noether_sum),
        "section_discrepancy": rational(v.section_discrepancy),
        "verdict": v.verdict,
        "existence": v.existence,
        "ok": v.ok,
        "notes": list(v.notes),
    }


def table_results(t) -> dict:
    from .del_pezzo import TABLE

    return {
        "ok": t.ok,
        "rows": [row_results(v) for v in t.rows],
        "ranges": [
            {
                "row_id": r.row_id,
                "declared": list(r.n_range),
                "derived": list(t.derived_ranges[r.row_id]),
            }
            for r in TABLE
        ],
    }


def emit_report(r: Any, source: Optional[str] = None) -> ReportDocument:
    """ReportDocument for a SingularityReport, RowVerification or TableVerification."""
    from .classify import SingularityReport
    from .del_pezzo import RowVerification, TableVerification

    if isinstance(r, SingularityReport):
        src = source if source is not None else (format_shape(r.shape) or format_graph(r.graph))
        return ReportDocument(src, singularity_results(r))
    if isinstance(r, RowVerification):
        return ReportDocument(source or f"verify-table --row {r.row_id} --n {r.n}", row_results(r))
    if isinstance(r, TableVerification):
        return ReportDocument(source or "verify-table", table_results(r))
    raise TypeError(f"no report format for {type(r).__name__}")
