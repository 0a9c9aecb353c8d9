import json

import pytest
from hypothesis import given, strategies as st

from resgraph.classify import analyze
from resgraph.del_pezzo import verify_row, verify_theorem_main
from resgraph.dsl import (
    DslSemanticError,
    DslSyntaxError,
    ReportDocument,
    emit_report,
    format_graph,
    format_shape,
    parse_graph,
    parse_rational,
    rational,
)
from resgraph.graph_core import (
    DualGraph,
    Vertex,
    chain,
    cycle,
    elliptic,
    forked_chain,
    recognize_shape,
    star,
)
from strategies import graphs


def test_examples():
    assert parse_graph("fork [4]") == forked_chain([4])
    assert len(parse_graph("fork [4]")) == 5
    assert parse_graph("star 2 [[2],[3],[6]]") == star(2, [[2], [3], [6]])
    assert parse_graph("chain [3,5,2]") == chain([3, 5, 2])
    assert parse_graph("cycle [2, 3]") == cycle([2, 3])
    assert parse_graph("vertex E w=1 g=1") == DualGraph((Vertex("E", 1, 1),))


def test_layout_insensitive():
    a = parse_graph("star 2 [[2],[3],[6]]")
    b = parse_graph("  star\n2 [ [2] ,\n [3],[6] ]  # comment\n")
    assert a == b


def test_mixed_declarations():
    g = parse_graph("chain [3, 2]\nvertex E w=1 g=1\nedge v1 E\n")
    assert [v.id for v in g.vertices] == ["v0", "v1", "E"]
    assert g.edges == (("v0", "v1"), ("v1", "E"))
    g = parse_graph("chain [3]\nchain [4]\nedge v0 v1")
    assert g == DualGraph((Vertex("v0", 3), Vertex("v1", 4)), (("v0", "v1"),))


@pytest.mark.parametrize(
    "src, line, col",
    [
        ("", 1, 1),
        ("chain [3,", 1, 10),
        ("chain 3", 1, 7),
        ("chain [3]\nstar 2 [[2], 3]", 2, 14),
        ("vertex a w=", 1, 12),
        ("vertex a x=2", 1, 10),
        ("chain [2] @", 1, 11),
        ("foo [2]", 1, 1),
        ("chain [2]]", 1, 10),
    ],
)
def test_syntax_errors(src, line, col):
    with pytest.raises(DslSyntaxError) as e:
        parse_graph(src)
    assert (e.value.line, e.value.col) == (line, col)
    assert "\n" not in e.value.reason and e.value.reason


@pytest.mark.parametrize(
    "src, needle",
    [
        ("chain [1]", "weight 1"),
        ("vertex a w=1", "weight 1"),
        ("vertex a w=2\nvertex a w=3", "duplicate"),
        ("chain [2]\nvertex v0 w=2", "duplicate"),
        ("chain [2] chain [3]", "disconnected"),
        ("chain [2] edge v0 zz", "unknown vertex"),
        ("star 2 [[2],[2]]", "3 arms"),
        ("cycle [2]", "cycle"),
        ("vertex a w=2\nedge a a", "self-loop"),
    ],
)
def test_semantic_errors(src, needle):
    with pytest.raises(DslSemanticError) as e:
        parse_graph(src)
    assert needle in str(e.value) and e.value.line >= 1 and e.value.col >= 1


def test_semantic_error_position():
    with pytest.raises(DslSemanticError) as e:
        parse_graph("chain [2]\n  vertex v0 w=3")
    assert (e.value.line, e.value.col) == (2, 3)


@given(graphs())
def test_print_parse_roundtrip(g):
    assert parse_graph(format_graph(g)) == g


@given(st.sampled_from(["chain [2,3]", "cycle [2,2,3]", "fork [3,4]", "star 3 [[2],[2,2],[4]]", "vertex E w=3 g=1"]))
def test_format_shape_roundtrip(src):
    g = parse_graph(src)
    if not src.startswith("vertex"):
        assert format_shape(recognize_shape(g)) == src
    assert parse_graph(format_shape(recognize_shape(g))) == g


def test_rationals():
    from fractions import Fraction

    assert rational(Fraction(-6, 4)) == "-3/2"
    assert rational(Fraction(0)) == "0"
    assert parse_rational("-3/2") == Fraction(-3, 2)


def _walk(x):
    if isinstance(x, dict):
        for v in x.values():
            yield from _walk(v)
    elif isinstance(x, list):
        for v in x:
            yield from _walk(v)
    else:
        yield x


def test_report_examples():
    d = emit_report(analyze(chain([2])))
    assert d.schema_version == "1"
    assert d.results["index"] == 1 and d.results["K2"] == "0"
    assert emit_report(analyze(forked_chain([4]))).results["K2"] == "-2"
    assert emit_report(verify_row(7, 2)).results["noether_sum"] == 10


@pytest.mark.parametrize(
    "obj",
    [
        lambda: analyze(chain([3, 5, 2])),
        lambda: analyze(star(2, [[3], [3], [2, 2]])),
        lambda: analyze(elliptic(4)),
        lambda: verify_row(1, 3),
        lambda: verify_theorem_main(),
    ],
)
def test_report_roundtrip_and_no_floats(obj):
    d = emit_report(obj())
    text = d.to_json()
    assert ReportDocument.from_json(text) == d
    assert ReportDocument.from_json(text).to_json() == text
    assert not any(isinstance(x, float) for x in _walk(json.loads(text)))
    assert emit_report(obj()).to_json() == text
    assert list(json.loads(text)) == ["schema_version", "input", "results"]


def test_schema_version_checked():
    with pytest.raises(ValueError):
        ReportDocument.from_json('{"schema_version": "2", "input": "", "results": {}}')
    with pytest.raises(TypeError):
        emit_report(object())
