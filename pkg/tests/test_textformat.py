import pytest
from hypothesis import given

from conftest import posets
from finitop.cofinite import COFULL, CofiniteMap, SymbolicSet
from finitop.corpus import canonical_code, is_isomorphic
from finitop.cstar import BlockAlgebra
from finitop.errors import ParseError, UnknownReference
from finitop.retraction import cfg0, configs_isomorphic, search_counterexample
from finitop.textformat import (
    emit_algebra,
    emit_config,
    emit_map,
    emit_space,
    emit_workspace,
    parse,
    parse_ideal,
    parse_set,
)
from finitop.cofinite import COFINITE


def test_parse_space_example():
    ws = parse("space V3\npoints p m z\norder p<m p<z\n")
    v3 = ws.spaces["V3"]
    assert v3.leq("p", "m") and v3.leq("p", "z") and not v3.leq("m", "z")


def test_order_chains_and_comments():
    ws = parse("# chain\nspace C\npoints a b c   # three\norder a<b<c\n")
    assert ws.spaces["C"].leq("a", "c")


@pytest.mark.parametrize("text,line,col,cls", [
    ("space X\npoints p m\norder p<m m<p\n", 3, 7, ParseError),
    ("space X\npoints a\norder a<b\n", 3, 7, UnknownReference),
    ("config C\nx1 V3\nx2 V3\ny V3*V3\nphi f\npsi f\n", 5, 5, UnknownReference),
    ("order a<b\n", 1, 1, ParseError),
    ("space X\npoints a a\n", 2, 10, ParseError),
    ("map f : V3 -> missing\n", 1, 1, UnknownReference),
    ("space X\npoints a\nwhat now\n", 3, 1, ParseError),
])
def test_errors_carry_location(text, line, col, cls):
    with pytest.raises(cls) as info:
        parse(text, source="in.txt")
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"in.txt:{line}:{col}:")


def test_antisymmetry_message():
    with pytest.raises(ParseError, match="antisymmetric"):
        parse("space X\npoints p m\norder p<m m<p\n")


def test_forward_references_resolve():
    ws = parse("map f : X -> X\nsend a->a\nspace X\npoints a\n")
    assert ws.maps["f"]("a") == "a"


def test_cofinite_map_parse_and_emit():
    ws = parse("map g : cofinite -> discrete2\nsend 0->a 3->a\ndefault b\n")
    g = ws.maps["g"]
    assert isinstance(g, CofiniteMap) and g(3) == "a" and g(4) == "b"
    assert emit_map(g) == "map g : cofinite -> discrete2\nsend 0->a 3->a\ndefault b\n"
    with pytest.raises(ParseError):
        parse("map g : cofinite -> discrete2\nsend x->a\ndefault b\n")
    with pytest.raises(ParseError):
        parse("map g : cofinite -> discrete2\nsend 1->a\n")


@given(posets(max_n=6))
def test_space_round_trip(p):
    text = emit_space(p, "S")
    q = parse(text).spaces["S"]
    assert q == p and canonical_code(q) == canonical_code(p)
    assert emit_space(q) == text


def test_config_round_trip():
    c = cfg0()
    text = emit_config(c)
    back = parse(text).configs["CFG0"]
    assert configs_isomorphic(c, back)
    assert emit_config(back) == text


def test_mined_configs_round_trip():
    for c in search_counterexample(1, 3)[:10]:
        back = parse(emit_config(c)).configs[c.name]
        assert configs_isomorphic(c, back)


def test_workspace_round_trip():
    text = (
        "space V\npoints m p z\norder p<m p<z\n\n"
        "map f : V -> discrete2\nsend m->a p->a z->a\n\n"
        "map g : cofinite -> discrete2\ndefault a\n\n"
        "algebra A blocks b1:2 b2:3\n"
    )
    ws = parse(text)
    assert emit_workspace(ws) == text
    again = parse(emit_workspace(ws))
    assert is_isomorphic(again.spaces["V"], ws.spaces["V"])


def test_algebra_parse_and_emit():
    ws = parse("algebra A blocks 2 3\nalgebra B blocks x:1 y:4\n")
    assert ws.algebras["A"] == BlockAlgebra((("b1", 2), ("b2", 3)), name="A")
    assert ws.algebras["B"].names == ("x", "y")
    assert emit_algebra(ws.algebras["A"]) == "algebra A blocks b1:2 b2:3\n"
    t = ws.algebra("A*B")
    assert t.factors == (ws.algebras["A"], ws.algebras["B"])


def test_literals():
    ws = parse("")
    v3 = ws.space("V3")
    assert set(parse_set(v3, "{p, m}").members) == {"p", "m"}
    assert parse_set(v3, "{}").mask == 0
    p = ws.space("V3*chain2")
    assert set(parse_set(p, "{(p,0),(m,1)}").members) == {"(p,0)", "(m,1)"}
    assert parse_set(COFINITE, "COFULL") == COFULL
    assert parse_set(COFINITE, "N\\{1,2}") == SymbolicSet.cofinite([1, 2])
    a = BlockAlgebra.from_sizes([1, 1])
    assert parse_ideal(a, "hull{b2}").hull == {"b2"}


def test_builtins_and_shadowing():
    ws = parse("space V3\npoints a\n")
    assert ws.space("V3").elements == ("a",)
    assert parse("").space("V3").n == 3
    assert parse("").config("CFG0").name == "CFG0"
