"""Text format round trips and parser diagnostics."""
from __future__ import annotations

import pytest
from hypothesis import given, settings

from cancelgraph import (
    Graph,
    ParseError,
    Permutation,
    UsageError,
    format_permutation,
    parse_graph,
    parse_permutation,
    serialize_graph,
)

from conftest import graph_strategy, load_fixture


def test_parse_basic():
    g = parse_graph(
        """
        # a triangle with a loop
        p graph 3
        e 0 1
        e 1 2   # trailing comment
        e 2 0
        e 1 1
        e 0 1
        """
    )
    assert g.n == 3
    assert g.edges() == [(0, 1), (0, 2), (1, 1), (1, 2)]


def test_parse_edgeless_header_only():
    g = parse_graph("p graph 4\n")
    assert g == Graph(4, (0, 0, 0, 0))


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("e 0 1\np graph 2\n", 1),  # edge before header
        ("p graph 2\np graph 2\n", 2),
        ("p graph two\n", 1),
        ("p graph -1\n", 1),
        ("p graph 65\n", 1),
        ("p graph 2\ne 0\n", 2),
        ("p graph 2\ne 0 2\n", 2),
        ("p graph 2\ne 0 x\n", 2),
        ("p graph 2\nq 0 1\n", 2),
        ("p 2\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == lineno
    assert f"line {lineno}:" in str(info.value)


def test_missing_header():
    with pytest.raises(ParseError) as info:
        parse_graph("# nothing here\n")
    assert info.value.line is None


def test_serialize_sorts_edges_and_keeps_comment():
    g = Graph.from_edges(3, [(2, 1), (0, 0), (0, 2)])
    text = serialize_graph(g, comment="demo\ntwo lines")
    assert text == "# demo\n# two lines\np graph 3\ne 0 0\ne 0 2\ne 1 2\n"
    assert parse_graph(text) == g


@settings(max_examples=200)
@given(graph_strategy(max_n=7, loops=True))
def test_serialize_parse_roundtrip(g):
    assert parse_graph(serialize_graph(g)) == g


def test_fixture_files_parse(c6, sql, q3):
    assert c6.n == 6 and c6.edge_count() == 6
    assert sql.n == 4 and sql.has_loop(1) and sql.has_loop(3)
    assert q3.n == 8 and q3.edge_count() == 12
    assert load_fixture("lp").edges() == [(0, 0), (0, 1)]


def test_parse_permutation_formats():
    assert parse_permutation("3 0 1 2").image == (3, 0, 1, 2)
    assert parse_permutation("3, 0, 1, 2", 4).image == (3, 0, 1, 2)
    assert parse_permutation(" 1,0 ").image == (1, 0)
    with pytest.raises(ParseError):
        parse_permutation("")
    with pytest.raises(ParseError):
        parse_permutation("a b")
    with pytest.raises(UsageError):
        parse_permutation("0 0")
    with pytest.raises(UsageError):
        parse_permutation("1 0", 3)


def test_format_permutation_roundtrip():
    p = Permutation((2, 0, 1))
    assert format_permutation(p) == "2 0 1"
    assert parse_permutation(format_permutation(p)) == p
