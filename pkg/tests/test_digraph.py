import pytest
from hypothesis import given, strategies as st

from multipath.digraph import (Digraph, UnorientedGraph, canonical_form, coherent_line, h_graph,
                               is_isomorphic, is_regular_embedding, nonisomorphic_digraphs,
                               noncoherent_line, parse_edge_list, polygon, serialize_edge_list,
                               underlying_unoriented)
from multipath.errors import ParseError, ValidationError


def test_parse_coherent_line():
    g = parse_edge_list(b"vertices 3\n0 1\n1 2")
    assert g == coherent_line(2)


def test_parse_noncoherent_line_and_sorting():
    g = parse_edge_list("vertices 3\n2 1\n0 1\n")
    assert g.edges == ((0, 1), (2, 1))
    assert g == noncoherent_line()


def test_parse_comments_and_blank_lines():
    g = parse_edge_list("# a comment\n\nvertices 2\n# another\n0 1\n\n")
    assert g.edges == ((0, 1),)


def test_self_loop_rejected():
    with pytest.raises(ValidationError, match="self-loop"):
        parse_edge_list("vertices 2\n0 0")


@pytest.mark.parametrize("text,line", [
    ("vertices 3\n0 1\n1 x", 3),
    ("vertex 3\n0 1", 1),
    ("vertices 3\n0 1 2", 2),
    ("vertices 2\n0 1\n0 1", 3),
    ("vertices 2\n0 5", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as err:
        parse_edge_list(text)
    assert err.value.line == line


def test_missing_header():
    with pytest.raises(ParseError):
        parse_edge_list("")


def test_digon_is_allowed_and_duplicates_are_not():
    assert polygon(1).edges == ((0, 1), (1, 0))
    with pytest.raises(ValidationError):
        Digraph(2, ((0, 1), (0, 1)))


def test_size_limit():
    with pytest.raises(ValidationError):
        Digraph(65, ())


def test_underlying_unoriented():
    assert underlying_unoriented(coherent_line(2)).edges == ((0, 1), (1, 2))
    assert underlying_unoriented(polygon(1)).edges == ((0, 1), (0, 1))
    assert underlying_unoriented(Digraph(1, ())).edges == ()
    assert UnorientedGraph(3, ((2, 0),)).edges == ((0, 2),)


def test_regular_embeddings():
    i2 = coherent_line(2)
    assert is_regular_embedding([0, 1, 2], i2, i2)
    assert not is_regular_embedding([0, 0, 1], i2, i2)
    assert is_regular_embedding([0, 1], coherent_line(1), i2)
    assert is_regular_embedding({0: 1, 1: 2}, coherent_line(1), i2)
    assert not is_regular_embedding([1, 0], coherent_line(1), i2)


@st.composite
def digraphs(draw, max_vertices=6):
    n = draw(st.integers(1, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Digraph(n, tuple(chosen))


@given(digraphs())
def test_parse_serialize_roundtrip(g):
    assert parse_edge_list(serialize_edge_list(g)) == g


@given(digraphs())
def test_edges_strictly_increasing(g):
    assert all(a < b for a, b in zip(g.edges, g.edges[1:]))


def test_isomorphism_class_counts():
    # number of digraphs up to isomorphism on 1..4 vertices (OEIS A000273)
    assert [len(nonisomorphic_digraphs(n)) for n in range(1, 5)] == [1, 3, 16, 218]


@given(digraphs(max_vertices=4), st.permutations(range(4)))
def test_canonical_form_is_relabelling_invariant(g, perm):
    perm = [p for p in perm if p < g.vertex_count]
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    assert is_isomorphic(g, h)


def test_h_graph_shape():
    g = h_graph()
    assert g.edges == ((0, 1), (1, 4), (2, 1), (3, 4), (5, 4))


def test_degrees():
    g = h_graph()
    assert g.in_degrees() == [0, 2, 0, 0, 3, 0]
    assert g.out_degrees() == [1, 1, 1, 1, 0, 1]
