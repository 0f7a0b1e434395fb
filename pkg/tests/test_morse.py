import pytest

from multipath.complex import build_multipath_complex
from multipath.digraph import coherent_line, h_graph, polygon, small_digraphs, y_fork
from multipath.errors import ParseError, ValidationError
from multipath.homology import betti
from multipath.morse import (critical_cells, format_matching, greedy_matching, parse_matching,
                             shortcut_homology, verify_matching)
from multipath.pathposet import enumerate_path_poset

# H graph edge bits: 01=1, 14=2, 21=4, 34=8, 54=16
H_MATCHING = frozenset({(0x0, 0x1), (0x2, 0x6), (0x4, 0xc), (0x8, 0x9), (0x10, 0x11)})
# Y fork edge bits: 01=1, 12=2, 13=4
Y_MATCHING = frozenset({(0x0, 0x2), (0x4, 0x5), (0x1, 0x3)})


def test_h_graph_hand_matching():
    p = enumerate_path_poset(h_graph())
    assert verify_matching(p, H_MATCHING) == (True, "ok")
    assert critical_cells(p, H_MATCHING) == {0: 0, 1: 0, 2: 2}
    assert shortcut_homology(p, H_MATCHING) == {0: 0, 1: 0, 2: 2}
    assert shortcut_homology(p, H_MATCHING) == betti(build_multipath_complex(h_graph()))


def test_y_fork_perfect_matching_means_acyclic():
    p = enumerate_path_poset(y_fork())
    assert verify_matching(p, Y_MATCHING)[0]
    assert shortcut_homology(p, Y_MATCHING) == {0: 0, 1: 0, 2: 0}


def test_polygon_single_pair_is_inconclusive():
    p = enumerate_path_poset(polygon(2))
    m = frozenset({(0x0, 0x1)})
    assert verify_matching(p, m)[0]
    assert shortcut_homology(p, m) is None


def test_cyclic_matching_rejected():
    # zig-zag {0} -> {0,2} -> {2} -> {1,2} -> {1} -> {0,1} -> {0} on the cube
    p = enumerate_path_poset(coherent_line(3))
    ok, why = verify_matching(p, {(0b001, 0b011), (0b010, 0b110), (0b100, 0b101)})
    assert not ok and "cycle" in why


def test_double_use_rejected():
    p = enumerate_path_poset(coherent_line(2))
    ok, why = verify_matching(p, {(0b00, 0b01), (0b01, 0b11)})
    assert not ok and "twice" in why


def test_non_covering_rejected():
    p = enumerate_path_poset(coherent_line(2))
    with pytest.raises(ValidationError):
        verify_matching(p, {(0b00, 0b11)})


@pytest.mark.parametrize("g", small_digraphs(3), ids=str)
def test_greedy_matching_is_valid_and_sound(g):
    p = enumerate_path_poset(g)
    m = greedy_matching(p)
    assert verify_matching(p, m)[0]
    short = shortcut_homology(p, m)
    if short is not None:
        assert short == betti(build_multipath_complex(g))


def test_matching_text_roundtrip():
    assert parse_matching(format_matching(H_MATCHING)) == H_MATCHING
    assert parse_matching("# pairs\n0 1  # first\n\n2 6\n") == {(0, 1), (2, 6)}


@pytest.mark.parametrize("text", ["0\n", "0 zz\n", "1 2 3\n"])
def test_matching_parse_errors(text):
    with pytest.raises(ParseError):
        parse_matching(text)


@pytest.mark.parametrize("n", range(1, 6))
def test_first_edge_matching_on_lines(n):
    p = enumerate_path_poset(coherent_line(n))
    m = frozenset((h.mask, h.mask | 1) for h in p.elements if not h.mask & 1)
    assert verify_matching(p, m)[0]
    assert set(shortcut_homology(p, m).values()) == {0}
    assert sum(critical_cells(p, greedy_matching(p)).values()) == 0


def test_y_sink_single_pair():
    from multipath.digraph import y_sink
    p = enumerate_path_poset(y_sink())
    m = frozenset({(0x0, 0x1)})
    assert verify_matching(p, m)[0]
    assert shortcut_homology(p, m) == {0: 0, 1: 2}


def test_single_vertex_and_y_sink_greedy():
    from multipath.digraph import Digraph, y_sink
    p = enumerate_path_poset(Digraph(1, ()))
    assert greedy_matching(p) == frozenset()
    assert critical_cells(p, frozenset()) == {0: 1}
    p = enumerate_path_poset(y_sink())
    assert critical_cells(p, greedy_matching(p)) == {0: 0, 1: 2}
