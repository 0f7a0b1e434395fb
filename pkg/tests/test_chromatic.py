import random
from itertools import product
from types import SimpleNamespace

import pytest

from multipath.algebra import dual_numbers, ground_field, truncated_poly, upper_triangular
from multipath.chromatic import (build_chromatic, build_tilde_mu, check_iso_In_Pn, check_les, compare_chromatic,
                                 les_report, oriented_family, zeta)
from multipath.complex import build_multipath_complex
from multipath.digraph import (UnorientedGraph, coherent_line, h_graph, noncoherent_line, polygon,
                               underlying_unoriented, y_fork, y_sink)
from multipath.errors import ValidationError
from multipath.fields import GF
from multipath.homology import betti

K = ground_field()[0]
DUAL = dual_numbers()


def test_zeta_counts_earlier_edges():
    assert zeta(0b0000, 2) == 0
    assert zeta(0b0011, 2) == 0
    assert zeta(0b0111, 3) == 1
    assert zeta(0b1000, 3) == 0


def test_hat_dims_on_two_cycle():
    c = build_chromatic(polygon(2), K, variant="hat")
    assert [c.dim(n) for n in c.degrees] == [1, 3, 3, 1]


def _proper_colourings(g, k):
    return sum(all(c[u] != c[v] for u, v in g.edges) for c in product(range(k), repeat=g.vertex_count))


@pytest.mark.parametrize("g", [polygon(2), polygon(3), h_graph(), y_sink(), coherent_line(3)], ids=str)
@pytest.mark.parametrize("a", [K, dual_numbers(), truncated_poly(3)], ids=lambda a: a.name)
def test_euler_characteristic_is_chromatic_polynomial(g, a):
    ug = underlying_unoriented(g)
    c = build_chromatic(ug, a, variant="plain")
    b = betti(c)
    assert sum((-1) ** n * h for n, h in b.items()) == _proper_colourings(ug, a.dim)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("a", [dual_numbers(), upper_triangular()], ids=lambda a: a.name)
def test_line_and_cycle_isomorphisms(n, a):
    assert check_iso_In_Pn(n, a)


def test_noncommutative_needs_oriented_family():
    t2 = upper_triangular()
    assert oriented_family(coherent_line(3)) == "line"
    assert oriented_family(polygon(3)) == "polygon"
    assert oriented_family(noncoherent_line()) is None
    build_chromatic(polygon(2), t2, variant="hat")
    with pytest.raises(ValidationError):
        build_chromatic(polygon(2), t2, variant="plain")
    with pytest.raises(ValidationError):
        build_chromatic(noncoherent_line(), t2)
    with pytest.raises(ValidationError):
        build_chromatic(underlying_unoriented(coherent_line(2)), t2)


def test_unknown_variant():
    with pytest.raises(ValidationError):
        build_chromatic(coherent_line(1), K, variant="fancy")


def _permuted(g, order):
    return SimpleNamespace(vertex_count=g.vertex_count, edges=tuple(g.edges[k] for k in order))


@pytest.mark.parametrize("g", [h_graph(), polygon(3), y_sink()], ids=str)
def test_edge_order_does_not_matter(g):
    rng = random.Random(7)
    a = dual_numbers()
    ug = underlying_unoriented(g)
    for variant in ("plain", "hat"):
        want = betti(build_chromatic(ug, a, variant=variant))
        for _ in range(3):
            order = list(range(g.edge_count))
            rng.shuffle(order)
            got = betti(build_chromatic(_permuted(ug, order), a, variant=variant))
            assert got == want


@pytest.mark.parametrize("g", [polygon(2), polygon(3), h_graph(), y_fork(), y_sink()], ids=str)
@pytest.mark.parametrize("a", [K, dual_numbers()], ids=lambda a: a.name)
def test_long_exact_sequence(g, a):
    r = les_report(g, a)
    assert r.ok, r


def test_les_over_finite_field():
    assert check_les(h_graph(), dual_numbers(), GF(2))


def test_tilde_starts_at_smallest_non_multipath():
    c = build_tilde_mu(y_sink(), K)
    assert c.offset == 2
    with pytest.raises(ValidationError):
        build_tilde_mu(y_sink(), upper_triangular())


def test_compare_reports_rejections():
    out = compare_chromatic(polygon(2), upper_triangular())
    assert "error" in out["plain"]
    assert "betti" in out["hat"] and "betti" in out["mu"]


def test_single_unoriented_edge():
    c = build_chromatic(UnorientedGraph(2, ((0, 1),)), K, variant="plain")
    assert c.dims == [1, 1]
    assert c.d(0).to_dense() == [[1]]


def test_digon_hat_adds_a_copy_in_degree_two():
    mu = betti(build_multipath_complex(polygon(1), K))
    hat = betti(build_chromatic(polygon(1), K, variant="hat"))
    want = {n: mu.get(n, 0) for n in range(3)}
    want[2] += 1
    assert {n: hat.get(n, 0) for n in range(3)} == want


def test_tilde_complex_shapes():
    with pytest.raises(ValidationError):
        build_tilde_mu(coherent_line(3), DUAL, base_vertex=7)
    line = build_tilde_mu(coherent_line(3), DUAL)
    assert sum(line.dims) == 0
    # both edges together put in-degree 2 on the middle vertex: one connected non-multipath
    c = build_tilde_mu(noncoherent_line(), DUAL)
    assert {d: c.dim(d) for d in c.degrees if c.dim(d)} == {2: DUAL.dim}
    for n in (2, 3):
        c = build_tilde_mu(polygon(n), DUAL)
        assert {d: c.dim(d) for d in c.degrees if c.dim(d)} == {n + 1: DUAL.dim}


def test_hat_d_squared_on_p3():
    assert build_chromatic(polygon(3), DUAL, variant="hat").verify_d_squared()
