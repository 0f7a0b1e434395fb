"""Chromatic cochain complexes over all spanning sub-graphs and their comparison
with multipath cohomology.

Coverings that merge two components use the multiplication map of the
functor; coverings that close a cycle inside one component use the identity
(``plain``) or zero (``hat``).  The sign is the edge-order parity ``zeta``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Bimodule, FiniteAlgebra, regular_bimodule, require_valid
from .complex import ChainMap, CochainComplex, assemble, build_multipath_complex
from .digraph import Digraph, UnorientedGraph, coherent_line, is_weakly_connected, polygon
from .errors import ValidationError
from .fields import QQ, Field
from .functor import CoveringMaps
from .homology import betti, induced_rank, rank
from .pathposet import Covering, SubgraphPoset, complement_poset, enumerate_path_poset, spanning_subgraph_poset
from .signs import SignAssignment, find_sign_isomorphism, sigma_assignment
from .sparse import SparseMatrix

# A chromatic complex is an ordinary cochain complex over SSG(G).
ChromaticComplex = CochainComplex


def zeta(h, e: int) -> int:
    """Parity of the edges of ``h`` preceding edge ``e``; ``h`` is a mask or a sub-graph."""
    mask = h if isinstance(h, int) else h.mask
    return bin(mask & ((1 << e) - 1)).count("1") & 1


def zeta_signs(poset: SubgraphPoset) -> list[int]:
    return [zeta(poset.elements[c.lower].mask, c.edge) for c in poset.coverings]


def oriented_family(g: Digraph | UnorientedGraph) -> str | None:
    """'line' for a coherently oriented path, 'polygon' for a directed cycle, else None."""
    if not isinstance(g, Digraph) or not is_weakly_connected(g) or g.vertex_count < 2:
        return None
    if max(g.in_degrees()) > 1 or max(g.out_degrees()) > 1:
        return None
    if g.edge_count == g.vertex_count - 1:
        return "line"
    if g.edge_count == g.vertex_count:
        return "polygon"
    return None


def _check_commutativity(g, a: FiniteAlgebra, m: Bimodule, variant: str) -> None:
    if a.is_commutative() and m.is_symmetric():
        return
    family = oriented_family(g)
    if family == "line" or (family == "polygon" and variant == "hat"):
        return
    what = "algebra is not commutative" if not a.is_commutative() else "bimodule is not symmetric"
    raise ValidationError(
        f"{what}; only coherent lines (both variants) and directed cycles (hat) allow that"
    )


def _edges(g: Digraph | UnorientedGraph):
    # unoriented edges are read as u -> v with u < v
    return g.vertex_count, g.edges


def build_chromatic(
    g: Digraph | UnorientedGraph,
    a: FiniteAlgebra,
    m: Bimodule | None = None,
    variant: str = "plain",
    fld: Field = QQ,
    base_vertex: int = 0,
) -> ChromaticComplex:
    if variant not in ("plain", "hat"):
        raise ValidationError(f"unknown chromatic variant {variant!r}")
    m = m if m is not None else regular_bimodule(a)
    require_valid(a, m, fld)
    _check_commutativity(g, a, m, variant)
    n, edges = _edges(g)
    poset = spanning_subgraph_poset(n, edges, base_vertex)
    maps = CoveringMaps(a, m, fld)

    def cover(cov: Covering):
        h = poset.elements[cov.lower]
        u, v = poset.edges[cov.edge]
        s, t = h.component_of[u], h.component_of[v]
        if s != t:
            return maps.merge(h.component_count, s, t)
        if variant == "plain":
            return SparseMatrix.identity(maps.space(h.component_count).dim, fld)
        return None

    return assemble(poset, lambda h: maps.space(h.component_count).dim, cover,
                    zeta_signs(poset), fld, name=f"C_chrom_{variant}")


def build_tilde_mu(g: Digraph, a: FiniteAlgebra, fld: Field = QQ, base_vertex: int = 0) -> CochainComplex:
    """Complex on the non-multipaths: merges act by multiplication, cycle-closing coverings by zero.

    Degrees are edge counts, so the complex starts at the smallest size of a
    non-multipath (stored as ``offset``).
    """
    if not a.is_commutative():
        raise ValidationError("the complement complex needs a commutative algebra")
    require_valid(a, None, fld)
    poset = complement_poset(g, base_vertex)
    maps = CoveringMaps(a, None, fld)

    def cover(cov: Covering):
        h = poset.elements[cov.lower]
        u, v = poset.edges[cov.edge]
        s, t = h.component_of[u], h.component_of[v]
        return maps.merge(h.component_count, s, t) if s != t else None

    return assemble(poset, lambda h: maps.space(h.component_count).dim, cover,
                    zeta_signs(poset), fld, name="C_tilde")


# --- comparisons -----------------------------------------------------------

def compare_chromatic(g: Digraph, a: FiniteAlgebra, m: Bimodule | None = None,
                      fld: Field = QQ, base_vertex: int = 0) -> dict:
    """Dims and Betti tables of C_mu and of both chromatic variants (when defined)."""
    m = m if m is not None else regular_bimodule(a)
    out = {}
    mu = build_multipath_complex(g, a, m, base_vertex=base_vertex, fld=fld)
    out["mu"] = {"dims": _dims(mu), "betti": betti(mu)}
    for variant in ("plain", "hat"):
        try:
            c = build_chromatic(g, a, m, variant, fld, base_vertex)
        except ValidationError as exc:
            out[variant] = {"error": str(exc)}
            continue
        out[variant] = {"dims": _dims(c), "betti": betti(c)}
    return out


def _dims(c: CochainComplex) -> dict[int, int]:
    return {n: c.dim(n) for n in c.degrees}


def _padded(table: dict[int, int], top: int) -> dict[int, int]:
    return {n: table.get(n, 0) for n in range(top + 1)}


def check_iso_In_Pn(n: int, a: FiniteAlgebra, m: Bimodule | None = None, fld: Field = QQ) -> bool:
    if n < 1:
        raise ValidationError("n must be at least 1")
    m = m if m is not None else regular_bimodule(a)
    top = n + 1

    line = coherent_line(n)
    mu = build_multipath_complex(line, a, m, fld=fld)
    plain = build_chromatic(line, a, m, "plain", fld)
    hat = build_chromatic(line, a, m, "hat", fld)
    for c in (plain, hat):
        if _padded(_dims(c), top) != _padded(_dims(mu), top):
            return False
        if _padded(betti(c), top) != _padded(betti(mu), top):
            return False

    cyc = polygon(n)
    mu = build_multipath_complex(cyc, a, m, fld=fld)
    hat = build_chromatic(cyc, a, m, "hat", fld)
    want_dims = _padded(_dims(mu), top)
    want_dims[n + 1] += m.dim
    want_betti = _padded(betti(mu), top)
    want_betti[n + 1] += m.dim
    return _padded(_dims(hat), top) == want_dims and _padded(betti(hat), top) == want_betti


@dataclass
class LESReport:
    dims_add_up: bool
    inclusion_is_chain_map: bool
    quotient_is_chain_map: bool
    composite_is_zero: bool
    inclusion_injective: bool
    quotient_surjective: bool
    euler_relation: bool
    cohomology_exact: bool
    betti_tilde: dict[int, int]
    betti_hat: dict[int, int]
    betti_mu: dict[int, int]
    connecting_ranks: dict[int, int]

    @property
    def ok(self) -> bool:
        return all((self.dims_add_up, self.inclusion_is_chain_map, self.quotient_is_chain_map,
                    self.composite_is_zero, self.inclusion_injective, self.quotient_surjective,
                    self.euler_relation, self.cohomology_exact))


def les_report(g: Digraph, a: FiniteAlgebra, fld: Field = QQ, base_vertex: int = 0) -> LESReport:
    """0 -> C_tilde -> C_hat -> C_mu -> 0 and its long exact sequence, checked degree by degree."""
    if not a.is_commutative():
        raise ValidationError("the exact sequence needs a commutative algebra")
    hat = build_chromatic(g, a, None, "hat", fld, base_vertex)
    tilde = build_tilde_mu(g, a, fld, base_vertex)
    pg = enumerate_path_poset(g, base_vertex)
    mu = build_multipath_complex(g, a, None, base_vertex=base_vertex, fld=fld, poset=pg)

    # fold the sign change between zeta restricted to P(G) and sigma_e into q
    zeta_on_p = SignAssignment.from_vector(pg, zeta_signs(pg))
    eta = find_sign_isomorphism(pg, zeta_on_p, sigma_assignment(pg))
    if eta is None:
        raise ValidationError("no sign isomorphism between zeta and sigma_e")

    top = hat.degrees.stop
    minus_one = fld.reduce(-1)
    iota, quot = [], []
    for n in hat.degrees:
        i_mat = SparseMatrix(hat.dim(n), tilde.dim(n), fld)
        if n in tilde.degrees:
            for mask, (start, dim) in tilde.blocks[n - tilde.offset].items():
                h_start, _ = hat.block(n, mask)
                for k in range(dim):
                    i_mat.data[h_start + k][start + k] = 1
        iota.append(i_mat)
        q_mat = SparseMatrix(mu.dim(n), hat.dim(n), fld)
        if n in mu.degrees:
            for mask, (start, dim) in mu.blocks[n - mu.offset].items():
                h_start, _ = hat.block(n, mask)
                sgn = minus_one if eta[pg.index[mask]] else 1
                for k in range(dim):
                    q_mat.data[start + k][h_start + k] = sgn
        quot.append(q_mat)

    # ChainMap indexes maps from the target's offset, which is 0 for hat and mu
    iota_map = ChainMap(tilde, hat, iota)
    quot_map = ChainMap(hat, mu, quot)
    degrees = range(0, top)

    dims_ok = all(tilde.dim(n) + mu.dim(n) == hat.dim(n) for n in degrees)
    composite_zero = all((quot_map.at(n) @ iota_map.at(n)).is_zero() for n in degrees)
    injective = all(rank(iota_map.at(n)) == tilde.dim(n) for n in degrees)
    surjective = all(rank(quot_map.at(n)) == mu.dim(n) for n in degrees)

    bt, bh, bm = betti(tilde), betti(hat), betti(mu)
    h_t = [bt.get(n, 0) for n in range(top + 1)]
    h_h = [bh.get(n, 0) for n in range(top + 1)]
    h_m = [bm.get(n, 0) for n in range(top + 1)]
    euler = sum((-1) ** n * (h_t[n] - h_h[n] + h_m[n]) for n in range(top + 1)) == 0

    # ranks of the maps induced in cohomology, then exactness at every spot
    a_rank = [induced_rank(iota_map.at(n), tilde.d(n), hat.d(n - 1)) for n in range(top + 1)]
    b_rank = [induced_rank(quot_map.at(n), hat.d(n), mu.d(n - 1)) for n in range(top + 1)]
    exact = True
    connecting = {}
    for n in range(top + 1):
        if h_h[n] - b_rank[n] != a_rank[n]:
            exact = False
        delta = h_m[n] - b_rank[n]
        nxt = h_t[n + 1] - a_rank[n + 1] if n + 1 <= top else 0
        if delta != nxt or delta < 0:
            exact = False
        if n == 0 and h_t[0] != a_rank[0]:
            exact = False
        connecting[n] = delta
    return LESReport(
        dims_ok, iota_map.is_chain_map(), quot_map.is_chain_map(), composite_zero,
        injective, surjective, euler, exact,
        {n: v for n, v in enumerate(h_t) if v}, {n: v for n, v in enumerate(h_h) if v},
        {n: v for n, v in enumerate(h_m) if v}, {n: v for n, v in connecting.items() if v},
    )


def check_les(g: Digraph, a: FiniteAlgebra, fld: Field = QQ) -> bool:
    return les_report(g, a, fld).ok
