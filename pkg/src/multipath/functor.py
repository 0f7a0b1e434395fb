"""The functor F_{A,M} on spanning sub-graphs and coverings.

F(H) = M (x) A (x) ... (x) A with one factor per connected component, in
component order; the base vertex's component carries M.  A basis vector is a
tuple of factor indices and its position is the mixed-radix number whose
most significant digit is component 0 (so the tuples enumerate in
lexicographic order).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .algebra import Bimodule, FiniteAlgebra, regular_bimodule
from .errors import ValidationError
from .fields import QQ, Field
from .pathposet import Subgraph, SubgraphPoset
from .sparse import SparseMatrix


@dataclass(frozen=True)
class TensorSpace:
    factor_dims: tuple[int, ...]

    @property
    def dim(self) -> int:
        out = 1
        for d in self.factor_dims:
            out *= d
        return out

    def strides(self) -> list[int]:
        out = [1] * len(self.factor_dims)
        for i in range(len(self.factor_dims) - 2, -1, -1):
            out[i] = out[i + 1] * self.factor_dims[i + 1]
        return out

    def index(self, digits: Sequence[int]) -> int:
        idx = 0
        for d, n in zip(digits, self.factor_dims):
            idx = idx * n + d
        return idx

    def digits(self, index: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.factor_dims):
            index, d = divmod(index, n)
            out.append(d)
        return tuple(reversed(out))

    def basis(self):
        return product(*(range(n) for n in self.factor_dims))


def space_for(h: Subgraph, a: FiniteAlgebra, m: Bimodule | None = None) -> TensorSpace:
    mdim = m.dim if m is not None else a.dim
    return TensorSpace((mdim,) + (a.dim,) * (h.component_count - 1))


class CoveringMaps:
    """Memoised merge maps; a merge depends only on (component count, s, t)."""

    def __init__(self, a: FiniteAlgebra, m: Bimodule | None = None, fld: Field = QQ):
        self.algebra = a
        self.module = m if m is not None else regular_bimodule(a)
        if self.module.algebra.mult != a.mult:
            raise ValidationError("bimodule is over a different algebra")
        self.field = fld
        self._mult = a.table(fld)
        self._left, self._right = self.module.tables(fld)
        self._cache: dict[tuple[int, int, int], SparseMatrix] = {}

    def space(self, ncomp: int) -> TensorSpace:
        return TensorSpace((self.module.dim,) + (self.algebra.dim,) * (ncomp - 1))

    def merge(self, ncomp: int, s: int, t: int) -> SparseMatrix:
        """Multiply factor s (left) by factor t (right); keep the result at min(s, t)."""
        key = (ncomp, s, t)
        mat = self._cache.get(key)
        if mat is not None:
            return mat
        if s == t or not (0 <= s < ncomp and 0 <= t < ncomp):
            raise ValidationError(f"no merge of components {s} and {t} among {ncomp}")
        src = self.space(ncomp)
        dst = self.space(ncomp - 1)
        lo, hi = min(s, t), max(s, t)
        strides = dst.strides()
        red = self.field.reduce
        data: list[dict[int, object]] = [{} for _ in range(dst.dim)]
        for col, x in enumerate(src.basis()):
            if s == 0:
                terms = self._right[x[0]][x[t]]
            elif t == 0:
                terms = self._left[x[s]][x[0]]
            else:
                terms = self._mult[x[s]][x[t]]
            if not terms:
                continue
            rest = x[:hi] + x[hi + 1:]
            base = 0
            for pos, d in enumerate(rest):
                if pos != lo:
                    base += d * strides[pos]
            for k, v in terms:
                row = data[base + k * strides[lo]]
                row[col] = red(row.get(col, 0) + v)
        mat = SparseMatrix(dst.dim, src.dim, self.field, data).prune()
        self._cache[key] = mat
        return mat

    def covering(self, poset: SubgraphPoset, lower, upper) -> SparseMatrix:
        c = poset.covering(lower, upper)
        h = poset.elements[c.lower]
        u, v = poset.edges[c.edge]
        return self.merge(h.component_count, h.component_of[u], h.component_of[v])


def covering_map(poset: SubgraphPoset, lower, upper, a: FiniteAlgebra,
                 m: Bimodule | None = None, fld: Field = QQ) -> SparseMatrix:
    return CoveringMaps(a, m, fld).covering(poset, lower, upper)


def verify_square_commutes(poset: SubgraphPoset, square, a: FiniteAlgebra,
                           m: Bimodule | None = None, fld: Field = QQ,
                           maps: CoveringMaps | None = None) -> bool:
    maps = maps or CoveringMaps(a, m, fld)
    x, y, y2, z = square
    left = maps.covering(poset, y, z) @ maps.covering(poset, x, y)
    right = maps.covering(poset, y2, z) @ maps.covering(poset, x, y2)
    return left == right


def projection_map(g, g_sub, a: FiniteAlgebra, m: Bimodule | None = None, fld: Field = QQ,
                   base_vertex: int = 0, sign: str = "sigma_e"):
    """pi_{G,G'}: identity on summands of P(G'), zero elsewhere, with sign correction."""
    from .complex import ChainMap, build_multipath_complex
    from .pathposet import enumerate_path_poset
    from .signs import SignAssignment, assignment, find_sign_isomorphism

    if g_sub.vertex_count != g.vertex_count:
        raise ValidationError("projection target must span the same vertices")
    missing = set(g_sub.edges) - set(g.edges)
    if missing:
        raise ValidationError(f"edges {sorted(missing)} are not in the source graph")
    # bit k of a G' mask corresponds to bit emb[k] of a G mask
    emb = [g.edge_index(e) for e in g_sub.edges]

    def lift(mask: int) -> int:
        out = 0
        for k, b in enumerate(emb):
            if mask >> k & 1:
                out |= 1 << b
        return out

    pg = enumerate_path_poset(g, base_vertex)
    ps = enumerate_path_poset(g_sub, base_vertex)
    src = build_multipath_complex(g, a, m, base_vertex=base_vertex, fld=fld, sign=sign, poset=pg)
    dst = build_multipath_complex(g_sub, a, m, base_vertex=base_vertex, fld=fld, sign=sign, poset=ps)

    eps_g = assignment(pg, sign)
    restricted = SignAssignment({
        (c.lower, c.upper): eps_g[pg.index[lift(ps.elements[c.lower].mask)],
                                  pg.index[lift(ps.elements[c.upper].mask)]]
        for c in ps.coverings
    })
    eta = find_sign_isomorphism(ps, restricted, assignment(ps, sign))
    if eta is None:
        raise ValidationError("no sign isomorphism between restricted and native signs")

    maps = []
    for k in range(len(dst.dims)):
        deg = dst.offset + k
        mat = SparseMatrix(dst.dim(deg), src.dim(deg), fld)
        for mask, (start, dim) in dst.blocks[k].items():
            s_start, s_dim = src.block(deg, lift(mask))
            sgn = fld.reduce(-1) if eta[ps.index[mask]] else 1
            for i in range(dim):
                mat.data[start + i][s_start + i] = sgn
        maps.append(mat)
    return ChainMap(src, dst, maps)
