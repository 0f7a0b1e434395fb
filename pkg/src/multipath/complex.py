"""Cochain complexes assembled from a poset, a functor and a sign assignment."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import Bimodule, FiniteAlgebra, ground_field, regular_bimodule, require_valid
from .digraph import Digraph
from .errors import ValidationError
from .fields import QQ, Field
from .functor import CoveringMaps
from .pathposet import Covering, Subgraph, SubgraphPoset, enumerate_path_poset
from .signs import SignAssignment, assignment
from .sparse import SparseMatrix


@dataclass
class CochainComplex:
    field: Field
    dims: list[int]
    differentials: list[SparseMatrix]
    offset: int = 0
    # per stored degree: summand mask -> (first basis index, dimension)
    blocks: list[dict[int, tuple[int, int]]] = field(default_factory=list)
    name: str = ""

    @property
    def degrees(self) -> range:
        return range(self.offset, self.offset + len(self.dims))

    def dim(self, n: int) -> int:
        k = n - self.offset
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def d(self, n: int) -> SparseMatrix:
        """Differential out of degree ``n`` (a zero matrix outside the stored range)."""
        k = n - self.offset
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        return SparseMatrix.zeros(self.dim(n + 1), self.dim(n), self.field)

    def block(self, n: int, mask: int) -> tuple[int, int]:
        return self.blocks[n - self.offset][mask]

    def verify_d_squared(self) -> bool:
        return all((b @ a).is_zero() for a, b in zip(self.differentials, self.differentials[1:]))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.dim(n) for n in self.degrees)

    def shift(self, k: int) -> "CochainComplex":
        """C[k] with C[k]^n = C^(n+k); the differential is not re-signed."""
        return CochainComplex(self.field, list(self.dims), list(self.differentials),
                              self.offset - k, list(self.blocks), self.name)

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "offset": self.offset,
            "dims": {str(n): self.dim(n) for n in self.degrees},
            "differentials": [
                {
                    "from": self.offset + k,
                    "shape": [d.nrows, d.ncols],
                    "entries": [[r, c, str(v)] for r, c, v in d.entries()],
                }
                for k, d in enumerate(self.differentials)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def verify_d_squared(c: CochainComplex) -> bool:
    return c.verify_d_squared()


def euler_characteristic(c: CochainComplex) -> int:
    return c.euler_characteristic()


@dataclass
class ChainMap:
    source: CochainComplex
    target: CochainComplex
    maps: list[SparseMatrix]  # indexed from target.offset

    def at(self, n: int) -> SparseMatrix:
        k = n - self.target.offset
        if 0 <= k < len(self.maps):
            return self.maps[k]
        return SparseMatrix.zeros(self.target.dim(n), self.source.dim(n), self.source.field)

    def degrees(self) -> range:
        lo = min(self.source.offset, self.target.offset)
        hi = max(self.source.degrees.stop, self.target.degrees.stop)
        return range(lo - 1, hi)

    def is_chain_map(self) -> bool:
        return all(self.target.d(n) @ self.at(n) == self.at(n + 1) @ self.source.d(n)
                   for n in self.degrees())

    def compose(self, first: "ChainMap") -> "ChainMap":
        """self o first."""
        maps = [self.at(n) @ first.at(n) for n in self.target.degrees]
        return ChainMap(first.source, self.target, maps)


def assemble(
    poset: SubgraphPoset,
    space_dim: Callable[[Subgraph], int],
    cover_map: Callable[[Covering], SparseMatrix | None],
    signs: Sequence[int],
    fld: Field,
    name: str = "",
) -> CochainComplex:
    """Generic builder: C^n is the sum of the summands at level n, d the signed sum of covering maps."""
    levels = poset.levels()
    blocks: list[dict[int, tuple[int, int]]] = []
    where: list[tuple[int, int]] = [(0, 0)] * len(poset.elements)
    dims = []
    for k, level in enumerate(levels):
        start = 0
        blk = {}
        for i in level:
            h = poset.elements[i]
            d = space_dim(h)
            blk[h.mask] = (start, d)
            where[i] = (k, start)
            start += d
        blocks.append(blk)
        dims.append(start)
    diffs = [SparseMatrix(dims[k + 1], dims[k], fld) for k in range(len(dims) - 1)]
    minus_one = fld.reduce(-1)
    for n, cov in enumerate(poset.coverings):
        mat = cover_map(cov)
        if mat is None:
            continue
        k, col0 = where[cov.lower]
        _, row0 = where[cov.upper]
        target = diffs[k].data
        neg = signs[n] & 1
        for r, row in enumerate(mat.data):
            dst = target[row0 + r]
            for c, v in row.items():
                dst[col0 + c] = fld.reduce(v * minus_one) if neg else v
    offset = poset.min_level if poset.elements else 0
    return CochainComplex(fld, dims, diffs, offset, blocks, name)


def build_multipath_complex(
    g: Digraph,
    a: FiniteAlgebra | None = None,
    m: Bimodule | None = None,
    base_vertex: int = 0,
    fld: Field = QQ,
    sign: str | SignAssignment = "sigma_e",
    poset: SubgraphPoset | None = None,
    validate: bool = True,
) -> CochainComplex:
    if a is None:
        a, _ = ground_field()
    if m is None:
        m = regular_bimodule(a)
    if validate:
        require_valid(a, m, fld)
    if not 0 <= base_vertex < g.vertex_count:
        raise ValidationError(f"base vertex {base_vertex} outside 0..{g.vertex_count - 1}")
    if poset is None:
        poset = enumerate_path_poset(g, base_vertex)
    elif poset.base_vertex != base_vertex:
        raise ValidationError("poset was built for a different base vertex")
    eps = sign if isinstance(sign, SignAssignment) else assignment(poset, sign)
    maps = CoveringMaps(a, m, fld)

    def cover(cov: Covering):
        h = poset.elements[cov.lower]
        u, v = poset.edges[cov.edge]
        return maps.merge(h.component_count, h.component_of[u], h.component_of[v])

    return assemble(
        poset,
        lambda h: maps.space(h.component_count).dim,
        cover,
        eps.vector(poset),
        fld,
        name=f"C_mu({a.name},{m.name})",
    )
