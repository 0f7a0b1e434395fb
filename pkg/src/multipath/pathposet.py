"""Posets of spanning sub-graphs: the path poset and its relatives.

Every element is an edge subset (a bit mask over the parent's edge order)
together with its connected components.  Elements are kept in canonical
order, ``(level, mask)``, so indices are stable across runs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .digraph import Digraph, Edge, is_weakly_connected
from .errors import ValidationError


@dataclass(frozen=True)
class Subgraph:
    mask: int
    level: int
    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]

    @property
    def component_count(self) -> int:
        return len(self.components)


# A multipath is a spanning sub-graph that happens to lie in the path poset.
Multipath = Subgraph


@dataclass(frozen=True)
class Covering:
    lower: int
    upper: int
    edge: int


def _components(n: int, edges: Sequence[Edge], mask: int, base_vertex: int):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    k = 0
    m = mask
    while m:
        if m & 1:
            u, v = edges[k]
            parent[find(u)] = find(v)
        m >>= 1
        k += 1
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)

    def rank(v):
        return -1 if v == base_vertex else v

    comps = sorted((tuple(g) for g in groups.values()), key=lambda c: min(rank(v) for v in c))
    comp_of = [0] * n
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    return tuple(comps), tuple(comp_of)


def is_multipath(g: Digraph, edges: int) -> bool:
    """In- and out-degree at most one and no cycle.

    With both degrees bounded by one, any undirected cycle is a directed one,
    so a union-find cycle test suffices.
    """
    n = g.vertex_count
    indeg = [0] * n
    outdeg = [0] * n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, (u, v) in enumerate(g.edges):
        if not edges >> k & 1:
            continue
        outdeg[u] += 1
        indeg[v] += 1
        if outdeg[u] > 1 or indeg[v] > 1:
            return False
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


class SubgraphPoset:
    """A family of spanning sub-graphs ordered by inclusion.

    ``masks`` must be closed under the intervals it spans (true for the path
    poset, the full Boolean poset and the complement of the path poset).
    """

    def __init__(
        self,
        vertex_count: int,
        edges: Sequence[Edge],
        masks: Iterable[int],
        base_vertex: int = 0,
        kind: str = "subgraphs",
    ):
        if not 0 <= base_vertex < max(vertex_count, 1):
            raise ValidationError(f"base vertex {base_vertex} outside 0..{vertex_count - 1}")
        self.vertex_count = vertex_count
        self.edges = tuple(edges)
        self.base_vertex = base_vertex
        self.kind = kind
        ordered = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
        self.elements: list[Subgraph] = []
        for m in ordered:
            comps, comp_of = _components(vertex_count, self.edges, m, base_vertex)
            self.elements.append(Subgraph(m, bin(m).count("1"), comps, comp_of))
        self.index = {h.mask: i for i, h in enumerate(self.elements)}

        self.coverings: list[Covering] = []
        self.up: list[list[int]] = [[] for _ in self.elements]
        self.down: list[list[int]] = [[] for _ in self.elements]
        for i, h in enumerate(self.elements):
            for k in range(len(self.edges)):
                bit = 1 << k
                if h.mask & bit:
                    continue
                j = self.index.get(h.mask | bit)
                if j is not None:
                    c = len(self.coverings)
                    self.coverings.append(Covering(i, j, k))
                    self.up[i].append(c)
                    self.down[j].append(c)
        self.covering_index = {(c.lower, c.upper): n for n, c in enumerate(self.coverings)}

        self.squares: list[tuple[int, int, int, int]] = []
        for i, h in enumerate(self.elements):
            ups = self.up[i]
            for a in range(len(ups)):
                ca = self.coverings[ups[a]]
                for b in range(a + 1, len(ups)):
                    cb = self.coverings[ups[b]]
                    top = self.index.get(h.mask | 1 << ca.edge | 1 << cb.edge)
                    if top is not None:
                        self.squares.append((i, ca.upper, cb.upper, top))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def min_level(self) -> int:
        return self.elements[0].level if self.elements else 0

    @property
    def max_level(self) -> int:
        return self.elements[-1].level if self.elements else -1

    def levels(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, h in enumerate(self.elements):
            out.setdefault(h.level, []).append(i)
        return [out.get(lv, []) for lv in range(self.min_level, self.max_level + 1)]

    def level_sizes(self) -> list[int]:
        return [len(lv) for lv in self.levels()]

    def element(self, key: int | Subgraph) -> int:
        if isinstance(key, Subgraph):
            return self.index[key.mask]
        return key

    def covering(self, lower, upper) -> Covering:
        i, j = self.element(lower), self.element(upper)
        c = self.covering_index.get((i, j))
        if c is None:
            raise ValidationError(f"elements {i} and {j} do not form a covering")
        return self.coverings[c]

    def square_coverings(self, square) -> tuple[int, int, int, int]:
        """Covering indices (x<y, y<z, x<y', y'<z) of a square."""
        x, y, y2, z = square
        ci = self.covering_index
        return ci[x, y], ci[y, z], ci[x, y2], ci[y2, z]

    def _edge_name(self, k: int) -> str:
        u, v = self.edges[k]
        return f"{u}{v}" if self.vertex_count <= 10 else f"{u}.{v}"

    def edge_label(self, mask: int) -> str:
        return "{" + ",".join(self._edge_name(k) for k in range(len(self.edges)) if mask >> k & 1) + "}"

    def maximal_elements(self) -> list[int]:
        return [i for i in range(len(self.elements)) if not self.up[i]]

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for h in self.elements:
            lines.append(f'  m{h.mask:x} [label="{self.edge_label(h.mask)}"];')
        for c in self.coverings:
            lo, hi = self.elements[c.lower].mask, self.elements[c.upper].mask
            lines.append(f'  m{lo:x} -> m{hi:x} [label="{self._edge_name(c.edge)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class PathPoset(SubgraphPoset):
    def __init__(self, g: Digraph, base_vertex: int = 0):
        self.graph = g
        masks = {0}
        queue = deque([0])
        while queue:
            m = queue.popleft()
            for k in range(g.edge_count):
                nm = m | 1 << k
                if nm != m and nm not in masks and is_multipath(g, nm):
                    masks.add(nm)
                    queue.append(nm)
        super().__init__(g.vertex_count, g.edges, masks, base_vertex, kind="path")


def enumerate_path_poset(g: Digraph, base_vertex: int = 0) -> PathPoset:
    return PathPoset(g, base_vertex)


def spanning_subgraph_poset(vertex_count: int, edges: Sequence[Edge], base_vertex: int = 0) -> SubgraphPoset:
    return SubgraphPoset(vertex_count, edges, range(1 << len(edges)), base_vertex, kind="ssg")


def complement_poset(g: Digraph, base_vertex: int = 0) -> SubgraphPoset:
    """SSG(G) minus P(G); upward closed."""
    masks = [m for m in range(1 << g.edge_count) if not is_multipath(g, m)]
    return SubgraphPoset(g.vertex_count, g.edges, masks, base_vertex, kind="complement")


def source_target_index(h: Subgraph, e: Edge) -> tuple[int, int]:
    u, v = e
    return h.component_of[u], h.component_of[v]


def is_boolean_path_poset(g: Digraph) -> bool:
    if not is_weakly_connected(g):
        raise ValidationError("is_boolean_path_poset expects a connected digraph")
    p = PathPoset(g)
    return len(p) == 1 << g.edge_count and len(p.maximal_elements()) == 1
