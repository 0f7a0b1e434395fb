"""Finite digraphs with the vertex and edge orderings used everywhere else.

Vertices are ``0 .. n-1`` and their well-ordering is index order.  Edges are
stored sorted lexicographically by ``(source, target)``; the position of an
edge in that tuple is its bit in every edge-subset mask.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ParseError, ValidationError

MAX_VERTICES = 64
MAX_EDGES = 64

Edge = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        n = self.vertex_count
        if not 0 <= n <= MAX_VERTICES:
            raise ValidationError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        edges = tuple(sorted((int(u), int(v)) for u, v in self.edges))
        if len(edges) > MAX_EDGES:
            raise ValidationError(f"{len(edges)} edges exceeds the limit of {MAX_EDGES}")
        for k, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge {u}->{v} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if k and edges[k - 1] == (u, v):
                raise ValidationError(f"duplicate edge {u}->{v}")
        object.__setattr__(self, "edges", edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_index(self, edge: Edge) -> int:
        try:
            return self.edges.index(tuple(edge))
        except ValueError:
            raise ValidationError(f"{edge} is not an edge") from None

    def mask_of(self, edges: Iterable[Edge]) -> int:
        mask = 0
        for e in edges:
            mask |= 1 << self.edge_index(e)
        return mask

    def edges_of(self, mask: int) -> list[Edge]:
        return [e for k, e in enumerate(self.edges) if mask >> k & 1]

    def spanning_subgraph(self, mask: int) -> "Digraph":
        return Digraph(self.vertex_count, tuple(self.edges_of(mask)))

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Digraph(self.vertex_count, tuple((perm[u], perm[v]) for u, v in self.edges))

    def in_degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for _, v in self.edges:
            deg[v] += 1
        return deg

    def out_degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, _ in self.edges:
            deg[u] += 1
        return deg

    def __str__(self) -> str:
        return serialize_edge_list(self).strip().replace("\n", "; ")


# The vertex order is index order and the edge order is lexicographic, so every
# Digraph already carries the ordering.
OrderedDigraph = Digraph


@dataclass(frozen=True)
class UnorientedGraph:
    """Multigraph: parallel edges are kept, each edge stored as ``(u, v)`` with ``u < v``."""

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        n = self.vertex_count
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
            norm.append((min(u, v), max(u, v)))
        if len(norm) > MAX_EDGES:
            raise ValidationError(f"{len(norm)} edges exceeds the limit of {MAX_EDGES}")
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def underlying_unoriented(g: Digraph) -> UnorientedGraph:
    # a digon yields two parallel edges on purpose
    return UnorientedGraph(g.vertex_count, g.edges)


def is_regular_embedding(phi: Mapping[int, int] | Sequence[int], g1: Digraph, g2: Digraph) -> bool:
    images = [phi[v] for v in range(g1.vertex_count)]
    if len(set(images)) != len(images):
        return False
    if any(not 0 <= w < g2.vertex_count for w in images):
        return False
    targets = set(g2.edges)
    return all((images[u], images[v]) in targets for u, v in g1.edges)


# --- text format -----------------------------------------------------------

def parse_edge_list(text: bytes | str) -> Digraph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 text ({exc.reason})") from None
    n = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "vertices" or not parts[1].isdigit():
                raise ParseError("expected 'vertices N' header", lineno)
            n = int(parts[1])
            if n > MAX_VERTICES:
                raise ParseError(f"at most {MAX_VERTICES} vertices are supported", lineno)
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge {u} {v} (first on line {seen[u, v]})", lineno)
        seen[u, v] = lineno
        edges.append((u, v))
    if n is None:
        raise ParseError("missing 'vertices N' header")
    return Digraph(n, tuple(edges))


def serialize_edge_list(g: Digraph) -> str:
    lines = [f"vertices {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# --- standard graphs -------------------------------------------------------

def coherent_line(n: int) -> Digraph:
    """I_n: the path 0 -> 1 -> ... -> n with n edges."""
    return Digraph(n + 1, tuple((i, i + 1) for i in range(n)))


def polygon(n: int) -> Digraph:
    """P_n: the directed cycle on n+1 vertices (n=1 is the digon)."""
    if n < 1:
        raise ValidationError("polygon needs n >= 1")
    return Digraph(n + 1, tuple((i, i + 1) for i in range(n)) + ((n, 0),))


def noncoherent_line() -> Digraph:
    return Digraph(3, ((0, 1), (2, 1)))


def y_sink() -> Digraph:
    """Three edges into vertex 1."""
    return Digraph(4, ((0, 1), (2, 1), (3, 1)))


def y_fork() -> Digraph:
    """0 -> 1 followed by a fork 1 -> 2, 1 -> 3."""
    return Digraph(4, ((0, 1), (1, 2), (1, 3)))


def h_graph() -> Digraph:
    """0, 2 -> 1 and 3, 5 -> 4, with the bridge 1 -> 4."""
    return Digraph(6, ((0, 1), (1, 4), (2, 1), (3, 4), (5, 4)))


# --- small-graph enumeration -----------------------------------------------

def is_weakly_connected(g: Digraph) -> bool:
    n = g.vertex_count
    if n == 0:
        return True
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(n)}) == 1


def all_labelled_digraphs(n: int) -> Iterator[Digraph]:
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(pairs)):
        yield Digraph(n, tuple(p for k, p in enumerate(pairs) if mask >> k & 1))


def canonical_form(g: Digraph) -> tuple[int, tuple[Edge, ...]]:
    """Lexicographically least edge tuple over all relabellings (brute force)."""
    n = g.vertex_count
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted((perm[u], perm[v]) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return n, best if best is not None else ()


def is_isomorphic(g1: Digraph, g2: Digraph) -> bool:
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.in_degrees()) != sorted(g2.in_degrees()):
        return False
    if sorted(g1.out_degrees()) != sorted(g2.out_degrees()):
        return False
    if g1.vertex_count > 8:
        raise ValidationError("brute-force isomorphism is limited to 8 vertices")
    target = set(g2.edges)
    return any(
        all((perm[u], perm[v]) in target for u, v in g1.edges)
        for perm in permutations(range(g1.vertex_count))
    )


def nonisomorphic_digraphs(n: int) -> list[Digraph]:
    """One representative per isomorphism class on ``n`` vertices, sorted."""
    classes = {canonical_form(g) for g in all_labelled_digraphs(n)}
    return [Digraph(m, edges) for m, edges in sorted(classes, key=lambda c: (len(c[1]), c[1]))]


def small_digraphs(max_vertices: int = 4) -> list[Digraph]:
    out: list[Digraph] = []
    for n in range(1, max_vertices + 1):
        out.extend(nonisomorphic_digraphs(n))
    return out
