"""Brute-force property suites over small digraphs.

Each suite returns a :class:`SuiteResult`; ``run_all`` is what the
``selftest`` command executes.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

from .algebra import dual_numbers, ground_field
from .complex import build_multipath_complex
from .digraph import (Digraph, coherent_line, is_isomorphic, is_weakly_connected, polygon,
                      small_digraphs)
from .functor import CoveringMaps, projection_map, verify_square_commutes
from .homology import betti
from .morse import _acyclic, greedy_matching, shortcut_homology, verify_matching
from .pathposet import enumerate_path_poset, is_boolean_path_poset, is_multipath
from .signs import (classify_square, find_sign_isomorphism, is_sign_isomorphism, lex_assignment,
                    sigma_assignment, verify_sign)


@dataclass
class SuiteResult:
    name: str
    ok: bool
    cases: int
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0


def _suite(name):
    def wrap(fn):
        def run(graphs=None) -> SuiteResult:
            t0 = time.perf_counter()
            failures: list[str] = []
            cases = fn(failures, graphs)
            return SuiteResult(name, not failures, cases, failures[:10], time.perf_counter() - t0)
        run.suite_name = name
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _graphs(graphs):
    return graphs if graphs is not None else small_digraphs(4)


# --- literal oracles -------------------------------------------------------

def is_multipath_literal(vertex_count: int, edges) -> bool:
    """Every component is a lone vertex or its edges, in some order, form a simple path."""
    comp = list(range(vertex_count))

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    for u, v in edges:
        comp[find(u)] = find(v)
    groups: dict[int, list] = {}
    for e in edges:
        groups.setdefault(find(e[0]), []).append(e)
    for es in groups.values():
        verts = {x for e in es for x in e}
        # a simple path with k edges visits k+1 distinct vertices
        if len(es) != len(verts) - 1:
            return False
        if not any(all(p[i][1] == p[i + 1][0] for i in range(len(p) - 1)) for p in permutations(es)):
            return False
    return True


def has_cycle_bruteforce(n: int, arcs) -> bool:
    """Depth-first enumeration of simple paths; any path returning to its start is a cycle."""
    succ: dict[int, list[int]] = {}
    for a, b in arcs:
        succ.setdefault(a, []).append(b)

    def walk(start, node, seen):
        for nxt in succ.get(node, []):
            if nxt == start:
                return True
            if nxt not in seen and walk(start, nxt, seen | {nxt}):
                return True
        return False

    return any(walk(s, s, {s}) for s in range(n))


# --- suites ----------------------------------------------------------------

@_suite("multipath recognition equals the literal definition")
def suite_multipath_literal(failures, graphs):
    full = Digraph(4, tuple((u, v) for u in range(4) for v in range(4) if u != v))
    for mask in range(1 << full.edge_count):
        if is_multipath(full, mask) != is_multipath_literal(4, full.edges_of(mask)):
            failures.append(f"mask {mask:x}")
    return 1 << full.edge_count


@_suite("path poset is downward closed and squared")
def suite_poset_structure(failures, graphs):
    count = 0
    for g in _graphs(graphs):
        p = enumerate_path_poset(g)
        count += 1
        for h in p.elements:
            for k in range(g.edge_count):
                if h.mask >> k & 1 and (h.mask & ~(1 << k)) not in p.index:
                    failures.append(f"{g}: not downward closed at {p.edge_label(h.mask)}")
        for i, h in enumerate(p.elements):
            for c1 in p.up[i]:
                for c2 in p.up[p.coverings[c1].upper]:
                    z = p.coverings[c2].upper
                    mids = [p.coverings[c].upper for c in p.up[i]
                            if (p.coverings[c].upper, z) in p.covering_index]
                    if len(mids) != 2:
                        failures.append(f"{g}: chain below {p.edge_label(p.elements[z].mask)} has {len(mids)} middles")
    return count


@_suite("boolean path poset iff isomorphic to a coherent line")
def suite_boolean_poset(failures, graphs):
    count = 0
    for g in _graphs(graphs):
        if not is_weakly_connected(g):
            continue
        count += 1
        line = g.edge_count == g.vertex_count - 1 and is_isomorphic(g, coherent_line(g.edge_count))
        if is_boolean_path_poset(g) != line:
            failures.append(str(g))
    return count


@_suite("boolean poset minus its maximum iff isomorphic to a polygon")
def suite_polygon_poset(failures, graphs):
    count = 0
    for g in _graphs(graphs):
        n = g.edge_count
        if n not in (3, 4) or not is_weakly_connected(g):
            continue
        count += 1
        p = enumerate_path_poset(g)
        shape = len(p) == 2 ** n - 1 and all(p.elements[i].level == n - 1 for i in p.maximal_elements())
        cyc = g.vertex_count == n and is_isomorphic(g, polygon(n - 1))
        if shape != cyc:
            failures.append(str(g))
    return count


def _sign_targets(graphs):
    extra = [coherent_line(n) for n in range(1, 7)] + [polygon(n) for n in range(1, 7)]
    return list(_graphs(graphs)) + extra


@_suite("sigma_e satisfies the square parity; squares split into the two merge cases")
def suite_sigma_parity(failures, graphs):
    count = 0
    for g in _sign_targets(graphs):
        p = enumerate_path_poset(g)
        ok, bad = verify_sign(p, sigma_assignment(p))
        count += 1
        if not ok:
            failures.append(f"{g}: {len(bad)} bad squares")
        for sq in p.squares:
            if classify_square(p, sq) not in ("A", "B"):
                failures.append(f"{g}: square {sq} is neither case")
    return count


@_suite("sigma_e and lex signs are isomorphic")
def suite_sign_isomorphism(failures, graphs):
    count = 0
    for g in _graphs(graphs):
        p = enumerate_path_poset(g)
        s, lx = sigma_assignment(p), lex_assignment(p)
        if not verify_sign(p, lx)[0]:
            failures.append(f"{g}: lex sign invalid")
        eta = find_sign_isomorphism(p, s, lx)
        count += 1
        if eta is None or not is_sign_isomorphism(p, s, lx, eta):
            failures.append(f"{g}: no isomorphism")
    return count


def _betti_both_signs(g: Digraph):
    out = []
    for alg in (ground_field()[0], dual_numbers()):
        pair = []
        for sign in ("sigma_e", "lex"):
            c = build_multipath_complex(g, alg, sign=sign)
            if not c.verify_d_squared():
                return None
            pair.append(betti(c, check=False))
        out.append(pair)
    return out


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("MULTIPATH_THREADS", "1")))
    except ValueError:
        return 1


@_suite("d*d = 0 and Betti tables do not depend on the sign assignment")
def suite_sign_independence(failures, graphs):
    gs = list(_graphs(graphs))
    workers = _workers()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_betti_both_signs, gs, chunksize=8))
    else:
        results = [_betti_both_signs(g) for g in gs]
    for g, res in zip(gs, results):
        if res is None:
            failures.append(f"{g}: d*d != 0")
            continue
        for (a, b) in res:
            if a != b:
                failures.append(f"{g}: {a} != {b}")
    return 4 * len(gs)


@_suite("covering maps commute on every square (dual numbers)")
def suite_functoriality(failures, graphs):
    a = dual_numbers()
    maps = CoveringMaps(a)
    count = 0
    for g in _graphs(graphs):
        p = enumerate_path_poset(g)
        for sq in p.squares:
            count += 1
            if not verify_square_commutes(p, sq, a, maps=maps):
                failures.append(f"{g}: square {sq}")
    return count


@_suite("Betti tables do not depend on vertex labels or base vertex when M = A")
def suite_relabel(failures, graphs):
    a = dual_numbers()
    count = 0
    for g in _graphs(graphs):
        want = betti(build_multipath_complex(g, a))
        n = g.vertex_count
        # every relabelling up to 3 vertices; reversal of the order beyond
        perms = list(permutations(range(n))) if n <= 3 else [tuple(range(n - 1, -1, -1))]
        for perm in perms:
            h = g.relabel(perm)
            for base in range(h.vertex_count):
                count += 1
                got = betti(build_multipath_complex(h, a, base_vertex=base))
                if got != want:
                    failures.append(f"{g} relabelled {perm} base {base}: {got} != {want}")
    return count


@_suite("Morse shortcut agrees with direct cohomology whenever conclusive")
def suite_morse(failures, graphs):
    count = 0
    for g in _graphs(graphs):
        p = enumerate_path_poset(g)
        m = greedy_matching(p)
        ok, why = verify_matching(p, m)
        if not ok:
            failures.append(f"{g}: greedy matching invalid ({why})")
            continue
        short = shortcut_homology(p, m)
        if short is None:
            continue
        count += 1
        direct = betti(build_multipath_complex(g))
        if short != direct:
            failures.append(f"{g}: shortcut {short} != direct {direct}")
    return count


@_suite("Kahn acyclicity test agrees with brute-force cycle search")
def suite_acyclicity_oracle(failures, graphs):
    count = 0
    for g in _graphs(graphs):
        p = enumerate_path_poset(g)
        if len(p) > 32:
            continue
        # every single covering, and the greedy matching plus each extra covering
        base = {p.covering_index[p.index[lo], p.index[hi]] for lo, hi in greedy_matching(p)}
        trials = [{k} for k in range(len(p.coverings))] + [base | {k} for k in range(len(p.coverings))]
        for matched in trials:
            count += 1
            arcs = [(c.upper, c.lower) if k in matched else (c.lower, c.upper)
                    for k, c in enumerate(p.coverings)]
            if _acyclic(p, matched) == has_cycle_bruteforce(len(p), arcs):
                failures.append(f"{g}: disagreement on {sorted(matched)}")
    return count


@_suite("projections compose and are chain maps")
def suite_projection(failures, graphs):
    a = dual_numbers()
    g = coherent_line(3)
    g1 = Digraph(4, g.edges[:2])
    g2 = Digraph(4, g.edges[:1])
    p01 = projection_map(g, g1, a)
    p12 = projection_map(g1, g2, a)
    p02 = projection_map(g, g2, a)
    for name, pm in (("G->G'", p01), ("G'->G''", p12), ("G->G''", p02)):
        if not pm.is_chain_map():
            failures.append(f"{name} is not a chain map")
    comp = p12.compose(p01)
    for n in p02.target.degrees:
        if comp.at(n) != p02.at(n):
            failures.append(f"composition differs in degree {n}")
    return 4


ALL_SUITES = [
    suite_multipath_literal,
    suite_poset_structure,
    suite_boolean_poset,
    suite_polygon_poset,
    suite_sigma_parity,
    suite_sign_isomorphism,
    suite_sign_independence,
    suite_functoriality,
    suite_relabel,
    suite_morse,
    suite_acyclicity_oracle,
    suite_projection,
]


def run_all(graphs=None) -> list[SuiteResult]:
    gs = _graphs(graphs)
    return [suite(gs) for suite in ALL_SUITES]
