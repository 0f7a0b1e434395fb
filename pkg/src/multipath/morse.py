"""Acyclic matchings on Hasse diagrams and the two homology shortcuts.

Only ground-field coefficients are handled: every summand is then
one-dimensional and the Hasse diagram is the Morse graph.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable

from .errors import ParseError, ValidationError
from .pathposet import SubgraphPoset

# pairs of (lower mask, upper mask)
Matching = frozenset


def matching_coverings(poset: SubgraphPoset, m: Iterable[tuple[int, int]]) -> list[int]:
    out = []
    for lo, hi in m:
        i, j = poset.index.get(lo), poset.index.get(hi)
        c = poset.covering_index.get((i, j)) if i is not None and j is not None else None
        if c is None:
            raise ValidationError(f"{poset.edge_label(lo)} < {poset.edge_label(hi)} is not a covering")
        out.append(c)
    return out


def _acyclic(poset: SubgraphPoset, matched: set[int]) -> bool:
    """Kahn's algorithm on the Hasse diagram with matched coverings reversed."""
    n = len(poset.elements)
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for k, c in enumerate(poset.coverings):
        a, b = (c.upper, c.lower) if k in matched else (c.lower, c.upper)
        succ[a].append(b)
        indeg[b] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    seen = 0
    while queue:
        x = queue.popleft()
        seen += 1
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    return seen == n


def verify_matching(poset: SubgraphPoset, m: Iterable[tuple[int, int]]) -> tuple[bool, str]:
    covs = matching_coverings(poset, m)
    used: set[int] = set()
    for k in covs:
        c = poset.coverings[k]
        for x in (c.lower, c.upper):
            if x in used:
                return False, f"element {poset.edge_label(poset.elements[x].mask)} is matched twice"
            used.add(x)
    if not _acyclic(poset, set(covs)):
        return False, "reversing the matched edges creates a directed cycle"
    return True, "ok"


def critical_cells(poset: SubgraphPoset, m: Iterable[tuple[int, int]]) -> dict[int, int]:
    matched = set()
    for lo, hi in m:
        matched.add(lo)
        matched.add(hi)
    out = {lv: 0 for lv in range(poset.min_level, poset.max_level + 1)}
    for h in poset.elements:
        if h.mask not in matched:
            out[h.level] += 1
    return out


def shortcut_homology(poset: SubgraphPoset, m: Iterable[tuple[int, int]]) -> dict[int, int] | None:
    """Cohomology forced by the critical cells, or ``None`` when inconclusive.

    No critical cells means the complex is acyclic; critical cells in a
    single degree pin the cohomology to that degree.
    """
    crit = critical_cells(poset, m)
    occupied = [lv for lv, k in crit.items() if k]
    if len(occupied) > 1:
        return None
    return {lv: crit[lv] if lv in occupied else 0 for lv in crit}


def greedy_matching(poset: SubgraphPoset) -> Matching:
    """Scan coverings in canonical (lower, edge) order, keeping each pair that stays acyclic."""
    used: set[int] = set()
    matched: set[int] = set()
    for k, c in enumerate(poset.coverings):
        if c.lower in used or c.upper in used:
            continue
        matched.add(k)
        if _acyclic(poset, matched):
            used.update((c.lower, c.upper))
        else:
            matched.discard(k)
    return Matching(
        (poset.elements[poset.coverings[k].lower].mask, poset.elements[poset.coverings[k].upper].mask)
        for k in matched
    )


def parse_matching(text: str) -> Matching:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'lower upper', got {line!r}", lineno)
        try:
            pairs.append((int(parts[0], 16), int(parts[1], 16)))
        except ValueError:
            raise ParseError(f"not a hex bit set: {line!r}", lineno) from None
    return Matching(pairs)


def format_matching(m: Iterable[tuple[int, int]]) -> str:
    return "".join(f"{lo:x} {hi:x}\n" for lo, hi in sorted(m))
