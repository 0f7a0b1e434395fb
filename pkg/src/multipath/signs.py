"""Sign assignments on squared posets of spanning sub-graphs.

A sign assignment gives every covering a value in Z/2 such that the four
coverings of each square sum to 1.  Existence and uniqueness up to
isomorphism reduce to Z/2 linear algebra on the 2-dimensional cell complex
whose 0-, 1- and 2-cells are elements, coverings and squares.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import ValidationError
from .pathposet import SubgraphPoset


# --- GF(2) linear algebra on int bit-rows ----------------------------------

def gf2_rank(rows: Sequence[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = row
                rank += 1
                break
            row ^= p
    return rank


def gf2_solve(rows: Sequence[int], rhs: Sequence[int], nvars: int) -> list[int] | None:
    """Solve ``rows * x = rhs`` over GF(2); bit ``j`` of a row is variable ``j``.

    Returns the solution in reduced row echelon form with free variables set
    to 0, or ``None`` if the system is inconsistent.
    """
    flag = 1 << nvars
    work = [r | (flag if b & 1 else 0) for r, b in zip(rows, rhs)]
    pivot_rows: list[tuple[int, int]] = []
    r0 = 0
    for col in range(nvars):
        bit = 1 << col
        for i in range(r0, len(work)):
            if work[i] & bit:
                work[r0], work[i] = work[i], work[r0]
                break
        else:
            continue
        pr = work[r0]
        for i in range(len(work)):
            if i != r0 and work[i] & bit:
                work[i] ^= pr
        pivot_rows.append((col, r0))
        r0 += 1
    if any(w == flag for w in work[r0:]):
        return None
    x = [0] * nvars
    for col, i in pivot_rows:
        x[col] = 1 if work[i] & flag else 0
    return x


# --- assignments -----------------------------------------------------------

@dataclass(frozen=True)
class SignAssignment:
    """Values keyed by (lower index, upper index) of each covering."""

    values: Mapping[tuple[int, int], int]

    def __getitem__(self, pair: tuple[int, int]) -> int:
        return self.values[pair]

    def vector(self, poset: SubgraphPoset) -> list[int]:
        out = []
        for c in poset.coverings:
            v = self.values.get((c.lower, c.upper))
            if v is None:
                raise ValidationError(f"no sign for covering {c.lower} < {c.upper}")
            out.append(v & 1)
        return out

    @classmethod
    def from_rule(cls, poset: SubgraphPoset, rule: Callable[[SubgraphPoset, int, int], int]):
        return cls({(c.lower, c.upper): rule(poset, c.lower, c.upper) for c in poset.coverings})

    @classmethod
    def from_vector(cls, poset: SubgraphPoset, bits: Sequence[int]):
        return cls({(c.lower, c.upper): b & 1 for c, b in zip(poset.coverings, bits)})


def sigma_e(poset: SubgraphPoset, lower, upper) -> int:
    c = poset.covering(lower, upper)
    h = poset.elements[c.lower]
    u, v = poset.edges[c.edge]
    s, t = h.component_of[u], h.component_of[v]
    if s == t:
        raise ValidationError("sigma_e needs an edge joining two components")
    return (t + 1) % 2 if t > s else s % 2


def lex_sign(poset: SubgraphPoset, lower, upper) -> int:
    c = poset.covering(lower, upper)
    before = poset.elements[c.lower].mask & ((1 << c.edge) - 1)
    return bin(before).count("1") & 1


def sigma_assignment(poset: SubgraphPoset) -> SignAssignment:
    return SignAssignment.from_rule(poset, sigma_e)


def lex_assignment(poset: SubgraphPoset) -> SignAssignment:
    return SignAssignment.from_rule(poset, lex_sign)


def assignment(poset: SubgraphPoset, name: str) -> SignAssignment:
    if name in ("sigma_e", "sigma"):
        return sigma_assignment(poset)
    if name == "lex":
        return lex_assignment(poset)
    raise ValidationError(f"unknown sign rule {name!r}; use sigma_e or lex")


def verify_sign(poset: SubgraphPoset, eps: SignAssignment) -> tuple[bool, list[tuple[int, int, int, int]]]:
    vec = eps.vector(poset)
    bad = []
    for sq in poset.squares:
        a, b, c, d = poset.square_coverings(sq)
        if (vec[a] + vec[b] + vec[c] + vec[d]) % 2 != 1:
            bad.append(sq)
    return not bad, bad


# --- the cell complex ------------------------------------------------------

@dataclass(frozen=True)
class PosetCW:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, int, int, int], ...]


def poset_cw(poset: SubgraphPoset) -> PosetCW:
    return PosetCW(
        len(poset.elements),
        tuple((c.lower, c.upper) for c in poset.coverings),
        tuple(poset.square_coverings(sq) for sq in poset.squares),
    )


def cw_z2_cohomology_dims(cw: PosetCW | SubgraphPoset) -> tuple[int, int, int]:
    if isinstance(cw, SubgraphPoset):
        cw = poset_cw(cw)
    r0 = gf2_rank([1 << a | 1 << b for a, b in cw.edges])
    r1 = gf2_rank([1 << a | 1 << b | 1 << c | 1 << d for a, b, c, d in cw.faces])
    v, e, f = cw.vertex_count, len(cw.edges), len(cw.faces)
    return v - r0, e - r0 - r1, f - r1


def find_sign_isomorphism(poset: SubgraphPoset, eps: SignAssignment, eps_prime: SignAssignment) -> list[int] | None:
    """eta with eta(x) + eps'(x,y) = eps(x,y) + eta(y) on every covering."""
    a = eps.vector(poset)
    b = eps_prime.vector(poset)
    rows = [1 << c.lower | 1 << c.upper for c in poset.coverings]
    rhs = [x ^ y for x, y in zip(a, b)]
    return gf2_solve(rows, rhs, len(poset.elements))


def is_sign_isomorphism(poset: SubgraphPoset, eps, eps_prime, eta: Sequence[int]) -> bool:
    a, b = eps.vector(poset), eps_prime.vector(poset)
    return all(
        (eta[c.lower] + b[k]) % 2 == (a[k] + eta[c.upper]) % 2
        for k, c in enumerate(poset.coverings)
    )


def classify_square(poset: SubgraphPoset, square) -> str:
    """'A' when the two added edges meet three components, 'B' when four."""
    x, _, _, z = square
    bottom = poset.elements[x]
    added = poset.elements[z].mask & ~bottom.mask
    touched = set()
    for k, (u, v) in enumerate(poset.edges):
        if added >> k & 1:
            touched.add(bottom.component_of[u])
            touched.add(bottom.component_of[v])
    return {3: "A", 4: "B"}.get(len(touched), "other")
