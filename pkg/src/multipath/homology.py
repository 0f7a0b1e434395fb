"""Exact ranks and Betti numbers.

GF(p) ranks go straight to the modular kernel.  Over Q the matrix is scaled
row-wise to integers; with the compiled kernel available the rank is then
computed multi-modularly and certified by a Hadamard bound, otherwise by
fraction-free elimination.
"""
from __future__ import annotations

from array import array
from fractions import Fraction
from math import lcm
from typing import TYPE_CHECKING

from . import kernels
from .errors import InvariantError
from .fields import is_prime
from .sparse import SparseMatrix

if TYPE_CHECKING:
    from .complex import CochainComplex

BettiTable = dict[int, int]

_PRIMES: list[int] = []


def _prime(i: int) -> int:
    """The i-th prime below 2**31, counting down."""
    while len(_PRIMES) <= i:
        q = (_PRIMES[-1] if _PRIMES else 2**31) - 1
        while not is_prime(q):
            q -= 1
        _PRIMES.append(q)
    return _PRIMES[i]


def _markowitz_order(rows: list[dict[int, object]]) -> tuple[list[dict[int, object]], dict[int, int]]:
    """Static Markowitz ordering: sparse rows first, sparse columns leftmost."""
    rows = [r for r in rows if r]
    counts: dict[int, int] = {}
    for r in rows:
        for c in r:
            counts[c] = counts.get(c, 0) + 1
    colmap = {c: i for i, c in enumerate(sorted(counts, key=lambda c: (counts[c], c)))}
    rows.sort(key=len)
    return rows, colmap


def _csr(rows, colmap, p: int):
    indptr = array("q", [0])
    indices = array("q")
    values = array("q")
    for r in rows:
        for c, v in r.items():
            indices.append(colmap[c])
            values.append(v % p)
        indptr.append(len(indices))
    return indptr, indices, values


def _integer_rows(m: SparseMatrix) -> list[dict[int, int]]:
    out = []
    for row in m.data:
        if not row:
            continue
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        out.append({c: int(v * den) for c, v in row.items() if v != 0})
    return out


def rank_mod_p(m: SparseMatrix | list[dict[int, int]], p: int) -> int:
    rows = m.data if isinstance(m, SparseMatrix) else m
    rows, colmap = _markowitz_order(list(rows))
    if not rows:
        return 0
    indptr, indices, values = _csr(rows, colmap, p)
    return kernels.rank_mod_p(len(colmap), indptr, indices, values, p)


def rank_fraction_free(m: SparseMatrix) -> int:
    rows, _ = _markowitz_order(_integer_rows(m))
    return kernels.rank_integer(rows)


def _top_product(sq_norms: list[int], k: int) -> int:
    out = 1
    for x in sorted(sq_norms, reverse=True)[:k]:
        out *= x
    return out


def rank_multimodular(m: SparseMatrix) -> int:
    """Certified Q-rank from GF(p) ranks.

    If the true rank R exceeds r = max rank mod p seen so far, every prime
    tried divides a nonzero (r+1)-minor, whose square is bounded by the
    product of the r+1 largest squared column (or row) norms.  Once the
    product of the primes exceeds that bound, R = r.
    """
    rows = _integer_rows(m)
    if not rows:
        return 0
    col_sq: dict[int, int] = {}
    row_sq = []
    for r in rows:
        s = 0
        for c, v in r.items():
            col_sq[c] = col_sq.get(c, 0) + v * v
            s += v * v
        row_sq.append(s)
    cols = list(col_sq.values())
    full = min(len(rows), len(cols))
    ordered, colmap = _markowitz_order(rows)

    best = 0
    prod = 1
    i = 0
    while best < full:
        bound_sq = min(_top_product(cols, best + 1), _top_product(row_sq, best + 1))
        if prod * prod > bound_sq:
            break
        p = _prime(i)
        i += 1
        prod *= p
        indptr, indices, values = _csr(ordered, colmap, p)
        best = max(best, kernels.rank_mod_p(len(colmap), indptr, indices, values, p))
    return best


def rank(m: SparseMatrix, method: str = "auto") -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    p = m.field.characteristic
    if p:
        return rank_mod_p(m, p)
    if method == "fraction_free" or (method == "auto" and not kernels.COMPILED):
        return rank_fraction_free(m)
    return rank_multimodular(m)


def betti(c: "CochainComplex", check: bool = True) -> BettiTable:
    """Cohomology dimensions by rank-nullity; every degree of the complex is listed."""
    if check and not c.verify_d_squared():
        raise InvariantError("d o d != 0; refusing to compute cohomology")
    ranks = [rank(d) for d in c.differentials]
    out: BettiTable = {}
    for k, dim in enumerate(c.dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k > 0 else 0
        h = dim - r_out - r_in
        if h < 0:
            raise InvariantError(f"negative cohomology dimension in degree {c.offset + k}")
        out[c.offset + k] = h
    return out


def nonzero(table: BettiTable) -> BettiTable:
    return {k: v for k, v in table.items() if v}


def kernel_basis(m: SparseMatrix) -> list[dict[int, object]]:
    """Basis of {x : m x = 0} by Gauss-Jordan elimination; vectors are sparse dicts."""
    fld = m.field
    red = fld.reduce
    pivots: dict[int, dict[int, object]] = {}  # pivot column -> row with leading 1
    for src in m.data:
        row = {c: v for c, v in src.items() if v != 0}
        for c in sorted(row):
            if c in pivots and row.get(c, 0) != 0:
                f = row[c]
                for cc, v in pivots[c].items():
                    nv = red(row.get(cc, 0) - f * v)
                    if nv == 0:
                        row.pop(cc, None)
                    else:
                        row[cc] = nv
        if not row:
            continue
        lead = min(row)
        inv = fld.inv(row[lead])
        row = {c: red(v * inv) for c, v in row.items()}
        for other in pivots.values():
            f = other.get(lead, 0)
            if f != 0:
                for cc, v in row.items():
                    nv = red(other.get(cc, 0) - f * v)
                    if nv == 0:
                        other.pop(cc, None)
                    else:
                        other[cc] = nv
        pivots[lead] = row
    basis = []
    for free in range(m.ncols):
        if free in pivots:
            continue
        vec = {free: 1}
        for p, row in pivots.items():
            v = row.get(free, 0)
            if v != 0:
                vec[p] = red(-v)
        basis.append(vec)
    return basis


def apply(m: SparseMatrix, vec: dict[int, object]) -> dict[int, object]:
    red = m.field.reduce
    out: dict[int, object] = {}
    for r, row in enumerate(m.data):
        acc = 0
        for c, v in row.items():
            x = vec.get(c)
            if x is not None:
                acc += v * x
        acc = red(acc)
        if acc != 0:
            out[r] = acc
    return out


def induced_rank(f: SparseMatrix, d_src: SparseMatrix, d_tgt_in: SparseMatrix) -> int:
    """Rank of the map H(f) : ker d_src -> coker d_tgt_in induced in cohomology."""
    images = [apply(f, z) for z in kernel_basis(d_src)]
    boundary = d_tgt_in.transpose().data
    fld = f.field
    both = SparseMatrix(len(boundary) + len(images), f.nrows, fld, [dict(r) for r in boundary] + images)
    only = SparseMatrix(len(boundary), f.nrows, fld, [dict(r) for r in boundary])
    return rank(both) - rank(only)
