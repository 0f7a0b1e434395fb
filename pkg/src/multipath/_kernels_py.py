"""Pure-Python elimination kernels, used when the extension is not built."""
from __future__ import annotations

from math import gcd


def rank_mod_p(ncols, indptr, indices, values, p):
    """Rank over GF(p) of a CSR matrix; mirrors the compiled kernel."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for r in range(len(indptr) - 1):
        row: dict[int, int] = {}
        for k in range(indptr[r], indptr[r + 1]):
            c = indices[k]
            row[c] = (row.get(c, 0) + values[k]) % p
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            v = row[c]
            prow = pivots.get(c)
            if prow is None:
                inv = pow(v, -1, p)
                pivots[c] = {cc: x * inv % p for cc, x in row.items()}
                rank += 1
                break
            for cc, x in prow.items():
                y = (row.get(cc, 0) - v * x) % p
                if y:
                    row[cc] = y
                else:
                    row.pop(cc, None)
    return rank


def rank_integer(rows):
    """Exact rank of an integer matrix given as a list of ``{col: int}`` rows.

    Fraction-free: each reduction step is ``b*row - a*pivot`` followed by
    division by the row content, which keeps entries small.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for src in rows:
        row = {c: v for c, v in src.items() if v}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = row
                rank += 1
                break
            a, b = row[c], prow[c]
            new = {k: b * v for k, v in row.items()}
            for k, v in prow.items():
                new[k] = new.get(k, 0) - a * v
            row = {k: v for k, v in new.items() if v}
            g = 0
            for v in row.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                row = {k: v // g for k, v in row.items()}
    return rank
