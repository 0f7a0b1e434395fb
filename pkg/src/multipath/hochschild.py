"""Hochschild homology from the bar complex C_n = M (x) A^(x)n.

    b(m, a1, ..., an) = (m a1, a2, ..., an)
                      + sum_{i=1}^{n-1} (-1)^i (m, a1, ..., a_i a_{i+1}, ..., an)
                      + (-1)^n (an m, a1, ..., a_{n-1})
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Bimodule, FiniteAlgebra, regular_bimodule, require_valid
from .complex import build_multipath_complex
from .digraph import polygon
from .errors import InvariantError, ValidationError
from .fields import QQ, Field
from .functor import TensorSpace
from .homology import betti, rank
from .sparse import SparseMatrix

MAX_DEGREE = 6
MAX_ALGEBRA_DIM = 4


@dataclass
class BarComplex:
    field: Field
    dims: list[int]                  # dims[n] = dim C_n for n = 0 .. top
    boundaries: list[SparseMatrix]   # boundaries[n] = b_n : C_n -> C_{n-1}; index 0 unused


def bar_boundary(a: FiniteAlgebra, m: Bimodule, n: int, fld: Field) -> SparseMatrix:
    if n < 1:
        raise ValidationError("b_n is defined for n >= 1")
    mult = a.table(fld)
    left, right = m.tables(fld)
    src = TensorSpace((m.dim,) + (a.dim,) * n)
    dst = TensorSpace((m.dim,) + (a.dim,) * (n - 1))
    red = fld.reduce
    data: list[dict[int, object]] = [{} for _ in range(dst.dim)]

    def put(digits, col, coeff):
        row = data[dst.index(digits)]
        row[col] = red(row.get(col, 0) + coeff)

    for col, x in enumerate(src.basis()):
        mx, rest = x[0], x[1:]
        for k, v in right[mx][rest[0]]:
            put((k,) + rest[1:], col, v)
        for i in range(1, n):
            sgn = -1 if i % 2 else 1
            for k, v in mult[rest[i - 1]][rest[i]]:
                put((mx,) + rest[:i - 1] + (k,) + rest[i + 1:], col, sgn * v)
        sgn = -1 if n % 2 else 1
        for k, v in left[rest[-1]][mx]:
            put((k,) + rest[:-1], col, sgn * v)
    return SparseMatrix(dst.dim, src.dim, fld, data).prune()


def bar_complex(a: FiniteAlgebra, m: Bimodule | None, top: int, fld: Field = QQ) -> BarComplex:
    m = m if m is not None else regular_bimodule(a)
    dims = [m.dim * a.dim ** n for n in range(top + 1)]
    bs = [SparseMatrix.zeros(0, dims[0], fld)] + [bar_boundary(a, m, n, fld) for n in range(1, top + 1)]
    for n in range(1, top):
        if not (bs[n] @ bs[n + 1]).is_zero():
            raise InvariantError(f"b_{n} b_{n + 1} != 0")
    return BarComplex(fld, dims, bs)


def hh_dims(a: FiniteAlgebra, m: Bimodule | None = None, max_degree: int = 4, fld: Field = QQ,
            enforce_caps: bool = True) -> dict[int, int]:
    m = m if m is not None else regular_bimodule(a)
    if enforce_caps and (max_degree > MAX_DEGREE or a.dim > MAX_ALGEBRA_DIM):
        raise ValidationError(
            f"bar complex capped at degree {MAX_DEGREE} and algebra dimension {MAX_ALGEBRA_DIM}"
        )
    require_valid(a, m, fld)
    bc = bar_complex(a, m, max_degree + 1, fld)
    ranks = [0] + [rank(b) for b in bc.boundaries[1:]]
    return {n: bc.dims[n] - ranks[n] - ranks[n + 1] for n in range(max_degree + 1)}


def polygon_comparison(n: int, a: FiniteAlgebra, m: Bimodule | None = None, fld: Field = QQ) -> dict:
    m = m if m is not None else regular_bimodule(a)
    mu = betti(build_multipath_complex(polygon(n), a, m, fld=fld))
    hh = hh_dims(a, m, max(n - 1, 0), fld)
    return {
        "multipath": {i: mu.get(i, 0) for i in range(n + 1)},
        "hochschild": {i: hh[n - i] for i in range(1, n + 1)},
    }


def check_polygon_theorem(n: int, a: FiniteAlgebra, m: Bimodule | None = None, fld: Field = QQ) -> bool:
    if n < 1:
        raise ValidationError("n must be at least 1")
    cmp = polygon_comparison(n, a, m, fld)
    return all(cmp["multipath"][i] == cmp["hochschild"][i] for i in range(1, n + 1))
