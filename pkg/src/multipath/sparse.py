"""Row-major sparse matrices over an exact field."""
from __future__ import annotations

from typing import Iterable, Iterator

from .errors import ValidationError
from .fields import Field


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "field", "data")

    def __init__(self, nrows: int, ncols: int, fld: Field, data: list[dict[int, object]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = fld
        self.data = data if data is not None else [{} for _ in range(nrows)]

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, fld: Field, entries: Iterable[tuple[int, int, object]]):
        m = cls(nrows, ncols, fld)
        for r, c, v in entries:
            m.add(r, c, v)
        m.prune()
        return m

    @classmethod
    def identity(cls, n: int, fld: Field) -> "SparseMatrix":
        return cls(n, n, fld, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int, fld: Field) -> "SparseMatrix":
        return cls(nrows, ncols, fld)

    def add(self, r: int, c: int, v) -> None:
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise ValidationError(f"entry ({r},{c}) outside {self.nrows}x{self.ncols}")
        row = self.data[r]
        row[c] = self.field.reduce(row.get(c, 0) + v)

    def prune(self) -> "SparseMatrix":
        for row in self.data:
            for c in [c for c, v in row.items() if v == 0]:
                del row[c]
        return self

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.data)

    def entries(self) -> list[tuple[int, int, object]]:
        """Nonzero triplets sorted by (col, row)."""
        out = [(r, c, v) for r, row in enumerate(self.data) for c, v in row.items() if v != 0]
        out.sort(key=lambda t: (t[1], t[0]))
        return out

    def __iter__(self) -> Iterator[tuple[int, int, object]]:
        return iter(self.entries())

    def get(self, r: int, c: int):
        return self.data[r].get(c, 0)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.data for v in row.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries() == other.entries()

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValidationError(f"shape mismatch {self.shape} @ {other.shape}")
        red = self.field.reduce
        out = []
        for row in self.data:
            acc: dict[int, object] = {}
            for j, a in row.items():
                for l, b in other.data[j].items():
                    acc[l] = acc.get(l, 0) + a * b
            out.append({l: red(v) for l, v in acc.items() if red(v) != 0})
        return SparseMatrix(self.nrows, other.ncols, self.field, out)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValidationError(f"shape mismatch {self.shape} - {other.shape}")
        red = self.field.reduce
        out = []
        for ra, rb in zip(self.data, other.data):
            row = dict(ra)
            for c, v in rb.items():
                row[c] = red(row.get(c, 0) - v)
            out.append({c: v for c, v in row.items() if v != 0})
        return SparseMatrix(self.nrows, self.ncols, self.field, out)

    def scaled(self, s) -> "SparseMatrix":
        red = self.field.reduce
        return SparseMatrix(self.nrows, self.ncols, self.field,
                            [{c: red(v * s) for c, v in row.items() if red(v * s) != 0} for row in self.data])

    def transpose(self) -> "SparseMatrix":
        out: list[dict[int, object]] = [{} for _ in range(self.ncols)]
        for r, row in enumerate(self.data):
            for c, v in row.items():
                out[c][r] = v
        return SparseMatrix(self.ncols, self.nrows, self.field, out)

    def to_dense(self) -> list[list]:
        dense = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in enumerate(self.data):
            for c, v in row.items():
                dense[r][c] = v
        return dense

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols} over {self.field}, nnz={self.nnz})"
