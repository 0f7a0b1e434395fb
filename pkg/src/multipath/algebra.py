"""Finite-dimensional unital algebras and bimodules given by structure constants.

Structure constants are stored once as exact rationals and mapped into the
working field on demand (``table(field)``), so the same algebra can be used
over Q and over any GF(p) whose characteristic does not divide a denominator.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import ValidationError
from .fields import QQ, Field

Sparse = tuple[tuple[int, Fraction], ...]


def _sparse(entries: dict[int, Fraction]) -> Sparse:
    return tuple((k, v) for k, v in sorted(entries.items()) if v != 0)


def _scalar(x) -> Fraction:
    if isinstance(x, (list, tuple)):
        num, den = x
        return Fraction(int(num), int(den))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise ValidationError("floating point structure constants are not accepted")
    return Fraction(x)


def _combine(out: dict[int, Fraction], terms: Sparse, scale: Fraction) -> None:
    for k, v in terms:
        out[k] = out.get(k, 0) + scale * v


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    dim: int
    mult: tuple[tuple[Sparse, ...], ...]  # mult[i][j] = e_i e_j
    unit: tuple[Fraction, ...]
    name: str = "A"
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_constants(cls, dim: int, constants, unit: Sequence, name: str = "A") -> "FiniteAlgebra":
        """``constants`` is an iterable of ``(i, j, k, coeff)``."""
        if dim < 1:
            raise ValidationError("algebra dimension must be positive")
        acc = [[{} for _ in range(dim)] for _ in range(dim)]
        for i, j, k, c in constants:
            if not all(0 <= x < dim for x in (i, j, k)):
                raise ValidationError(f"structure constant index ({i},{j},{k}) out of range")
            acc[i][j][k] = acc[i][j].get(k, 0) + _scalar(c)
        if len(unit) != dim:
            raise ValidationError(f"unit has {len(unit)} coordinates, expected {dim}")
        mult = tuple(tuple(_sparse(acc[i][j]) for j in range(dim)) for i in range(dim))
        return cls(dim, mult, tuple(_scalar(u) for u in unit), name)

    def multiply(self, u: Sequence, v: Sequence) -> list[Fraction]:
        out: dict[int, Fraction] = {}
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            for j, vj in enumerate(v):
                if vj:
                    _combine(out, self.mult[i][j], Fraction(ui) * vj)
        return [out.get(k, Fraction(0)) for k in range(self.dim)]

    def basis(self, i: int) -> list[Fraction]:
        return [Fraction(int(k == i)) for k in range(self.dim)]

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i))

    def table(self, fld: Field):
        """mult mapped into ``fld``: ``t[i][j]`` is a tuple of ``(k, value)``."""
        t = self._tables.get(fld)
        if t is None:
            t = tuple(
                tuple(tuple((k, fld.coerce(v)) for k, v in self.mult[i][j] if fld.coerce(v) != 0)
                      for j in range(self.dim))
                for i in range(self.dim)
            )
            self._tables[fld] = t
        return t

    def to_json(self) -> dict:
        mult = [[i, j, k, v.numerator, v.denominator]
                for i in range(self.dim) for j in range(self.dim) for k, v in self.mult[i][j]]
        return {"dim": self.dim, "mult": mult, "unit": [_json_scalar(u) for u in self.unit]}


def _json_scalar(x: Fraction):
    return x.numerator if x.denominator == 1 else [x.numerator, x.denominator]


@dataclass(frozen=True, eq=False)
class Bimodule:
    algebra: FiniteAlgebra
    dim: int
    left: tuple[tuple[Sparse, ...], ...]   # left[i][m] = e_i . m_m
    right: tuple[tuple[Sparse, ...], ...]  # right[m][i] = m_m . e_i
    name: str = "M"
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_constants(cls, algebra: FiniteAlgebra, dim: int, left, right, name: str = "M") -> "Bimodule":
        a = algebra.dim
        lacc = [[{} for _ in range(dim)] for _ in range(a)]
        racc = [[{} for _ in range(a)] for _ in range(dim)]
        for i, m, m2, c in left:
            if not (0 <= i < a and 0 <= m < dim and 0 <= m2 < dim):
                raise ValidationError(f"left action index ({i},{m},{m2}) out of range")
            lacc[i][m][m2] = lacc[i][m].get(m2, 0) + _scalar(c)
        for m, i, m2, c in right:
            if not (0 <= i < a and 0 <= m < dim and 0 <= m2 < dim):
                raise ValidationError(f"right action index ({m},{i},{m2}) out of range")
            racc[m][i][m2] = racc[m][i].get(m2, 0) + _scalar(c)
        left_t = tuple(tuple(_sparse(lacc[i][m]) for m in range(dim)) for i in range(a))
        right_t = tuple(tuple(_sparse(racc[m][i]) for i in range(a)) for m in range(dim))
        return cls(algebra, dim, left_t, right_t, name)

    def act_left(self, a: Sequence, m: Sequence) -> list[Fraction]:
        out: dict[int, Fraction] = {}
        for i, ai in enumerate(a):
            for k, mk in enumerate(m):
                if ai and mk:
                    _combine(out, self.left[i][k], Fraction(ai) * mk)
        return [out.get(k, Fraction(0)) for k in range(self.dim)]

    def act_right(self, m: Sequence, a: Sequence) -> list[Fraction]:
        out: dict[int, Fraction] = {}
        for k, mk in enumerate(m):
            for i, ai in enumerate(a):
                if ai and mk:
                    _combine(out, self.right[k][i], Fraction(ai) * mk)
        return [out.get(k, Fraction(0)) for k in range(self.dim)]

    def is_symmetric(self) -> bool:
        return all(self.left[i][m] == self.right[m][i]
                   for i in range(self.algebra.dim) for m in range(self.dim))

    def tables(self, fld: Field):
        t = self._tables.get(fld)
        if t is None:
            def conv(s):
                return tuple((k, fld.coerce(v)) for k, v in s if fld.coerce(v) != 0)
            t = (tuple(tuple(conv(s) for s in row) for row in self.left),
                 tuple(tuple(conv(s) for s in row) for row in self.right))
            self._tables[fld] = t
        return t

    def to_json(self) -> dict:
        left = [[i, m, k, v.numerator, v.denominator]
                for i in range(self.algebra.dim) for m in range(self.dim) for k, v in self.left[i][m]]
        right = [[m, i, k, v.numerator, v.denominator]
                 for m in range(self.dim) for i in range(self.algebra.dim) for k, v in self.right[m][i]]
        return {"dim": self.dim, "left": left, "right": right}


def regular_bimodule(a: FiniteAlgebra) -> Bimodule:
    """A as a bimodule over itself."""
    return Bimodule(a, a.dim, a.mult, a.mult, name=a.name)


# --- standard algebras -----------------------------------------------------

def ground_field() -> tuple[FiniteAlgebra, Bimodule]:
    a = FiniteAlgebra.from_constants(1, [(0, 0, 0, 1)], [1], name="K")
    return a, regular_bimodule(a)


def truncated_poly(n: int) -> FiniteAlgebra:
    """K[x]/(x^n) on the basis 1, x, ..., x^(n-1)."""
    if n < 1:
        raise ValidationError("truncated_poly needs n >= 1")
    constants = [(i, j, i + j, 1) for i in range(n) for j in range(n) if i + j < n]
    return FiniteAlgebra.from_constants(n, constants, [1] + [0] * (n - 1), name=f"K[x]/(x^{n})")


def dual_numbers() -> FiniteAlgebra:
    return truncated_poly(2)


def upper_triangular() -> FiniteAlgebra:
    """2x2 upper triangular matrices on E11, E12, E22; not commutative."""
    constants = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)]
    return FiniteAlgebra.from_constants(3, constants, [1, 0, 1], name="T2")


def rebase(a: FiniteAlgebra, perm: Sequence[int], scales: Sequence) -> FiniteAlgebra:
    """Same algebra on the basis f_i = scales[i] * e_perm[i]."""
    n = a.dim
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    s = [Fraction(x) for x in scales]
    constants = []
    for i in range(n):
        for j in range(n):
            for k, c in a.mult[perm[i]][perm[j]]:
                constants.append((i, j, inv[k], s[i] * s[j] * c / s[inv[k]]))
    unit = [a.unit[perm[i]] / s[i] for i in range(n)]
    return FiniteAlgebra.from_constants(n, constants, unit, name=a.name)


# --- axioms ----------------------------------------------------------------

def verify_algebra(a: FiniteAlgebra) -> tuple[bool, list[str]]:
    bad = []
    basis = [a.basis(i) for i in range(a.dim)]
    for i, j, k in product(range(a.dim), repeat=3):
        lhs = a.multiply(a.multiply(basis[i], basis[j]), basis[k])
        rhs = a.multiply(basis[i], a.multiply(basis[j], basis[k]))
        if lhs != rhs:
            bad.append(f"associativity fails on (e{i} e{j}) e{k}")
    for i in range(a.dim):
        if a.multiply(a.unit, basis[i]) != basis[i]:
            bad.append(f"1 * e{i} != e{i}")
        if a.multiply(basis[i], a.unit) != basis[i]:
            bad.append(f"e{i} * 1 != e{i}")
    return not bad, bad


def verify_bimodule(m: Bimodule) -> tuple[bool, list[str]]:
    a = m.algebra
    bad = []
    ab = [a.basis(i) for i in range(a.dim)]
    mb = [[Fraction(int(k == x)) for k in range(m.dim)] for x in range(m.dim)]
    for x in range(m.dim):
        if m.act_left(a.unit, mb[x]) != mb[x]:
            bad.append(f"1 . m{x} != m{x}")
        if m.act_right(mb[x], a.unit) != mb[x]:
            bad.append(f"m{x} . 1 != m{x}")
        for i, j in product(range(a.dim), repeat=2):
            if m.act_left(a.multiply(ab[i], ab[j]), mb[x]) != m.act_left(ab[i], m.act_left(ab[j], mb[x])):
                bad.append(f"(e{i} e{j}) . m{x} != e{i} . (e{j} . m{x})")
            if m.act_right(mb[x], a.multiply(ab[i], ab[j])) != m.act_right(m.act_right(mb[x], ab[i]), ab[j]):
                bad.append(f"m{x} . (e{i} e{j}) != (m{x} . e{i}) . e{j}")
            if m.act_right(m.act_left(ab[i], mb[x]), ab[j]) != m.act_left(ab[i], m.act_right(mb[x], ab[j])):
                bad.append(f"(e{i} . m{x}) . e{j} != e{i} . (m{x} . e{j})")
    return not bad, bad


def require_valid(a: FiniteAlgebra, m: Bimodule | None = None, fld: Field = QQ) -> None:
    ok, bad = verify_algebra(a)
    if not ok:
        raise ValidationError(f"{a.name} is not a unital associative algebra: {bad[0]}")
    if m is not None:
        if m.algebra is not a and m.algebra.mult != a.mult:
            raise ValidationError("bimodule is over a different algebra")
        ok, bad = verify_bimodule(m)
        if not ok:
            raise ValidationError(f"{m.name} is not an {a.name}-bimodule: {bad[0]}")
    # reject fields in which some constant is undefined
    a.table(fld)
    if m is not None:
        m.tables(fld)


# --- JSON ------------------------------------------------------------------

def _entry_coeff(entry: list, width: int):
    if len(entry) == width:
        return entry[width - 1]
    if len(entry) == width + 1:
        return [entry[width - 1], entry[width]]
    raise ValidationError(f"malformed entry {entry!r}")


def algebra_from_json(obj: dict, name: str = "A") -> FiniteAlgebra:
    try:
        dim = int(obj["dim"])
        constants = [(int(e[0]), int(e[1]), int(e[2]), _entry_coeff(e, 4)) for e in obj["mult"]]
        unit = obj["unit"]
        return FiniteAlgebra.from_constants(dim, constants, unit, name=obj.get("name", name))
    except (KeyError, TypeError, IndexError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad algebra descriptor: {exc}") from None


def bimodule_from_json(obj: dict, algebra: FiniteAlgebra, name: str = "M") -> Bimodule:
    try:
        dim = int(obj["dim"])
        left = [(int(e[0]), int(e[1]), int(e[2]), _entry_coeff(e, 4)) for e in obj["left"]]
        right = [(int(e[0]), int(e[1]), int(e[2]), _entry_coeff(e, 4)) for e in obj["right"]]
        return Bimodule.from_constants(algebra, dim, left, right, name=obj.get("name", name))
    except (KeyError, TypeError, IndexError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad bimodule descriptor: {exc}") from None


def load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
