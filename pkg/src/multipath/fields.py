"""Exact coefficient fields: the rationals and prime fields GF(p).

Scalars are plain Python numbers.  Over Q an element is an ``int`` or a
``Fraction`` (integers are kept as ``int`` for speed); over GF(p) it is an
``int`` in ``range(p)``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ValidationError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic witness set for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    characteristic: int = 0
    name: str = ""

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        raise NotImplementedError

    def reduce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.characteristic == other.characteristic

    def __hash__(self) -> int:
        return hash(("field", self.characteristic))


class Rationals(Field):
    characteristic = 0
    name = "Q"

    def coerce(self, x):
        if isinstance(x, int):
            return x
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def reduce(self, x):
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.reduce(Fraction(1) / x)


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValidationError(f"GF({p}): {p} is not prime")
        self.characteristic = p
        self.name = f"GF({p})"

    @property
    def p(self) -> int:
        return self.characteristic

    def coerce(self, x):
        p = self.characteristic
        if isinstance(x, int):
            return x % p
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ValidationError(f"{x} has no image in {self.name}")
        return x.numerator * pow(x.denominator, -1, p) % p

    def reduce(self, x):
        return x % self.characteristic

    def inv(self, x):
        if x % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.characteristic)


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


_GF_RE = re.compile(r"^(?:gf)?[:(]?(\d+)\)?$")


def parse_field(text: str) -> Field:
    """Parse ``q``, ``Q``, ``gf:5``, ``gf(5)``, ``gf5`` or ``5``."""
    t = text.strip().lower()
    if t in ("q", "qq", "rationals"):
        return QQ
    m = _GF_RE.match(t)
    if not m:
        raise ValidationError(f"unknown field {text!r}; use q or gf:P")
    return GF(int(m.group(1)))
