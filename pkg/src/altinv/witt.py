"""Diagonal quadratic forms, Witt and Grothendieck-Witt classes, exterior powers.

Canonical Witt data per field:

* quadratically closed: rank mod 2;
* real closed: the signature;
* finite: the anisotropic kernel, determined by the rank parity and the
  signed discriminant (-1)^(n(n-1)/2) * det.  Its entries are canonical
  square-class representatives, so equal classes compare equal.

A Grothendieck-Witt class is stored as the pair (Witt class, rank), which is
legitimate because GW is the fibre product of W and Z over Z/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .fields import FiniteField, QuadClosed, RealClosed

INFINITY = math.inf


@dataclass(frozen=True)
class DiagonalForm:
    field: object
    entries: tuple

    def __post_init__(self):
        F = self.field
        entries = tuple(F.coerce(a) for a in self.entries)
        for a in entries:
            if F.is_zero(a):
                raise ValueError("diagonal entries must be non-zero")
        object.__setattr__(self, "entries", entries)

    @property
    def rank(self):
        return len(self.entries)

    def __add__(self, other):
        _same_field(self.field, other.field)
        return DiagonalForm(self.field, self.entries + other.entries)

    def __mul__(self, other):
        _same_field(self.field, other.field)
        F = self.field
        return DiagonalForm(F, tuple(F.mul(a, b) for a in self.entries for b in other.entries))

    def scaled(self, c):
        F = self.field
        return DiagonalForm(F, tuple(F.mul(F.coerce(c), a) for a in self.entries))

    def __neg__(self):
        return self.scaled(self.field.neg(self.field.one))

    def determinant(self):
        F = self.field
        det = F.one
        for a in self.entries:
            det = F.mul(det, a)
        return det

    def disc_class(self):
        """Square class of the plain product of the entries."""
        return self.field.square_class(self.determinant())

    def has_trivial_disc(self):
        return self.field.is_square(self.determinant())

    def class_entries(self):
        """Entries replaced by canonical square-class representatives."""
        return tuple(self.field.square_class(a) for a in self.entries)

    def __str__(self):
        return "<" + ",".join(self.field.format(a) for a in self.entries) + ">"


def _same_field(F, G):
    if F != G:
        raise ValueError(f"field mismatch: {F} vs {G}")


def parse_form(text, F):
    """Parse ``"<1,-1,u>"``; ``u`` is the canonical non-square of a finite field."""
    text = text.strip()
    if not (text.startswith("<") and text.endswith(">")):
        raise ValueError(f"form literal must look like <a,b,...>, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return DiagonalForm(F, ())
    return DiagonalForm(F, tuple(F.parse(part) for part in body.split(",")))


def ones(F, n):
    return DiagonalForm(F, (F.one,) * n)


def pfister2(F, x, y):
    """The 2-fold Pfister form <1, x, y, xy>."""
    x, y = F.coerce(x), F.coerce(y)
    if F.is_zero(x) or F.is_zero(y):
        raise ValueError("Pfister parameters must be non-zero")
    return DiagonalForm(F, (F.one, x, y, F.mul(x, y)))


@dataclass(frozen=True)
class WittClass:
    field: object
    datum: object

    @property
    def rank_parity(self):
        F = self.field
        if isinstance(F, QuadClosed):
            return self.datum
        if isinstance(F, RealClosed):
            return self.datum % 2
        return len(self.datum) % 2

    def is_zero(self):
        return not self.datum

    def representative(self):
        """An anisotropic diagonal form in this class."""
        F = self.field
        if isinstance(F, QuadClosed):
            return ones(F, self.datum)
        if isinstance(F, RealClosed):
            sign = 1 if self.datum >= 0 else -1
            return DiagonalForm(F, (F.from_int(sign),) * abs(self.datum))
        return DiagonalForm(F, self.datum)

    def __add__(self, other):
        _same_field(self.field, other.field)
        F = self.field
        if isinstance(F, RealClosed):
            return WittClass(F, self.datum + other.datum)
        if isinstance(F, QuadClosed):
            return WittClass(F, self.datum ^ other.datum)
        return witt_class(self.representative() + other.representative())

    def __mul__(self, other):
        _same_field(self.field, other.field)
        F = self.field
        if isinstance(F, RealClosed):
            return WittClass(F, self.datum * other.datum)
        if isinstance(F, QuadClosed):
            return WittClass(F, self.datum & other.datum)
        return witt_class(self.representative() * other.representative())

    def __neg__(self):
        F = self.field
        if isinstance(F, RealClosed):
            return WittClass(F, -self.datum)
        if isinstance(F, QuadClosed):
            return self
        return witt_class(-self.representative())

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        F = self.field
        if isinstance(F, RealClosed):
            return f"sig={self.datum}"
        if isinstance(F, QuadClosed):
            return f"rank%2={self.datum}"
        return str(self.representative()) if self.datum else "0"


def witt_class(q):
    F = q.field
    if isinstance(F, QuadClosed):
        return WittClass(F, q.rank % 2)
    if isinstance(F, RealClosed):
        return WittClass(F, sum(1 if a > 0 else -1 for a in q.entries))
    if not isinstance(F, FiniteField):
        raise TypeError(f"unsupported field {F!r}")
    n = q.rank
    signed = q.determinant()
    if (n * (n - 1) // 2) % 2:
        signed = F.neg(signed)
    if n % 2:
        return WittClass(F, (F.square_class(signed),))
    if F.is_square(signed):
        return WittClass(F, ())
    return WittClass(F, (F.one, F.square_class(F.neg(signed))))


@dataclass(frozen=True)
class GWClass:
    witt: WittClass
    rank: int

    def __post_init__(self):
        if (self.rank - self.witt.rank_parity) % 2:
            raise ValueError("rank and Witt class disagree mod 2")

    @property
    def field(self):
        return self.witt.field

    @classmethod
    def from_int(cls, F, n):
        if isinstance(F, RealClosed):
            return cls(WittClass(F, n), n)
        if isinstance(F, QuadClosed):
            return cls(WittClass(F, n % 2), n)
        # <1,1,1,1> is hyperbolic over a finite field
        w = witt_class(ones(F, abs(n) % 4))
        return cls(w if n >= 0 else -w, n)

    def _coerce(self, other):
        if isinstance(other, int):
            return GWClass.from_int(self.field, other)
        if isinstance(other, GWClass):
            _same_field(self.field, other.field)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GWClass(self.witt + other.witt, self.rank + other.rank)

    __radd__ = __add__

    def __neg__(self):
        return GWClass(-self.witt, -self.rank)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GWClass(self.witt * other.witt, self.rank * other.rank)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = GWClass.from_int(self.field, other)
        if not isinstance(other, GWClass):
            return NotImplemented
        return self.witt == other.witt and self.rank == other.rank

    def __hash__(self):
        return hash((self.witt, self.rank))

    def is_zero(self):
        return self.rank == 0 and self.witt.is_zero()

    def __str__(self):
        return f"[{self.witt}, rank {self.rank}]"


def gw_class(q):
    return GWClass(witt_class(q), q.rank)


def gw_ops(a, b, op):
    """Ring operation ``op`` in {'add', 'mul', 'neg'} on GW classes."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def _gw_of_entries(F, entries):
    return gw_class(DiagonalForm(F, tuple(entries)))


def lambda_power(q, i):
    """GW class of the i-th exterior power: sum over i-subsets S of <prod_S alpha>."""
    F = q.field
    if i < 0:
        raise ValueError("exterior power index must be non-negative")
    if i > q.rank:
        return GWClass.from_int(F, 0)
    reps = q.class_entries()
    products = []
    for subset in combinations(reps, i):
        prod = F.one
        for a in subset:
            prod = F.mul(prod, a)
        products.append(prod)
    return _gw_of_entries(F, products)


class GWPolynomial:
    """Polynomial in t with GW coefficients, lowest degree first."""

    def __init__(self, field, coeffs):
        self.field = field
        coeffs = [c if isinstance(c, GWClass) else GWClass.from_int(field, c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, F, ints):
        return cls(F, [GWClass.from_int(F, n) for n in ints])

    @classmethod
    def one_plus_t_power(cls, F, n):
        return cls.from_ints(F, [comb(n, i) for i in range(n + 1)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coefficient(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return GWClass.from_int(self.field, 0)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return GWPolynomial(self.field, [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __neg__(self):
        return GWPolynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, GWClass)):
            return GWPolynomial(self.field, [c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return GWPolynomial(self.field, [])
        out = [GWClass.from_int(self.field, 0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return GWPolynomial(self.field, out)

    def __eq__(self, other):
        return isinstance(other, GWPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return " + ".join(f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()) or "0"


def lambda_poly(q):
    """lambda_t(q) = sum_i lambda^i(q) t^i."""
    return GWPolynomial(q.field, [lambda_power(q, i) for i in range(q.rank + 1)])


def filtration(w):
    """Largest n with w in I^n (INFINITY for the zero class)."""
    F = w.field
    if w.is_zero():
        return INFINITY
    if isinstance(F, RealClosed):
        s, v = w.datum, 0
        while s % 2 == 0:
            s //= 2
            v += 1
        return v
    if w.rank_parity:
        return 0
    if isinstance(F, QuadClosed):
        return INFINITY
    return 1


def divided_derivative_at_minus_one(f, j):
    """Delta^j f(-1) = sum_{i>=j} C(i, j) a_i (-1)^(i-j)."""
    acc = GWClass.from_int(f.field, 0)
    for i in range(j, len(f.coeffs)):
        acc = acc + f.coeffs[i] * ((-1) ** (i - j) * comb(i, j))
    return acc


def divisible_by_one_plus_t(f, N):
    """1 iff (1+t)^N divides f, via the Taylor expansion of f at t = -1."""
    return int(all(divided_derivative_at_minus_one(f, j).is_zero() for j in range(N)))
