"""Concrete base fields of characteristic different from 2.

Three kinds are supported:

* ``QuadClosed``: every element is a square (W = Z/2).  Elements are
  rationals, viewed inside a quadratically closed field.
* ``RealClosed``: exact rational arithmetic; square classes are signs (W = Z).
* ``FiniteField``: F_p[T]/(modulus) for an odd prime p.  Prime-field elements
  are ints in [0, p); extension elements are coefficient tuples of length k.

Field objects carry the arithmetic (``F.add(a, b)``, ``F.mul(a, b)``, ...);
elements are plain immutable Python values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

from . import polys


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class _RationalField:
    """Shared arithmetic for the two rational models."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n):
        return Fraction(n)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def pow(self, a, k):
        return Fraction(a) ** k

    def parse(self, text):
        text = text.strip()
        if text == "u":
            raise ValueError("'u' (a fixed non-square) is only defined for finite fields")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {text!r} as a rational") from exc

    def format(self, a):
        return str(Fraction(a))

    def coerce(self, a):
        return Fraction(a)


@dataclass(frozen=True)
class QuadClosed(_RationalField):
    name: str = "qc"

    def square_class(self, a):
        if a == 0:
            raise ValueError("square class of zero")
        return self.one

    def is_square(self, a):
        self.square_class(a)
        return True

    def square_class_bit(self, a):
        self.square_class(a)
        return 0

    def class_reps(self):
        return [self.one]

    def __str__(self):
        return "qc"


@dataclass(frozen=True)
class RealClosed(_RationalField):
    name: str = "real"

    def square_class(self, a):
        if a == 0:
            raise ValueError("square class of zero")
        return self.one if a > 0 else -self.one

    def is_square(self, a):
        return self.square_class(a) > 0

    def square_class_bit(self, a):
        return int(not self.is_square(a))

    def class_reps(self):
        return [self.one, -self.one]

    def __str__(self):
        return "real"


@dataclass(frozen=True)
class FiniteField:
    """F_q with q = p^k, presented as F_p[T]/(modulus)."""

    p: int
    k: int = 1
    modulus: tuple = field(default=None)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported")
        if self.k < 1:
            raise ValueError("extension degree must be at least 1")
        prime = _prime_field(self.p)
        if self.modulus is None:
            mod = find_irreducible(self.p, self.k) if self.k > 1 else (0, 1)
        else:
            mod = polys.trim(prime, (c % self.p for c in self.modulus))
            if polys.degree(mod) != self.k or mod[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {self.k}")
            if not polys.is_irreducible(prime, mod, self.p):
                raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", tuple(mod))

    # -- element plumbing
    @property
    def q(self):
        return self.p**self.k

    @property
    def characteristic(self):
        return self.p

    @property
    def zero(self):
        return 0 if self.k == 1 else (0,) * self.k

    @property
    def one(self):
        return 1 if self.k == 1 else (1,) + (0,) * (self.k - 1)

    def from_int(self, n):
        n %= self.p
        return n if self.k == 1 else (n,) + (0,) * (self.k - 1)

    def coerce(self, a):
        if self.k == 1:
            return int(a) % self.p
        if isinstance(a, int):
            return self.from_int(a)
        a = tuple(int(c) % self.p for c in a)
        if len(a) != self.k:
            raise ValueError(f"expected {self.k} coefficients")
        return a

    def is_zero(self, a):
        return a == self.zero

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        prime = _prime_field(self.p)
        prod = polys.mod(prime, polys.mul(prime, polys.trim(prime, a), polys.trim(prime, b)), self.modulus)
        return tuple(prod) + (0,) * (self.k - len(prod))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """All field elements, in the fixed enumeration order."""
        if self.k == 1:
            return list(range(self.p))
        return [tuple(reversed(c)) for c in product(range(self.p), repeat=self.k)]

    # -- square classes
    def is_square(self, a):
        if self.is_zero(a):
            raise ValueError("square class of zero")
        return self.pow(a, (self.q - 1) // 2) == self.one

    def square_class_bit(self, a):
        return int(not self.is_square(a))

    @cached_property
    def nonsquare(self):
        """The first non-square in enumeration order."""
        for a in self.elements():
            if not self.is_zero(a) and not self.is_square(a):
                return a
        raise AssertionError("no non-square in a finite field of odd order")

    def square_class(self, a):
        return self.one if self.is_square(a) else self.nonsquare

    def class_reps(self):
        return [self.one, self.nonsquare]

    # -- text
    def parse(self, text):
        text = text.strip().replace(" ", "")
        if text == "u":
            return self.nonsquare
        if self.k == 1:
            try:
                return int(text) % self.p
            except ValueError as exc:
                raise ValueError(f"cannot parse {text!r} as an element of F_{self.p}") from exc
        return self._parse_poly(text)

    def _parse_poly(self, text):
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        if not text:
            raise ValueError("empty element")
        coeffs = [0] * self.k
        if re.sub(r"([+-]?)([^+-]+)", "", text):
            raise ValueError(f"cannot parse {text!r}")
        for sign, term in re.findall(r"([+-]?)([^+-]+)", text):
            match = re.fullmatch(r"(\d+)(?:\*T(?:\^(\d+))?)?|T(?:\^(\d+))?", term)
            if match is None:
                raise ValueError(f"cannot parse term {term!r} in {text!r}")
            c, e1, e2 = match.groups()
            if c is None:
                c, power = 1, int(e2) if e2 is not None else 1
            elif "T" in term:
                c, power = int(c), int(e1) if e1 is not None else 1
            else:
                c, power = int(c), 0
            if power >= self.k:
                raise ValueError(f"power T^{power} must be below {self.k}")
            coeffs[power] += -c if sign == "-" else c
        return self.coerce(coeffs)

    def format(self, a):
        if self.k == 1:
            return str(a)
        parts = []
        for i in range(self.k - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return "+".join(parts) or "0"

    def __str__(self):
        return f"f:{self.p}" if self.k == 1 else f"f:{self.p}^{self.k}"


_PRIME_FIELDS = {}


def _prime_field(p):
    F = _PRIME_FIELDS.get(p)
    if F is None:
        F = _PrimeFieldArith(p)
        _PRIME_FIELDS[p] = F
    return F


class _PrimeFieldArith:
    """Bare F_p arithmetic used to present extension moduli."""

    def __init__(self, p):
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def elements(self):
        return list(range(self.p))


def find_irreducible(F, d):
    """First monic irreducible polynomial of degree d over a finite field.

    ``F`` is a prime p or a ``FiniteField``.  Candidates are ordered by their
    coefficient vectors read from X^(d-1) down to the constant term, using the
    field's element enumeration order, so the output is reproducible.
    """
    if isinstance(F, int):
        if not is_prime(F) or F == 2:
            raise ValueError(f"{F} is not an odd prime")
        F = _prime_field(F)
        q = F.p
    else:
        q = F.q
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d == 1:
        return (F.zero, F.one)
    elems = F.elements()
    for high_first in product(elems, repeat=d):
        f = tuple(reversed(high_first)) + (F.one,)
        if polys.is_irreducible(F, f, q):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {d}")


_SPEC = re.compile(r"^f:(\d+)(?:\^(\d+))?$")


def field_make(spec):
    """Build a field from ``"qc"``, ``"real"``, ``"f:p"`` or ``"f:p^k"``."""
    spec = spec.strip().lower()
    if spec == "qc":
        return QuadClosed()
    if spec in ("real", "r"):
        return RealClosed()
    match = _SPEC.match(spec)
    if match is None:
        raise ValueError(f"unknown field spec {spec!r}; use qc, real, f:p or f:p^k")
    p = int(match.group(1))
    k = int(match.group(2) or 1)
    return FiniteField(p, k)


def square_class(a, F):
    return F.square_class(a)


def is_finite(F):
    return isinstance(F, FiniteField)
