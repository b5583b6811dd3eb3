"""Graded F2-algebra M(g) = F2[e, x1..xg] / (xi^2 = e*xi).

Every degree-1 class z of a field satisfies z^2 = e*z, and the algebra is
generated in degree 1, so M(g) is a faithful desk model for computations with
g independent square classes.  A monomial e^a * x_S is stored as the pair
``(a, mask)`` where ``mask`` is the bitmask of S; coefficients live in F2, so an
element is just the set of its monomials.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .dyadic import odd_trinomial_indices, overlap_value


def _popcount(x):
    return bin(x).count("1")


def _mono_mul(m1, m2):
    a, s = m1
    b, t = m2
    return (a + b + _popcount(s & t), s | t)


def _mono_degree(mono):
    return mono[0] + _popcount(mono[1])


class MilnorElement:
    """An element of M(g), immutable."""

    __slots__ = ("g", "terms")

    def __init__(self, g, terms=()):
        acc = set()
        for mono in terms:
            acc ^= {mono}
        for a, mask in acc:
            if a < 0 or mask >> g:
                raise ValueError(f"monomial {(a, mask)} not in M({g})")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "terms", frozenset(acc))

    def __setattr__(self, name, value):
        raise AttributeError("MilnorElement is immutable")

    @classmethod
    def _raw(cls, g, terms):
        obj = object.__new__(cls)
        object.__setattr__(obj, "g", g)
        object.__setattr__(obj, "terms", frozenset(terms))
        return obj

    def _coerce(self, other):
        if isinstance(other, MilnorElement):
            if other.g != self.g:
                raise ValueError(f"generator counts differ: {self.g} vs {other.g}")
            return other
        if isinstance(other, int):
            return MilnorElement._raw(self.g, {(0, 0)} if other % 2 else ())
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MilnorElement._raw(self.g, self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = set()
        for m1 in self.terms:
            for m2 in other.terms:
                acc ^= {_mono_mul(m1, m2)}
        return MilnorElement._raw(self.g, acc)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = MilnorElement._raw(self.g, {(0, 0)})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, MilnorElement):
            return NotImplemented
        return self.g == other.g and self.terms == other.terms

    def __hash__(self):
        return hash((self.g, self.terms))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        return sorted({_mono_degree(m) for m in self.terms})

    def max_degree(self):
        return max((_mono_degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self, d=None):
        """True if all monomials share one degree (and it equals ``d`` if given).

        The zero element counts as homogeneous of every degree.
        """
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs[0] == d)

    def degree(self):
        """Degree of a non-zero homogeneous element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"{self} is not a non-zero homogeneous element")
        return degs[0]

    def component(self, d):
        return MilnorElement._raw(self.g, (m for m in self.terms if _mono_degree(m) == d))

    def constant_term(self):
        return int((0, 0) in self.terms)

    def _sort_key(self, mono):
        a, mask = mono
        return (_mono_degree(mono), -a, [i for i in range(self.g) if mask >> i & 1])

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, mask in sorted(self.terms, key=self._sort_key):
            factors = []
            if a == 1:
                factors.append("e")
            elif a > 1:
                factors.append(f"e^{a}")
            factors += [f"x{i + 1}" for i in range(self.g) if mask >> i & 1]
            parts.append("*".join(factors) or "1")
        return " + ".join(parts)

    def __repr__(self):
        return f"MilnorElement({self.g}, {str(self)!r})"


class MilnorAlgebra:
    """Convenience constructors for the elements of M(g)."""

    def __init__(self, g):
        if g < 0:
            raise ValueError("generator count must be non-negative")
        self.g = g

    def __repr__(self):
        return f"MilnorAlgebra({self.g})"

    def __eq__(self, other):
        return isinstance(other, MilnorAlgebra) and other.g == self.g

    def __hash__(self):
        return hash(("M", self.g))

    @property
    def zero(self):
        return MilnorElement._raw(self.g, ())

    @property
    def one(self):
        return MilnorElement._raw(self.g, {(0, 0)})

    @property
    def e(self):
        return MilnorElement._raw(self.g, {(1, 0)})

    def x(self, i):
        """The i-th generator, 1-based."""
        if not 1 <= i <= self.g:
            raise ValueError(f"generator x{i} not in M({self.g})")
        return MilnorElement._raw(self.g, {(0, 1 << (i - 1))})

    @property
    def gens(self):
        return [self.x(i) for i in range(1, self.g + 1)]

    def monomial(self, a, subset=()):
        mask = 0
        for i in subset:
            mask |= 1 << (i - 1)
        return MilnorElement(self.g, [(a, mask)])

    def basis(self, d):
        """Monomials e^a x_S of degree d, in printing order."""
        monos = []
        for size in range(min(d, self.g) + 1):
            for subset in combinations(range(self.g), size):
                mask = sum(1 << i for i in subset)
                monos.append((d - size, mask))
        return monos

    def parse(self, text):
        return parse_element(text, self.g)


_FACTOR = re.compile(r"^(?:(e)(?:\^(\d+))?|x(\d+)(?:\^(\d+))?|(\d+))$")


def parse_element(text, g):
    """Parse ``"e^2*x1*x3 + x2 + 1"`` into an element of M(g).

    Squared generators are rejected; write ``e*x1`` instead of ``x1^2``.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty element")
    terms = []
    for raw in text.split("+"):
        raw = raw.strip().replace(" ", "")
        if not raw:
            raise ValueError(f"malformed element {text!r}")
        a, mask, coeff = 0, 0, 1
        for factor in raw.split("*"):
            match = _FACTOR.match(factor)
            if match is None:
                raise ValueError(f"cannot parse factor {factor!r}")
            e_sym, e_pow, xi, x_pow, const = match.groups()
            if e_sym:
                a += int(e_pow) if e_pow is not None else 1
            elif xi:
                i = int(xi)
                if x_pow is not None and int(x_pow) != 1:
                    raise ValueError(f"squared generator {factor!r} is not allowed")
                if not 1 <= i <= g:
                    raise ValueError(f"generator x{i} not in M({g})")
                if mask >> (i - 1) & 1:
                    raise ValueError(f"squared generator x{i} in term {raw!r}")
                mask |= 1 << (i - 1)
            else:
                coeff *= int(const)
        if coeff % 2:
            terms.append((a, mask))
    return MilnorElement(g, terms)


def multiply(u, v):
    return u * v


def elementary_symmetric(ys, m, g=None):
    """m-th elementary symmetric function of equal-degree homogeneous elements."""
    ys = list(ys)
    if g is None:
        g = ys[0].g if ys else 0
    degs = {d for y in ys for d in y.degrees()}
    if len(degs) > 1 or any(not y.is_homogeneous() for y in ys):
        raise ValueError("elementary_symmetric needs homogeneous entries of one degree")
    one = MilnorAlgebra(g).one
    if m > len(ys):
        return one * 0
    coeffs = [one] + [one * 0] * m
    for y in ys:
        for k in range(m, 0, -1):
            coeffs[k] = coeffs[k] + coeffs[k - 1] * y
    return coeffs[m]


def total_product(ys, g=None):
    """prod (1 + y_i)."""
    ys = list(ys)
    if g is None:
        g = ys[0].g if ys else 0
    result = MilnorAlgebra(g).one
    for y in ys:
        result = result * (1 + y)
    return result


def steenrod_total(z):
    """Total Steenrod square Sq(z) = (1+e)^d z of a homogeneous z of degree d."""
    if not z.is_homogeneous():
        raise ValueError("steenrod_total needs a homogeneous element")
    if not z:
        return z
    d = z.degree()
    return (1 + MilnorAlgebra(z.g).e) ** d * z


def steenrod_square(i, z):
    """Sq^i(z): the degree deg(z)+i part of the total square."""
    if not z:
        return z
    return steenrod_total(z).component(z.degree() + i)


class NotInP(ValueError):
    """The element is not a product of factors (1 + a_j) with deg a_j = 2^j."""


@dataclass(frozen=True)
class PNormalForm:
    """Factors a_0, a_1, ... with a_j homogeneous of degree unit * 2^j."""

    factors: tuple
    g: int
    unit: int = 1

    def expand(self):
        result = MilnorAlgebra(self.g).one
        for a in self.factors:
            result = result * (1 + a)
        return result

    def __str__(self):
        return "".join(f"(1 + {a})" for a in self.factors) or "1"


def p_factorize(x, bound=None, unit=1):
    """Write x = prod_j (1 + a_j) with a_j of degree unit*2^j, or raise NotInP.

    Once x lies in P the factors are forced: a_j is the degree unit*2^j
    component of x.  Membership is therefore decided by reconstructing the
    product from those components.  ``bound`` fixes the number of factors; x
    must then vanish in degrees >= unit * 2^bound.  With ``unit`` = d the
    computation runs in the regraded subring of degrees divisible by d.
    """
    if x.constant_term() != 1:
        raise NotInP(f"{x} does not have constant term 1")
    top = x.max_degree()
    if any(d % unit for d in x.degrees()):
        raise NotInP(f"{x} has components outside degrees divisible by {unit}")
    n = (top // unit).bit_length()
    if bound is not None:
        if top >= unit * (1 << bound):
            raise ValueError(f"{x} has components of degree >= {unit * (1 << bound)}")
        n = bound
    factors = tuple(x.component(unit << j) for j in range(n))
    form = PNormalForm(factors, x.g, unit)
    if form.expand() != x:
        raise NotInP(f"{x} is not in P")
    return form


@dataclass(frozen=True)
class SWClass:
    """Total Stiefel-Whitney class 1 + w_1 + w_2 + ..."""

    element: MilnorElement

    def __post_init__(self):
        if self.element.constant_term() != 1:
            raise ValueError("a total Stiefel-Whitney class has constant term 1")

    @property
    def g(self):
        return self.element.g

    def w(self, i):
        return self.element.component(i)

    def components(self):
        top = max(self.element.max_degree(), 0)
        return [self.w(i) for i in range(top + 1)]

    def __mul__(self, other):
        return SWClass(self.element * other.element)

    def __eq__(self, other):
        return isinstance(other, SWClass) and self.element == other.element

    def __hash__(self):
        return hash(self.element)

    def __str__(self):
        return str(self.element)


def sw_total(alphas, g=None):
    """Total class prod(1 + alpha_i) of a diagonal form with square classes alpha_i."""
    alphas = list(alphas)
    for a in alphas:
        if not (a.is_homogeneous(1) or a.is_homogeneous(0) and not a):
            raise ValueError(f"{a} is not a degree-1 class")
    return SWClass(total_product(alphas, g))


def sw_product_check(m, m2, w):
    """Check w_m w_m' = e^k w_(m|m') with k = m & m', and the parity-filtered trinomial expansion."""
    e = MilnorAlgebra(w.g).e
    lhs = w.w(m) * w.w(m2)
    dyadic_form = e ** overlap_value(m, m2) * w.w(m | m2)
    trinomial_form = w.w(0) * 0
    for i in odd_trinomial_indices(m, m2):
        trinomial_form = trinomial_form + e**i * w.w(m + m2 - i)
    return int(lhs == dyadic_form == trinomial_form)


def w_gal_transform(w, two):
    """w^gal = w * (1 + (2)*w_1).

    Even components are w_i + two*w_(i-1).  Odd components are
    w_i + two*e*w_(i-2); over a field two*e = (2)(-1) = 0, but M(g) does not
    impose that relation.
    """
    return SWClass(w.element * (1 + two * w.w(1)))


def substitute(u, images):
    """Apply the algebra endomorphism fixing e and sending x_i to ``images[i]``.

    ``images`` maps 1-based generator indices to degree-1 elements (or zero);
    generators not mentioned are fixed.
    """
    alg = MilnorAlgebra(u.g)
    table = []
    for i in range(1, u.g + 1):
        img = images.get(i, alg.x(i))
        if img.g != u.g:
            raise ValueError("image lives in a different algebra")
        if img and not img.is_homogeneous(1):
            raise ValueError(f"image of x{i} must have degree 1, got {img}")
        table.append(img)
    result = alg.zero
    for a, mask in u.terms:
        term = alg.e**a
        for i in range(u.g):
            if mask >> i & 1:
                term = term * table[i]
        result = result + term
    return result


DEFAULT_ORDER = 64


class TruncatedSeries:
    """Power series sum a_n t^n with a_n of degree n and a_0 = 1, cut after t^order."""

    def __init__(self, coeffs, order=DEFAULT_ORDER, g=None):
        coeffs = list(coeffs)
        if g is None:
            g = coeffs[0].g
        zero = MilnorAlgebra(g).zero
        coeffs = (coeffs + [zero] * (order + 1))[: order + 1]
        if coeffs[0] != 1:
            raise ValueError("constant coefficient must be 1")
        for n, a in enumerate(coeffs):
            if not a.is_homogeneous(n):
                raise ValueError(f"coefficient of t^{n} is not of degree {n}")
        self.order = order
        self.g = g
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_element(cls, x, order=DEFAULT_ORDER):
        """The series sum x_n t^n built from the graded components of x."""
        return cls([x.component(n) for n in range(order + 1)], order, x.g)

    @classmethod
    def one(cls, g, order=DEFAULT_ORDER):
        return cls([MilnorAlgebra(g).one], order, g)

    def __mul__(self, other):
        order = min(self.order, other.order)
        zero = MilnorAlgebra(self.g).zero
        out = []
        for n in range(order + 1):
            acc = zero
            for k in range(n + 1):
                a, b = self.coeffs[k], other.coeffs[n - k]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return TruncatedSeries(out, order, self.g)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def is_one(self):
        return all(not a for a in self.coeffs[1:])

    def __str__(self):
        parts = ["1"]
        for n, a in enumerate(self.coeffs[1:], 1):
            if a:
                parts.append(f"({a})*t^{n}")
        return " + ".join(parts)


def series_inverse(s):
    """Inverse in the group of series with constant term 1 (signs vanish mod 2)."""
    zero = MilnorAlgebra(s.g).zero
    inv = [s.coeffs[0]]
    for n in range(1, s.order + 1):
        acc = zero
        for k in range(1, n + 1):
            a = s.coeffs[k]
            if a and inv[n - k]:
                acc = acc + a * inv[n - k]
        inv.append(acc)
    return TruncatedSeries(inv, s.order, s.g)


def p_series(factors, order=DEFAULT_ORDER, g=None):
    """prod_j (1 + a_j t^(2^j)) truncated at ``order``."""
    factors = list(factors)
    if g is None:
        g = factors[0].g
    result = TruncatedSeries.one(g, order)
    for j, a in enumerate(factors):
        if (1 << j) > order:
            break
        coeffs = [MilnorAlgebra(g).one] + [MilnorAlgebra(g).zero] * order
        coeffs[1 << j] = a
        result = result * TruncatedSeries(coeffs, order, g)
    return result
