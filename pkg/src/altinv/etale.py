"""Etale algebras, their trace forms, and A_n-torsors over finite fields.

An algebra is a product of components.  A component is either k[X]/(f) for a
monic separable polynomial f, or a biquadratic algebra
k[X]/(X^2-x) (x) k[Y]/(Y^2-y) kept in its tensor-product basis so that it
never needs to be factored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import polys
from .fields import FiniteField, QuadClosed, RealClosed, field_make, find_irreducible
from .witt import DiagonalForm


@dataclass(frozen=True)
class Biquadratic:
    x: object
    y: object

    @property
    def dimension(self):
        return 4


def _is_irreducible(F, f):
    d = polys.degree(f)
    if d == 1:
        return True
    if isinstance(F, FiniteField):
        return polys.is_irreducible(F, f, F.q)
    if isinstance(F, RealClosed):
        if d != 2:
            return False
        c, b = f[0], f[1]
        return b * b - 4 * c < 0
    return False


class EtaleAlgebra:
    """Finite product of separable algebras over a concrete field."""

    def __init__(self, field, components, check_irreducible=True):
        F = field
        comps = []
        for comp in components:
            if isinstance(comp, Biquadratic):
                x, y = F.coerce(comp.x), F.coerce(comp.y)
                if F.is_zero(x) or F.is_zero(y):
                    raise ValueError("biquadratic parameters must be non-zero")
                comps.append(Biquadratic(x, y))
                continue
            f = polys.trim(F, (F.coerce(c) for c in comp))
            if polys.degree(f) < 1 or not F.eq(f[-1], F.one):
                raise ValueError(f"factor {format_poly(F, f)} is not monic of positive degree")
            if not polys.is_separable(F, f):
                raise ValueError(f"factor {format_poly(F, f)} is not separable")
            if check_irreducible and not _is_irreducible(F, f):
                raise ValueError(f"factor {format_poly(F, f)} is reducible")
            comps.append(f)
        self.field = F
        self.components = tuple(comps)

    @property
    def dimension(self):
        return sum(c.dimension if isinstance(c, Biquadratic) else polys.degree(c) for c in self.components)

    def __add__(self, other):
        """Product of algebras (direct sum of trace forms)."""
        if other.field != self.field:
            raise ValueError("field mismatch")
        return EtaleAlgebra(self.field, self.components + other.components, check_irreducible=False)

    def __str__(self):
        parts = []
        for c in self.components:
            if isinstance(c, Biquadratic):
                F = self.field
                parts.append(f"biquad({F.format(c.x)},{F.format(c.y)})")
            else:
                parts.append(format_poly(self.field, c))
        return " x ".join(f"[{p}]" for p in parts) or "0"


def power_sums(F, f, count):
    """Power sums p_0..p_{count-1} of the roots of monic f, by Newton's identities."""
    d = polys.degree(f)
    c = [f[d - i] for i in range(d + 1)]  # c[i]: coefficient of X^(d-i), c[0] = 1
    p = [F.from_int(d)]
    for k in range(1, count):
        acc = F.zero
        for i in range(1, min(k, d + 1)):
            acc = F.add(acc, F.mul(c[i], p[k - i]))
        if k <= d:
            acc = F.add(acc, F.mul(F.from_int(k), c[k]))
        p.append(F.neg(acc))
    return p


def _poly_gram(F, f):
    d = polys.degree(f)
    p = power_sums(F, f, 2 * d - 1)
    return [[p[i + j] for j in range(d)] for i in range(d)]


def _kron(F, A, B):
    n, m = len(A), len(B)
    return [[F.mul(A[i // m][j // m], B[i % m][j % m]) for j in range(n * m)] for i in range(n * m)]


def _component_gram(F, comp):
    if isinstance(comp, Biquadratic):
        qx = _poly_gram(F, (F.neg(comp.x), F.zero, F.one))
        qy = _poly_gram(F, (F.neg(comp.y), F.zero, F.one))
        return _kron(F, qx, qy)
    return _poly_gram(F, comp)


def trace_gram(L):
    """Gram matrix of (u, v) -> Tr(uv) in the power bases of the components."""
    F = L.field
    n = L.dimension
    M = [[F.zero] * n for _ in range(n)]
    offset = 0
    for comp in L.components:
        block = _component_gram(F, comp)
        for i, row in enumerate(block):
            for j, a in enumerate(row):
                M[offset + i][offset + j] = a
        offset += len(block)
    return M


def congruence_diagonalize(M, F):
    """Return (D, P) with P^T M P = diag(D), P invertible.

    Raises ValueError if M is degenerate.
    """
    n = len(M)
    A = [list(row) for row in M]
    P = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if not F.eq(A[i][j], A[j][i]):
                raise ValueError("matrix is not symmetric")

    def add_multiple(dst, src, c):
        # row/column operation: v_dst += c * v_src
        for r in range(n):
            A[dst][r] = F.add(A[dst][r], F.mul(c, A[src][r]))
        for r in range(n):
            A[r][dst] = F.add(A[r][dst], F.mul(c, A[r][src]))
        for r in range(n):
            P[r][dst] = F.add(P[r][dst], F.mul(c, P[r][src]))

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        pivot = next((i for i in range(k, n) if not F.is_zero(A[i][i])), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if not F.is_zero(A[i][j])),
                None,
            )
            if pair is None:
                raise ValueError("degenerate symmetric matrix")
            i, j = pair
            add_multiple(i, j, F.one)
            pivot = i
        swap(k, pivot)
        inv = F.inv(A[k][k])
        for r in range(k + 1, n):
            if not F.is_zero(A[r][k]):
                add_multiple(r, k, F.neg(F.mul(A[r][k], inv)))
    return [A[i][i] for i in range(n)], P


def diagonalize_symmetric(M, F):
    """Diagonal form congruent to the non-degenerate symmetric matrix M."""
    diag, _ = congruence_diagonalize(M, F)
    return DiagonalForm(F, tuple(diag))


def trace_form(L):
    return diagonalize_symmetric(trace_gram(L), L.field)


def determinant(M, F):
    n = len(M)
    A = [list(r) for r in M]
    det = F.one
    for k in range(n):
        pivot = next((i for i in range(k, n) if not F.is_zero(A[i][k])), None)
        if pivot is None:
            return F.zero
        if pivot != k:
            A[k], A[pivot] = A[pivot], A[k]
            det = F.neg(det)
        det = F.mul(det, A[k][k])
        inv = F.inv(A[k][k])
        for r in range(k + 1, n):
            c = F.mul(A[r][k], inv)
            if not F.is_zero(c):
                A[r] = [F.sub(a, F.mul(c, b)) for a, b in zip(A[r], A[k])]
    return det


def poly_discriminant(F, f):
    """Discriminant of monic f as (-1)^(d(d-1)/2) Res(f, f'), via the Sylvester matrix."""
    g = polys.derivative(F, f)
    d, e = polys.degree(f), polys.degree(g)
    size = d + e
    rows = []
    for i in range(e):
        row = [F.zero] * size
        for j, a in enumerate(reversed(f)):
            row[i + j] = a
        rows.append(row)
    for i in range(d):
        row = [F.zero] * size
        for j, a in enumerate(reversed(g)):
            row[i + j] = a
        rows.append(row)
    res = determinant(rows, F)
    if (d * (d - 1) // 2) % 2:
        res = F.neg(res)
    return res


def component_discriminant(F, comp):
    if isinstance(comp, Biquadratic):
        return determinant(_component_gram(F, comp), F)
    return poly_discriminant(F, comp)


def type_T_algebra(F, c, pairs):
    """c copies of k times one biquadratic algebra per (x, y) pair."""
    comps = [(F.zero, F.one)] * c + [Biquadratic(x, y) for x, y in pairs]
    return EtaleAlgebra(F, comps)


def quadratic_algebra(F, x):
    """k[X]/(X^2 - x); split when x is a square."""
    return EtaleAlgebra(F, [(F.neg(F.coerce(x)), F.zero, F.one)], check_irreducible=False)


def split_algebra(F, n):
    return EtaleAlgebra(F, [(F.zero, F.one)] * n)


def real_algebra(a, b, F=None):
    """R^a x C^b, with C = R[X]/(X^2+1)."""
    F = F or RealClosed()
    return EtaleAlgebra(F, [(F.zero, F.one)] * a + [(F.one, F.zero, F.one)] * b)


# -- cycle types and torsors


def partitions(n, largest=None):
    """Partitions of n as weakly decreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def is_even_type(ct):
    return (sum(ct) - len(ct)) % 2 == 0


def split_count(ct):
    """2 if the S_n-class of this even type splits in A_n, else 1."""
    if sum(ct) < 2:
        return 1  # S_1 = A_1
    odd_distinct = all(d % 2 for d in ct) and len(set(ct)) == len(ct)
    return 2 if odd_distinct else 1


def enumerate_An_torsors(p, n):
    """Even cycle types of S_n with their A_n split counts.

    Over a finite field an A_n-torsor is an A_n-conjugacy class (the image of
    Frobenius), so the torsors are indexed by these pairs.
    """
    if isinstance(p, FiniteField):
        p = p.p
    if not isinstance(p, int) or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    if not 1 <= n <= 14:
        raise ValueError("n must lie in 1..14")
    return [(ct, split_count(ct)) for ct in partitions(n) if is_even_type(ct)]


def algebra_from_cycle_type(F, ct):
    """Product of F_{q^d} over the parts d of the cycle type."""
    if isinstance(F, int):
        F = FiniteField(F)
    return EtaleAlgebra(F, [find_irreducible(F if F.k > 1 else F.p, d) for d in ct])


# -- text


def format_poly(F, f, var="X"):
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if F.is_zero(c):
            continue
        text = F.format(c)
        if isinstance(F, FiniteField) and F.k > 1 and not re.fullmatch(r"\d+", text):
            text = f"({text})"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            parts.append(text)
        elif F.eq(c, F.one):
            parts.append(mono)
        else:
            parts.append(f"{text}*{mono}")
    out = "+".join(parts) or "0"
    return out.replace("+-", "-")


def _split_top_level(text):
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            terms.append(text[start:i])
            start = i
    terms.append(text[start:])
    return [t for t in terms if t]


def parse_poly(text, F, var="X"):
    """Parse ``"X^2-3"`` with coefficients in the field's element syntax."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    coeffs = {}
    for term in _split_top_level(text):
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        match = re.fullmatch(rf"(.*?)\*?{var}(?:\^(\d+))?", body)
        if match:
            coef_text, exp = match.groups()
            power = int(exp) if exp is not None else 1
        else:
            coef_text, power = body, 0
        if coef_text.startswith("(") and coef_text.endswith(")"):
            coef_text = coef_text[1:-1]
        coef = F.parse(coef_text) if coef_text else F.one
        if sign < 0:
            coef = F.neg(coef)
        coeffs[power] = F.add(coeffs.get(power, F.zero), coef)
    top = max(coeffs)
    return polys.trim(F, [coeffs.get(i, F.zero) for i in range(top + 1)])


def parse_field(spec):
    return field_make(spec)


def describe_field(F):
    if isinstance(F, QuadClosed):
        return "qc"
    return str(F)
