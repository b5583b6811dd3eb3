"""Fixed submodules of invariant modules of an elementary abelian 2-group.

H side: GL_r(F2) acts on M(r) by linear substitution of the degree-1
generators; fixed vectors are found degree by degree with F2 linear algebra
on bitmask vectors.

W side: permutation modules and a symbolic Grothendieck-Witt ring on Pfister
symbols q_1..q_m, with polynomials in t over it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .milnor import MilnorAlgebra, MilnorElement, substitute, sw_total

# -- F2 linear algebra on int bitmasks


def f2_rank(vectors: Sequence[int]) -> int:
    return len(_echelon(vectors))


def _echelon(vectors):
    """Reduced echelon basis, keyed by pivot (highest set bit)."""
    basis: dict = {}
    for v in vectors:
        v = _reduce(v, basis)
        if v:
            p = v.bit_length() - 1
            for q, w in list(basis.items()):
                if w >> p & 1:
                    basis[q] = w ^ v
            basis[p] = v
    return basis


def _reduce(v, basis):
    for p in sorted(basis, reverse=True):
        if v >> p & 1:
            v ^= basis[p]
    return v


def f2_kernel(images: Sequence[int]) -> list:
    """Kernel of the map sending basis vector j to images[j], as bitmasks over j."""
    pivots: dict = {}  # pivot bit -> (image, combination)
    kernel = []
    for j, img in enumerate(images):
        combo = 1 << j
        for p in sorted(pivots, reverse=True):
            if img >> p & 1:
                w, c = pivots[p]
                img ^= w
                combo ^= c
        if img:
            pivots[img.bit_length() - 1] = (img, combo)
        else:
            kernel.append(combo)
    return kernel


def f2_invertible(matrix: Sequence[Sequence[int]]) -> bool:
    rows = [sum((int(b) & 1) << j for j, b in enumerate(row)) for row in matrix]
    return f2_rank(rows) == len(matrix) and all(len(r) == len(matrix) for r in matrix)


# -- H side


@dataclass(frozen=True)
class LinearAction:
    """Matrices over F2; column j of a matrix is the image of x_{j+1}."""

    r: int
    matrices: tuple

    def __post_init__(self):
        mats = tuple(tuple(tuple(int(b) & 1 for b in row) for row in M) for M in self.matrices)
        for M in mats:
            if len(M) != self.r or not f2_invertible(M):
                raise ValueError(f"{M} is not an invertible {self.r}x{self.r} matrix over F2")
        object.__setattr__(self, "matrices", mats)

    def images(self, M):
        alg = MilnorAlgebra(self.r)
        out = {}
        for j in range(self.r):
            img = alg.zero
            for i in range(self.r):
                if M[i][j]:
                    img = img + alg.x(i + 1)
            out[j + 1] = img
        return out

    def act(self, M, u: MilnorElement) -> MilnorElement:
        return substitute(u, self.images(M))

    def is_fixed(self, u: MilnorElement) -> bool:
        return all(self.act(M, u) == u for M in self.matrices)


def trivial_action(r: int) -> LinearAction:
    return LinearAction(r, ())


def a3_action() -> LinearAction:
    """Order-3 substitution x -> y -> x + y -> x on M(2)."""
    return LinearAction(2, (((0, 1), (1, 1)),))


def s3_action() -> LinearAction:
    """GL_2(F2) = S_3: the 3-cycle together with the swap x <-> y."""
    return LinearAction(2, (((0, 1), (1, 1)), ((0, 1), (1, 0))))


def _block_matrix(m, blocks):
    """2m x 2m matrix placing 2x2 block B at (i, j) for each ((i, j), B)."""
    M = [[0] * (2 * m) for _ in range(2 * m)]
    for (bi, bj), B in blocks:
        for a in range(2):
            for b in range(2):
                M[2 * bi + a][2 * bj + b] = B[a][b]
    return M


def n_action(m: int) -> LinearAction:
    """Blockwise 3-cycles and adjacent block swaps on M(2m), generators (x_i, y_i) = (x_{2i-1}, x_{2i})."""
    ident = ((1, 0), (0, 1))
    cyc = ((0, 1), (1, 1))
    mats = []
    for k in range(m):
        mats.append(_block_matrix(m, [((i, i), cyc if i == k else ident) for i in range(m)]))
    for k in range(m - 1):
        blocks = [((i, i), ident) for i in range(m) if i not in (k, k + 1)]
        blocks += [((k, k + 1), ident), ((k + 1, k), ident)]
        mats.append(_block_matrix(m, blocks))
    return LinearAction(2 * m, tuple(mats))


def _degree_basis(g, d):
    # bit order: higher e-power -> higher bit, so e^d is the top pivot
    monos = MilnorAlgebra(g).basis(d)
    return sorted(monos, key=lambda mono: (mono[0], -bin(mono[1]).count("1"), -mono[1]))


def _to_vector(u, index):
    v = 0
    for mono in u.terms:
        v ^= 1 << index[mono]
    return v


def _to_element(g, v, monos):
    return MilnorElement(g, [monos[i] for i in range(len(monos)) if v >> i & 1])


@dataclass
class ModuleBasisReport:
    rank: int
    cutoff: int
    dimensions: list
    generators: list
    fixed_bases: list = field(repr=False, default_factory=list)

    def generator_degrees(self):
        return [g.degree() for g in self.generators]

    def spans_fixed_spaces(self) -> bool:
        """The F2[e]-span of the generators equals the fixed space in every degree."""
        alg = MilnorAlgebra(self.rank)
        for d in range(self.cutoff + 1):
            monos = _degree_basis(self.rank, d)
            index = {m: i for i, m in enumerate(monos)}
            span = [_to_vector(alg.e ** (d - g.degree()) * g, index) for g in self.generators if g.degree() <= d]
            fixed = [_to_vector(u, index) for u in self.fixed_bases[d]]
            if f2_rank(span) != self.dimensions[d] or f2_rank(span + fixed) != self.dimensions[d]:
                return False
        return True

    def to_json(self):
        return {
            "rank": self.rank,
            "cutoff": self.cutoff,
            "dimensions": list(self.dimensions),
            "generators": [str(g) for g in self.generators],
            "generator_degrees": self.generator_degrees(),
        }


def fixed_submodule_H(action: LinearAction, cutoff: int) -> ModuleBasisReport:
    """Fixed vectors of M(r) in degrees <= cutoff and greedy F2[e]-module generators."""
    if not 0 <= cutoff <= 12:
        raise ValueError("cutoff must lie in 0..12")
    r = action.r
    alg = MilnorAlgebra(r)
    dims, gens, bases = [], [], []
    for d in range(cutoff + 1):
        monos = _degree_basis(r, d)
        index = {m: i for i, m in enumerate(monos)}
        width = len(monos)
        images = []
        for mono in monos:
            u = MilnorElement(r, [mono])
            img = 0
            for k, M in enumerate(action.matrices):
                img |= _to_vector(action.act(M, u) + u, index) << (k * width)
            images.append(img)
        kernel = f2_kernel(images)
        dims.append(len(kernel))
        bases.append([_to_element(r, v, monos) for v in kernel])
        # reduce the fixed space modulo e-multiples of earlier generators
        old = _echelon([_to_vector(alg.e ** (d - g.degree()) * g, index) for g in gens])
        fresh = _echelon([_reduce(v, old) for v in kernel])
        for p in sorted(fresh):
            gens.append(_to_element(r, _reduce(fresh[p], old), monos))
    return ModuleBasisReport(r, cutoff, dims, gens, bases)


# -- W side: permutation modules


@dataclass(frozen=True)
class OrbitSumBasis:
    labels: tuple
    orbits: tuple  # tuples of 0-based indices

    def formatted(self):
        return ["+".join(self.labels[i] for i in orb) for orb in self.orbits]


def fixed_permutation_module_W(basis_size: int, generators: Sequence, labels: Sequence[str] | None = None):
    """Orbit sums of a permutation action on a free module, a basis of its fixed module.

    Each generator is a sequence of 1-based images of 1..basis_size (or a
    ``Permutation``).
    """
    parent = list(range(basis_size))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in generators:
        img = [i + 1 for i in g.images] if hasattr(g, "images") else list(g)
        if sorted(img) != list(range(1, basis_size + 1)):
            raise ValueError(f"{img} does not permute 1..{basis_size}")
        for i, j in enumerate(img):
            a, b = find(i), find(j - 1)
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: dict = {}
    for i in range(basis_size):
        orbits.setdefault(find(i), []).append(i)
    labels = tuple(labels) if labels is not None else tuple(f"b{i + 1}" for i in range(basis_size))
    if len(labels) != basis_size:
        raise ValueError("one label per basis vector")
    return OrbitSumBasis(labels, tuple(tuple(o) for _, o in sorted(orbits.items())))


# -- symbolic Grothendieck-Witt ring on Pfister symbols


class SymbolicGW:
    """Z-linear combinations of q_I = prod_{i in I} q_i, with q_i^2 = 4 q_i.

    Each q_i stands for a 2-fold Pfister form, and q (x) q = 4q for those.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=None):
        clean = {}
        for I, c in (coeffs or {}).items():
            I = frozenset(I)
            if any(not 1 <= i <= m for i in I):
                raise ValueError(f"symbol index outside 1..{m}")
            if c:
                clean[I] = clean.get(I, 0) + c
        self.m = m
        self.coeffs = {I: c for I, c in clean.items() if c}

    @classmethod
    def const(cls, m, c):
        return cls(m, {frozenset(): c})

    @classmethod
    def q(cls, m, i):
        return cls(m, {frozenset([i]): 1})

    @classmethod
    def q_level(cls, m, d):
        """q(d) = sum of q_I over |I| = d."""
        return cls(m, {frozenset(I): 1 for I in combinations(range(1, m + 1), d)})

    def _coerce(self, other):
        if isinstance(other, int):
            return SymbolicGW.const(self.m, other)
        if other.m != self.m:
            raise ValueError("symbol count mismatch")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for I, c in other.coeffs.items():
            out[I] = out.get(I, 0) + c
        return SymbolicGW(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicGW(self.m, {I: -c for I, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for I, a in self.coeffs.items():
            for J, b in other.coeffs.items():
                K = I | J
                out[K] = out.get(K, 0) + a * b * 4 ** len(I & J)
        return SymbolicGW(self.m, out)

    __rmul__ = __mul__

    def coefficient(self, I) -> int:
        return self.coeffs.get(frozenset(I), 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = SymbolicGW.const(self.m, other)
        return isinstance(other, SymbolicGW) and self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for I in sorted(self.coeffs, key=lambda I: (len(I), sorted(I))):
            sym = "*".join(f"q{i}" for i in sorted(I))
            c = self.coeffs[I]
            parts.append(str(c) if not sym else (sym if c == 1 else f"{c}*{sym}"))
        return " + ".join(parts)


def _poly_mul(a, b, zero):
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _int_poly(m, ints):
    return [SymbolicGW.const(m, c) for c in ints]


def _binomial_row(n, sign=1):
    return [comb(n, i) * sign**i for i in range(n + 1)]


def pfister_lambda_product(m: int) -> list:
    """prod_i (1+t)^2 (1 + (q_i - 2) t + t^2), coefficients in t."""
    zero = SymbolicGW.const(m, 0)
    out = _int_poly(m, [1])
    for i in range(1, m + 1):
        factor = [SymbolicGW.const(m, 1), SymbolicGW.q(m, i) - 2, SymbolicGW.const(m, 1)]
        out = _poly_mul(_poly_mul(out, _int_poly(m, [1, 2, 1]), zero), factor, zero)
    return out


def pfister_lambda_closed_form(m: int) -> list:
    """(1+t)^(2m) * sum_{d<=m} t^d (1-t)^(2m-2d) q(d)."""
    zero = SymbolicGW.const(m, 0)
    inner = [zero] * (2 * m + 1)
    for d in range(m + 1):
        qd = SymbolicGW.q_level(m, d)
        for k, c in enumerate(_binomial_row(2 * m - 2 * d, -1)):
            inner[d + k] = inner[d + k] + qd * c
    return _poly_mul(_int_poly(m, _binomial_row(2 * m)), inner, zero)


def verify_pfister_lambda_expansion(m: int) -> int:
    if not 0 <= m <= 4:
        raise ValueError("m must lie in 0..4")
    return int(pfister_lambda_product(m) == pfister_lambda_closed_form(m))


def triangular_expansion(m: int) -> list:
    """Matrix T with lambda^d = sum_{d'} T[d][d'] q(d') for d = 0..m, read off the product."""
    if not 0 <= m <= 4:
        raise ValueError("m must lie in 0..4")
    coeffs = pfister_lambda_product(m)
    rows = []
    for d in range(m + 1):
        c = coeffs[d]
        row = [c.coefficient(range(1, k + 1)) for k in range(m + 1)]
        rebuilt = SymbolicGW.const(m, 0)
        for k, a in enumerate(row):
            rebuilt = rebuilt + SymbolicGW.q_level(m, k) * a
        if rebuilt != c:
            raise ArithmeticError(f"coefficient of t^{d} is not symmetric in the q_i")
        rows.append(row)
    return rows


def is_unitriangular(T) -> bool:
    n = len(T)
    return all(T[d][d] == 1 and all(T[d][k] == 0 for k in range(d + 1, n)) for d in range(n))


def pfister_w2(alg: MilnorAlgebra, i: int) -> MilnorElement:
    """w_2 of <1, x_i, y_i, x_i y_i> in M(2m): e x_i + e y_i + x_i y_i."""
    x, y = alg.x(2 * i - 1), alg.x(2 * i)
    return alg.e * x + alg.e * y + x * y


def verify_pfister_sw_product(m: int) -> int:
    """Total class of the classes (0, x_i, y_i, x_i + y_i)_i equals prod_i (1 + w_2(q_i))."""
    if not 0 <= m <= 3:
        raise ValueError("m must lie in 0..3")
    alg = MilnorAlgebra(2 * m)
    classes = []
    rhs = alg.one
    for i in range(1, m + 1):
        x, y = alg.x(2 * i - 1), alg.x(2 * i)
        classes += [alg.zero, x, y, x + y]
        rhs = rhs * (1 + pfister_w2(alg, i))
    total = sw_total(classes, 2 * m)
    if total.element != rhs:
        return 0
    for d in range(4 * m + 1):
        comp = total.w(d)
        if d % 2 and comp:
            return 0
        if d % 2 == 0:
            level = alg.zero
            for I in combinations(range(1, m + 1), d // 2):
                term = alg.one
                for i in I:
                    term = term * pfister_w2(alg, i)
                level = level + term
            if comp != level:
                return 0
    return 1


# names used by the verification suites and the CLI
verify_prop_5_3_2 = verify_pfister_lambda_expansion
verify_lemma_5_4_2 = verify_pfister_sw_product
