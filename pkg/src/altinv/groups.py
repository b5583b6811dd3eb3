"""Permutations, small subgroups of A_n, and brute-force conjugacy classes.

Points are 1..n in the public interface.  Internally a permutation is the
tuple of images of 0..n-1.  Products compose right to left:
``(p * q)(i) = p(q(i))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial, prod
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

ORDER_CAP = 10**7


class Permutation:
    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int]):
        img = tuple(images)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"{img} is not a permutation of 0..{len(img) - 1}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """Build from 1-based disjoint cycles, e.g. ``from_cycles(4, [(1, 2), (3, 4)])``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= n:
                    raise ValueError(f"point {a} outside 1..{n}")
                if a in seen:
                    raise ValueError(f"point {a} appears twice")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                img[a - 1] = b - 1
        return cls(img)

    @classmethod
    def parse(cls, n: int, text: str) -> "Permutation":
        text = text.replace(" ", "")
        if text in ("", "()", "1", "id"):
            return cls.identity(n)
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"cannot parse cycle notation {text!r}")
        cycles = [tuple(int(a) for a in c.split(",")) for c in text[1:-1].split(")(")]
        return cls.from_cycles(n, cycles)

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return self._img

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self._img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise ValueError("degree mismatch")
        a = self._img
        return Permutation._raw(tuple(a[j] for j in other._img))

    @classmethod
    def _raw(cls, img):
        p = cls.__new__(cls)
        p._img = img
        p._hash = hash(img)
        return p

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self._img):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self):
        return self._hash

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def cycles(self, include_fixed: bool = False) -> list:
        """Disjoint cycles with 1-based points, each starting at its smallest point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i + 1)
                i = self._img[i]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def sign(self) -> int:
        return -1 if (self.n - len(self.cycles(include_fixed=True))) % 2 else 1

    def order(self) -> int:
        from math import lcm

        return lcm(*self.cycle_type()) if self.n else 1

    def fixed_points(self) -> list:
        return [i + 1 for i, j in enumerate(self._img) if i == j]

    def support(self) -> frozenset:
        return frozenset(i + 1 for i, j in enumerate(self._img) if i != j)

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self})"


def sign(p: Permutation) -> int:
    return p.sign()


class GeneratedSubgroup:
    """Subgroup of S_n given by generators; elements are enumerated on demand."""

    def __init__(self, n: int, generators: Sequence[Permutation], name: str = ""):
        gens = tuple(generators)
        for g in gens:
            if g.n != n:
                raise ValueError("generator of the wrong degree")
        self.n = n
        self.generators = gens
        self.name = name

    @cached_property
    def elements(self) -> frozenset:
        ident = Permutation.identity(self.n)
        seen = {ident}
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    if len(seen) > ORDER_CAP:
                        raise OverflowError(f"subgroup order exceeds {ORDER_CAP}")
                    queue.append(h)
        return frozenset(seen)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def fixed_points(self) -> list:
        """Points fixed by every element."""
        moved = set()
        for g in self.generators:
            moved |= g.support()
        return [i for i in range(1, self.n + 1) if i not in moved]

    def is_elementary_abelian(self) -> bool:
        gens = self.generators
        if any(not (g * g).is_identity() for g in gens):
            return False
        return all(a * b == b * a for a in gens for b in gens)

    def rank(self) -> int:
        """Rank of an elementary abelian 2-group."""
        if not self.is_elementary_abelian():
            raise ValueError("not an elementary abelian 2-group")
        return self.order.bit_length() - 1

    def is_even(self) -> bool:
        return all(g.sign() == 1 for g in self.generators)

    def __repr__(self):
        label = self.name or "subgroup"
        return f"<{label} of S_{self.n} on {len(self.generators)} generators>"


def even_part_generators(gens: Sequence[Permutation]) -> list:
    """Schreier generators of the even part of <gens>, transversal {1, t} with t odd."""
    odd = [g for g in gens if g.sign() == -1]
    if not odd:
        return list(gens)
    t = odd[0]
    t_inv = t.inverse()
    out = []
    for g in gens:
        if g.sign() == 1:
            out.extend([g, t * g * t_inv])
        else:
            out.extend([g * t_inv, t * g])
    uniq = []
    for g in out:
        if not g.is_identity() and g not in uniq:
            uniq.append(g)
    return uniq


def alternating_order(n: int) -> int:
    return factorial(n) // 2 if n > 1 else 1


def odd_double_factorial(n: int) -> int:
    """Product of the odd integers i <= n."""
    return prod(range(1, n + 1, 2))


def block_generators(n: int) -> list:
    """Per-block bitranspositions ((s'_i, s''_i) for i = 1..floor(n/4))."""
    out = []
    for i in range(1, n // 4 + 1):
        a, b, c, d = 4 * i - 3, 4 * i - 2, 4 * i - 1, 4 * i
        out.append(
            (
                Permutation.from_cycles(n, [(a, b), (c, d)]),
                Permutation.from_cycles(n, [(a, c), (b, d)]),
            )
        )
    return out


def build_E(n: int) -> GeneratedSubgroup:
    """Elementary abelian 2-subgroup of A_n of rank 2*floor(n/4), one Klein group per block."""
    if n < 4:
        raise ValueError("E is defined for n >= 4")
    gens = [g for pair in block_generators(n) for g in pair]
    return GeneratedSubgroup(n, gens, name="E")


def fixed_point_free_involution(n: int) -> Permutation:
    """s = s_0 s_1 ... s_m with s_i = (4i-3 4i)(4i-2 4i-1) and s_0 the leftover transposition."""
    if n % 2:
        raise ValueError("n must be even")
    cycles = []
    for i in range(1, n // 4 + 1):
        cycles += [(4 * i - 3, 4 * i), (4 * i - 2, 4 * i - 1)]
    if n % 4 == 2:
        cycles.append((n - 1, n))
    return Permutation.from_cycles(n, cycles)


@dataclass(frozen=True)
class CentralizerD:
    group: GeneratedSubgroup
    involution: Permutation

    @property
    def formula_order(self) -> int:
        r = self.group.n // 2
        return 2**r * factorial(r) // 2

    @property
    def formula_index(self) -> int:
        return alternating_order(self.group.n) // self.formula_order


def build_D(n: int) -> CentralizerD:
    """Centralizer in A_n of the fixed-point-free involution s (n even, n >= 4)."""
    if n % 2 or n < 4:
        raise ValueError("D is defined for even n >= 4")
    s = fixed_point_free_involution(n)
    pairs = s.cycles()
    # centralizer of s in S_n: swaps inside a pair, plus swaps of adjacent pairs
    gens = [Permutation.from_cycles(n, [p]) for p in pairs]
    for (a, b), (c, d) in zip(pairs, pairs[1:]):
        gens.append(Permutation.from_cycles(n, [(a, c), (b, d)]))
    return CentralizerD(GeneratedSubgroup(n, even_part_generators(gens), name="D"), s)


def centralizer_bruteforce(n: int, s: Permutation) -> int:
    """Order of the centralizer of s in A_n, by scanning A_n (small n only)."""
    from itertools import permutations

    count = 0
    for img in permutations(range(n)):
        p = Permutation._raw(img)
        if p.sign() == 1 and p * s == s * p:
            count += 1
    return count


@dataclass(frozen=True)
class IotaPrime:
    n: int
    embed: Callable[[Permutation], Permutation]
    image: GeneratedSubgroup
    c_prime: GeneratedSubgroup

    @property
    def index(self) -> int:
        return alternating_order(self.n) // self.image.order

    @property
    def formula_index(self) -> int:
        return self.n * (self.n - 1) // 2


def build_iota_prime(n: int) -> IotaPrime:
    """Embedding S_{n-2} -> A_n, s -> s or s*(n-1 n), with image and the subgroup C'."""
    if n % 4 not in (2, 3):
        raise ValueError("iota' is used for n = 2, 3 mod 4")
    tail = Permutation.from_cycles(n, [(n - 1, n)])

    def embed(p: Permutation) -> Permutation:
        if p.n != n - 2:
            raise ValueError(f"expected a permutation of degree {n - 2}")
        q = Permutation._raw(p.images + (n - 2, n - 1))
        return q if p.sign() == 1 else q * tail

    k = n - 2
    sym_gens = [Permutation.from_cycles(k, [(1, 2)])]
    if k > 2:
        sym_gens.append(Permutation.from_cycles(k, [tuple(range(1, k + 1))]))
    image = GeneratedSubgroup(n, [embed(g) for g in sym_gens], name="S'_{n-2}")
    transpositions = [Permutation.from_cycles(k, [(2 * i - 1, 2 * i)]) for i in range(1, k // 2 + 1)]
    c_prime = GeneratedSubgroup(n, [embed(t) for t in transpositions], name="C'")
    return IotaPrime(n, embed, image, c_prime)


# -- brute-force conjugacy classes


def _all_permutations(n: int) -> np.ndarray:
    """All permutations of 0..n-1 in lexicographic order, as an (n!, n) int8 array."""
    N = factorial(n)
    ranks = np.arange(N, dtype=np.int64)
    avail = np.tile(np.arange(n, dtype=np.int8), (N, 1))
    out = np.empty((N, n), dtype=np.int8)
    cols = np.arange(n)
    for pos in range(n):
        f = factorial(n - 1 - pos)
        digit, ranks = np.divmod(ranks, f)
        out[:, pos] = avail[np.arange(N), digit]
        width = n - pos
        keep = cols[None, :width] != digit[:, None]
        avail = avail[:, :width][keep].reshape(N, width - 1)
    return out


def _lehmer_rank(P: np.ndarray) -> np.ndarray:
    n = P.shape[1]
    rank = np.zeros(P.shape[0], dtype=np.int64)
    for i in range(n):
        digit = (P[:, i + 1 :] < P[:, i : i + 1]).sum(axis=1)
        rank += digit * factorial(n - 1 - i)
    return rank


def _group_generators(n: int, alternating: bool) -> list:
    if n < 2:
        return []
    if not alternating:
        gens = [(1, 2), tuple(range(1, n + 1))]
    elif n < 3:
        return []
    elif n % 2:
        gens = [(1, 2, 3), tuple(range(1, n + 1))]
    else:
        gens = [(1, 2, 3), tuple(range(2, n + 1))]
    return [Permutation.from_cycles(n, [c]) for c in gens]


@lru_cache(maxsize=None)
def conjugacy_classes(n: int, alternating: bool = True) -> tuple:
    """Conjugacy classes of A_n (or S_n) grouped by cycle type, by orbit enumeration.

    Returns a tuple of (cycle_type, number_of_classes), cycle types in reverse
    lexicographic order.
    """
    if not 1 <= n <= 10:
        raise ValueError("brute-force enumeration is limited to 1 <= n <= 10")
    P = _all_permutations(n)
    full_rank = np.arange(P.shape[0], dtype=np.int64)
    if alternating:
        inversions = np.zeros(P.shape[0], dtype=np.int64)
        for i in range(n):
            inversions += (P[:, i + 1 :] < P[:, i : i + 1]).sum(axis=1)
        even = inversions % 2 == 0
        P = P[even]
        index_of = np.full(full_rank.shape[0], -1, dtype=np.int64)
        index_of[np.flatnonzero(even)] = np.arange(P.shape[0])
    else:
        index_of = full_rank
    N = P.shape[0]
    rows, cols = [], []
    for g in _group_generators(n, alternating):
        g_arr = np.array(g.images, dtype=np.int8)
        g_inv = np.array(g.inverse().images, dtype=np.int64)
        conj = g_arr[P[:, g_inv]]  # g p g^-1
        rows.append(np.arange(N))
        cols.append(index_of[_lehmer_rank(conj)])
    if rows:
        graph = coo_matrix(
            (np.ones(sum(len(r) for r in rows), dtype=np.int8), (np.concatenate(rows), np.concatenate(cols))),
            shape=(N, N),
        )
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = np.arange(N)
    _, first = np.unique(labels, return_index=True)
    counts: dict = {}
    for idx in first:
        ct = Permutation._raw(tuple(int(a) for a in P[idx])).cycle_type()
        counts[ct] = counts.get(ct, 0) + 1
    return tuple(sorted(counts.items(), reverse=True))


def class_count(n: int, alternating: bool = True) -> int:
    return sum(c for _, c in conjugacy_classes(n, alternating))
