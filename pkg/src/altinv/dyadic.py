"""Binary-digit combinatorics: dyadic supports, diminished sums, parity of
binomial and trinomial coefficients."""

from math import comb

MAX_NATURAL = 1 << 64


def _check(m):
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"expected a natural number, got {m!r}")
    if m >= MAX_NATURAL:
        raise ValueError(f"{m} exceeds the 2^64 cap")
    return m


def support(m):
    """The set of exponents in the binary expansion of ``m``."""
    _check(m)
    return frozenset(i for i in range(m.bit_length()) if m >> i & 1)


def from_support(bits):
    return sum(1 << b for b in set(bits))


def diminished_sum(m, m2):
    """Value of the union of the dyadic supports of ``m`` and ``m2``.

    >>> diminished_sum(3, 6)
    7
    """
    return _check(m) | _check(m2)


def overlap_count(m, m2):
    """Number of binary digits shared by ``m`` and ``m2``."""
    return bin(_check(m) & _check(m2)).count("1")


def overlap_value(m, m2):
    """Sum of 2^a over the shared binary digits, i.e. m + m2 - (m | m2).

    This is the e-exponent (per unit of degree) in s_m * s_m2 = e^(d*k) * s_(m|m2):
    s_(2^a)^2 = e^(d*2^a) s_(2^a) for each shared digit a.
    """
    return _check(m) & _check(m2)


def trinomial_parity(a, b, c):
    """1 iff (a+b+c)!/(a! b! c!) is odd, i.e. the three supports are disjoint."""
    _check(a), _check(b), _check(c)
    return int(not (a & b or a & c or b & c))


def odd_trinomial_indices(m, m2):
    """Indices i in [0, min(m, m2)] whose coefficient (i, m-i, m2-i) is odd."""
    return [i for i in range(min(m, m2) + 1) if trinomial_parity(i, m - i, m2 - i)]


def signed_binomial(n, k):
    """Binomial coefficient C(n, k) for any integer n, as the t^k coefficient of (1+t)^n."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(-n + k - 1, k)
