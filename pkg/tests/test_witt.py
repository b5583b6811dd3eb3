import math
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from altinv.fields import FiniteField, QuadClosed, RealClosed
from altinv.witt import (
    INFINITY,
    DiagonalForm,
    GWClass,
    GWPolynomial,
    divisible_by_one_plus_t,
    filtration,
    gw_class,
    gw_ops,
    lambda_poly,
    lambda_power,
    ones,
    parse_form,
    pfister2,
    witt_class,
)

F3, F5, F7 = FiniteField(3), FiniteField(5), FiniteField(7)
R, QC = RealClosed(), QuadClosed()


def witt_index(q):
    """Brute force: grow a totally isotropic subspace greedily (maximal ones share a dimension)."""
    F = q.field
    n = q.rank
    a = q.entries

    def form(u, v):
        acc = F.zero
        for i in range(n):
            acc = F.add(acc, F.mul(a[i], F.mul(u[i], v[i])))
        return acc

    vectors = list(product(F.elements(), repeat=n))
    chosen = []
    span = {tuple([F.zero] * n)}
    while True:
        for v in vectors:
            if v in span or not F.is_zero(form(v, v)):
                continue
            if all(F.is_zero(form(v, u)) for u in chosen):
                chosen.append(v)
                span = {tuple(F.add(s, F.mul(c, x)) for s, x in zip(w, v)) for w in span for c in F.elements()}
                break
        else:
            return len(chosen)


def diag_forms(F, max_rank):
    if isinstance(F, RealClosed):
        nonzero = [-3, -1, 1, 2, 5]
    else:
        nonzero = [a for a in F.elements() if not F.is_zero(a)]
    return st.lists(st.sampled_from(nonzero), max_size=max_rank).map(lambda e: DiagonalForm(F, tuple(e)))


def test_witt_class_examples():
    assert witt_class(DiagonalForm(F5, (1, -1))).is_zero()
    assert witt_class(DiagonalForm(R, (1, 1, -1))).datum == 1
    w = witt_class(DiagonalForm(F3, (1, 1)))
    assert len(w.datum) == 2 and witt_index(DiagonalForm(F3, (1, 1))) == 0


@pytest.mark.parametrize("F,max_rank", [(F3, 5), (F5, 4), (F7, 3), (FiniteField(3, 2), 3)], ids=str)
def test_anisotropic_dimension_brute_force(F, max_rank):
    nonzero = [a for a in F.elements() if not F.is_zero(a)]
    for n in range(max_rank + 1):
        for entries in product(F.class_reps(), repeat=n):
            q = DiagonalForm(F, entries)
            w = witt_class(q)
            assert len(w.datum) == n - 2 * witt_index(q), entries
            assert len(witt_class(w.representative()).datum) == len(w.datum)
    assert nonzero


@given(diag_forms(F3, 3), diag_forms(F3, 3))
def test_witt_equality_brute_force(q1, q2):
    same = witt_class(q1) == witt_class(q2)
    sum_form = q1 + (-q2)
    assert same == (2 * witt_index(sum_form) == sum_form.rank)


@given(diag_forms(F7, 4), diag_forms(F7, 4), diag_forms(F7, 3))
def test_gw_ring_homomorphism(q1, q2, q3):
    a, b, c = gw_class(q1), gw_class(q2), gw_class(q3)
    assert gw_class(q1 + q2) == a + b
    assert gw_class(q1 * q2) == a * b
    assert (a + b) * c == a * c + b * c
    assert a - a == 0
    assert a * 1 == a
    assert gw_ops(a, b, "add") == a + b and gw_ops(a, b, "mul") == a * b and gw_ops(a, b, "neg") == -a


@pytest.mark.parametrize("F", [F3, F5, FiniteField(3, 2), R, QC], ids=str)
def test_from_int_matches_ones(F):
    for n in range(-9, 10):
        expected = gw_class(ones(F, n)) if n >= 0 else -gw_class(ones(F, -n))
        assert GWClass.from_int(F, n) == expected


def test_gw_examples():
    one, minus = gw_class(DiagonalForm(R, (1,))), gw_class(DiagonalForm(R, (-1,)))
    s = one + minus
    assert s.witt.is_zero() and s.rank == 2
    assert minus * minus == 1
    with pytest.raises(ValueError):
        GWClass(witt_class(ones(R, 1)), 2)
    with pytest.raises(ValueError):
        gw_ops(one, one, "pow")


def test_lambda_examples():
    for F in (F3, F5, F7, R, QC):
        for x, y in product(F.class_reps(), repeat=2):
            q = pfister2(F, x, y)
            g = gw_class(q)
            assert lambda_power(q, 2) == 2 * g - 2
            assert lambda_power(q, 3) == g
            assert lambda_power(q, 4) == 1
            assert lambda_power(q, 0) == 1
            assert lambda_power(q, 5) == 0
    assert lambda_poly(ones(R, 1)) == GWPolynomial.from_ints(R, [1, 1])
    assert lambda_poly(ones(R, 2)) == GWPolynomial.from_ints(R, [1, 2, 1])
    with pytest.raises(ValueError):
        lambda_power(ones(R, 2), -1)


@given(diag_forms(F5, 4))
def test_lambda_power_raw_entries(q):
    """Subsets of the raw entries give the same class as subsets of canonical representatives."""
    from itertools import combinations

    F = q.field
    for i in range(q.rank + 1):
        prods = []
        for S in combinations(q.entries, i):
            p = F.one
            for a in S:
                p = F.mul(p, a)
            prods.append(p)
        assert lambda_power(q, i) == gw_class(DiagonalForm(F, tuple(prods)))


@given(diag_forms(F3, 4), diag_forms(F3, 3))
def test_lambda_t_multiplicative(q1, q2):
    assert lambda_poly(q1 + q2) == lambda_poly(q1) * lambda_poly(q2)


def test_pfister2_examples():
    assert pfister2(F7, 1, 1).entries == (1, 1, 1, 1)
    for x, y in product(range(1, 7), repeat=2):
        assert pfister2(F7, x, y).has_trivial_disc()
    assert witt_class(pfister2(R, -1, -1)).datum == 0
    with pytest.raises(ValueError):
        pfister2(F7, 0, 1)


def test_filtration_examples():
    assert filtration(witt_class(ones(R, 2))) == 1
    assert filtration(witt_class(ones(R, 8))) == 3
    assert filtration(witt_class(DiagonalForm(R, (1, -1)))) == INFINITY
    assert filtration(witt_class(ones(F5, 1))) == 0
    assert filtration(witt_class(DiagonalForm(F3, (1, 1)))) == 1
    assert filtration(witt_class(ones(QC, 2))) == math.inf
    assert filtration(witt_class(ones(QC, 3))) == 0


def _real_int_polys(f):
    """GW(R) = Z x Z via (rank, signature)."""
    t = sympy.symbols("t")
    rank = sum(c.rank * t**i for i, c in enumerate(f.coeffs))
    sig = sum(c.witt.datum * t**i for i, c in enumerate(f.coeffs))
    return t, sympy.Poly(rank, t), sympy.Poly(sig, t)


def _max_power(poly, t):
    k = 0
    while not poly.is_zero and sympy.rem(poly, sympy.Poly((1 + t) ** (k + 1), t)).is_zero:
        k += 1
    return math.inf if poly.is_zero else k


def test_divisibility_examples():
    q = pfister2(F5, 2, 3)
    assert divisible_by_one_plus_t(lambda_poly(q), 2) == 1
    assert divisible_by_one_plus_t(GWPolynomial.one_plus_t_power(F5, 3), 3) == 1
    assert divisible_by_one_plus_t(GWPolynomial.from_ints(R, [1, 0, 1]), 2) == 0
    assert divisible_by_one_plus_t(GWPolynomial.one_plus_t_power(F5, 3), 4) == 0


@given(diag_forms(R, 6), st.integers(0, 4))
def test_divisibility_against_sympy(q, extra):
    f = lambda_poly(q) * GWPolynomial.one_plus_t_power(R, extra)
    t, rank, sig = _real_int_polys(f)
    depth = min(_max_power(rank, t), _max_power(sig, t))
    for N in range(10):
        assert divisible_by_one_plus_t(f, N) == int(N <= depth)


def test_parse_form():
    assert parse_form("<1,-1,u>", F5).entries == (1, 4, 2)
    assert parse_form("<>", F5).rank == 0
    with pytest.raises(ValueError):
        parse_form("1,2", F5)
    with pytest.raises(ValueError):
        parse_form("<1,0>", F5)


@given(diag_forms(F7, 5))
def test_form_str_roundtrip(q):
    assert parse_form(str(q), F7) == q


def test_disc_class():
    q = DiagonalForm(F5, (2, 3))
    assert q.disc_class() == F5.square_class(6)
    assert DiagonalForm(R, (-1, -1)).has_trivial_disc()
