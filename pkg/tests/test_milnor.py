import random
from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from altinv.milnor import (
    MilnorAlgebra,
    MilnorElement,
    NotInP,
    PNormalForm,
    SWClass,
    TruncatedSeries,
    elementary_symmetric,
    multiply,
    p_factorize,
    p_series,
    parse_element,
    series_inverse,
    steenrod_square,
    steenrod_total,
    substitute,
    sw_product_check,
    sw_total,
    total_product,
    w_gal_transform,
)


def elements(g, d=None, max_degree=4):
    alg = MilnorAlgebra(g)
    degrees = [d] if d is not None else list(range(max_degree + 1))
    monos = [m for k in degrees for m in alg.basis(k)]
    return st.sets(st.sampled_from(monos)).map(lambda s: MilnorElement(g, s))


# -- sympy oracle: F2[e, x1..xg] with x_i^k -> e^(k-1) x_i


def to_sympy(u, syms):
    e, xs = syms[0], syms[1:]
    expr = 0
    for a, mask in u.terms:
        term = e**a
        for i, x in enumerate(xs):
            if mask >> i & 1:
                term *= x
        expr += term
    return expr


def sympy_reduce(expr, syms, g):
    poly = sympy.Poly(sympy.expand(expr), *syms, modulus=2)
    terms = []
    for exps, c in poly.terms():
        if int(c) % 2 == 0:
            continue
        a = exps[0]
        mask = 0
        for i, k in enumerate(exps[1:]):
            if k:
                a += k - 1
                mask |= 1 << i
        terms.append((a, mask))
    return MilnorElement(g, terms)


def test_multiply_examples():
    alg = MilnorAlgebra(3)
    x1, x2, x3 = alg.gens
    assert multiply(x1, x1) == alg.e * x1
    assert multiply(x1 * x2, x2 * x3) == alg.e * x1 * x2 * x3
    u = x1 + alg.e * x2
    assert multiply(alg.one, u) == u


def test_multiply_mismatch():
    with pytest.raises(ValueError):
        MilnorAlgebra(2).x(1) * MilnorAlgebra(3).x(1)


@given(elements(3), elements(3))
def test_multiply_against_sympy(u, v):
    syms = sympy.symbols("e x1:4")
    assert u * v == sympy_reduce(to_sympy(u, syms) * to_sympy(v, syms), syms, 3)


@given(elements(4, 2), elements(4, 3))
def test_homogeneous_product_degree(u, v):
    w = u * v
    assert w.is_homogeneous(5) or not w


@given(st.integers(1, 5), st.integers(1, 3), st.data())
def test_power_rule(g, d, data):
    z = data.draw(elements(g, d))
    e = MilnorAlgebra(g).e
    for m in range(1, 9):
        assert z**m == e ** (d * m - d) * z


@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_quadratic_product_rule(g, d, data):
    y = data.draw(elements(g, d))
    z = data.draw(elements(g, d))
    assert (1 + y) * (1 + z) == (1 + y + z) * (1 + y * z)
    # x^2 y + x y^2 = 0
    assert y * y * z + y * z * z == 0


@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_total_product_identity(g, d, data):
    ys = data.draw(st.lists(elements(g, d), min_size=0, max_size=6))
    lhs = total_product(ys, g)
    rhs = MilnorAlgebra(g).one
    j = 0
    while 1 << j <= len(ys):
        rhs = rhs * (1 + elementary_symmetric(ys, 1 << j, g))
        j += 1
    assert lhs == rhs


def test_elementary_symmetric_examples():
    alg = MilnorAlgebra(8)
    x1, x2 = alg.x(1), alg.x(2)
    assert elementary_symmetric([x1, x2], 2) == x1 * x2
    ys = alg.gens
    s = [elementary_symmetric(ys, k) for k in range(4)]
    assert s[3] == s[1] * s[2]
    assert elementary_symmetric([x1, x2], 3) == 0
    with pytest.raises(ValueError):
        elementary_symmetric([x1, x1 * x2], 1)


def test_elementary_symmetric_brute_force():
    alg = MilnorAlgebra(4)
    ys = [alg.x(1), alg.x(2) + alg.e, alg.x(3) + alg.x(4), alg.x(1) + alg.x(4), alg.e]
    for m in range(len(ys) + 1):
        brute = alg.zero
        for subset in combinations(ys, m):
            term = alg.one
            for y in subset:
                term = term * y
            brute = brute + term
        assert elementary_symmetric(ys, m) == brute


@given(st.integers(1, 4), st.integers(1, 2), st.data())
def test_symmetric_product_rule(g, d, data):
    ys = data.draw(st.lists(elements(g, d), min_size=1, max_size=6))
    e = MilnorAlgebra(g).e
    s = [elementary_symmetric(ys, k, g) for k in range(13)]
    for m in range(7):
        for m2 in range(7):
            assert s[m] * s[m2] == e ** (d * (m & m2)) * s[m | m2]


def test_steenrod_examples():
    alg = MilnorAlgebra(2)
    x1, x2 = alg.gens
    assert steenrod_total(x1) == x1 + alg.e * x1
    assert steenrod_total(alg.one) == alg.one
    assert steenrod_total(x1 * x2) == x1 * x2 + alg.e**2 * x1 * x2
    with pytest.raises(ValueError):
        steenrod_total(x1 + x1 * x2)


@given(elements(3, 1), elements(3, 2))
def test_steenrod_cartan(u, v):
    assert steenrod_total(u * v) == steenrod_total(u) * steenrod_total(v)


@given(elements(3, 1))
def test_sq1_on_degree_one_is_square(z):
    assert steenrod_square(1, z) == z * z


def test_p_factorize_examples():
    alg = MilnorAlgebra(4)
    ys = alg.gens + [alg.x(1) + alg.x(2)]
    x = total_product(ys)
    form = p_factorize(x)
    assert form.factors == tuple(elementary_symmetric(ys, 1 << j) for j in range(3))
    assert p_factorize(alg.one).factors == ()
    assert form.expand() == x


def test_p_factorize_c_coefficients():
    rng = random.Random(5)
    alg = MilnorAlgebra(3)

    def rand(d):
        return MilnorElement(3, [m for m in alg.basis(d) if rng.random() < 0.5])

    for _ in range(40):
        a0, b0, a1, b1 = rand(1), rand(1), rand(2), rand(2)
        x = (1 + a0) * (1 + a1) * (1 + b0) * (1 + b1)
        form = p_factorize(x, bound=3)
        assert form.factors == (a0 + b0, a1 + a0 * b0 + b1, a0 * a1 * b0 + a1 * b1 + a0 * b0 * b1)


def test_p_factorize_rejects():
    alg = MilnorAlgebra(2)
    with pytest.raises(NotInP):
        p_factorize(alg.x(1))
    # degree-3 component that is not a0*a1
    with pytest.raises(NotInP):
        p_factorize(1 + alg.e * alg.x(1) * alg.x(2))
    with pytest.raises(ValueError):
        p_factorize(1 + alg.x(1) * alg.x(2), bound=1)


@given(st.integers(1, 4), st.data())
def test_p_closure(g, data):
    def p_elem(n):
        x = MilnorAlgebra(g).one
        for j in range(n):
            x = x * (1 + data.draw(elements(g, 1 << j)))
        return x

    x, y, z = p_elem(3), p_elem(2), p_elem(3)
    prod = x * y * z
    assert p_factorize(prod).expand() == prod


def test_sw_examples():
    alg = MilnorAlgebra(2)
    x, y = alg.gens
    assert sw_total([x, y]).element == 1 + (x + y) + x * y
    assert sw_total([alg.zero, x, y, x + y], 2).w(2) == alg.e * x + alg.e * y + x * y
    assert sw_total([alg.zero, alg.zero], 2).element == 1
    with pytest.raises(ValueError):
        sw_total([x * y])
    with pytest.raises(ValueError):
        SWClass(x)


def test_sw_product_check_examples():
    alg = MilnorAlgebra(8)
    w = sw_total(alg.gens)
    assert w.w(3) * w.w(6) == alg.e**2 * w.w(7)
    assert sw_product_check(3, 6, w) == 1
    assert all(sw_product_check(m, 0, w) for m in range(9))


@given(st.lists(elements(6, 1), min_size=0, max_size=6))
def test_sw_product_check_random(alphas):
    w = sw_total(alphas, 6)
    assert all(sw_product_check(m, m2, w) for m in range(7) for m2 in range(7))


@given(st.lists(elements(5, 1), max_size=6), elements(5, 1))
def test_w_gal(alphas, two):
    w = sw_total(alphas, 5)
    gal = w_gal_transform(w, two)
    e = MilnorAlgebra(5).e
    for i in range(2, 9):
        if i % 2 == 0:
            assert gal.w(i) == w.w(i) + two * w.w(i - 1)
        else:
            # two * e = (2)(-1) vanishes in H(k) but not in M(g)
            assert gal.w(i) == w.w(i) + two * e * w.w(i - 2)
    assert gal.w(1) == w.w(1)
    rhs = MilnorAlgebra(5).one
    for j in range(3):
        rhs = rhs * (1 + gal.w(1 << j))
    assert gal.element == rhs
    assert w_gal_transform(w, MilnorAlgebra(5).zero) == w


def test_w_gal_example():
    alg = MilnorAlgebra(3)
    w = sw_total([alg.x(1), alg.x(2)])
    gal = w_gal_transform(w, alg.x(3))
    assert gal.w(2) == w.w(2) + alg.x(3) * w.w(1)


def test_substitute_examples():
    alg = MilnorAlgebra(2)
    x, y = alg.gens
    inv = alg.e * x + alg.e * y + x * y
    assert substitute(inv, {1: y, 2: x + y}) == inv
    assert substitute(inv, {}) == inv
    assert substitute(x * x, {1: x + y}) == alg.e * (x + y)
    with pytest.raises(ValueError):
        substitute(x, {1: x * y})


@given(elements(3), elements(3), st.lists(elements(3, 1), min_size=3, max_size=3))
def test_substitute_is_ring_map(u, v, imgs):
    images = dict(enumerate(imgs, 1))
    assert substitute(u * v, images) == substitute(u, images) * substitute(v, images)
    assert substitute(u + v, images) == substitute(u, images) + substitute(v, images)


def test_series_inverse_examples():
    alg = MilnorAlgebra(2)
    x = alg.x(1)
    s = TruncatedSeries([alg.one, x], order=16)
    inv = series_inverse(s)
    expected = p_series([x, x * x, x**4, x**8, x**16], order=16)
    assert inv == expected
    assert (s * inv).is_one()
    one = TruncatedSeries.one(2, 16)
    assert series_inverse(one) == one


@given(st.data())
def test_series_group_law(data):
    g = 3
    a = [data.draw(elements(g, 1 << j)) for j in range(3)]
    b = [data.draw(elements(g, 1 << j)) for j in range(3)]
    s, t = p_series(a, 12, g), p_series(b, 12, g)
    assert series_inverse(s * t) == series_inverse(s) * series_inverse(t)
    assert (s * series_inverse(s)).is_one()


def test_parse_and_print():
    alg = MilnorAlgebra(3)
    u = parse_element("e^2*x1*x3 + x2 + 1", 3)
    assert u == alg.e**2 * alg.x(1) * alg.x(3) + alg.x(2) + 1
    assert str(alg.e * alg.x(1) + alg.e * alg.x(2) + alg.x(1) * alg.x(2)) == "e*x1 + e*x2 + x1*x2"
    for bad in ("x1^2", "x1*x1", "x4", "", "x1 + + x2", "y1"):
        with pytest.raises(ValueError):
            parse_element(bad, 3)
    assert parse_element("0", 3) == 0
    assert parse_element("x1 + x1", 3) == 0


@given(elements(4, max_degree=5))
def test_print_roundtrip(u):
    assert parse_element(str(u), 4) == u


def test_pnormalform_str():
    alg = MilnorAlgebra(1)
    assert str(PNormalForm((alg.x(1),), 1)) == "(1 + x1)"
