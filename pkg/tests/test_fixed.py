import random
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from altinv.fixed import (
    LinearAction,
    SymbolicGW,
    a3_action,
    f2_kernel,
    f2_rank,
    fixed_permutation_module_W,
    fixed_submodule_H,
    is_unitriangular,
    n_action,
    pfister_lambda_product,
    s3_action,
    triangular_expansion,
    trivial_action,
    verify_lemma_5_4_2,
    verify_pfister_lambda_expansion,
    verify_pfister_sw_product,
    verify_prop_5_3_2,
)
from altinv.milnor import MilnorAlgebra


def test_f2_kernel_against_sympy():
    rng = random.Random(3)
    for _ in range(30):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        cols = [rng.getrandbits(m) for _ in range(n)]
        kernel = f2_kernel(cols)
        assert len(kernel) == n - f2_rank(cols)
        for v in kernel:
            acc = 0
            for j in range(n):
                if v >> j & 1:
                    acc ^= cols[j]
            assert acc == 0
        assert f2_rank(kernel) == len(kernel)


def test_a3_generators():
    alg = MilnorAlgebra(2)
    x, y = alg.gens
    for action in (a3_action(), s3_action()):
        report = fixed_submodule_H(action, 6)
        assert report.generators == [alg.one, alg.e * x + alg.e * y + x * y]
        assert report.generator_degrees() == [0, 2]
        assert report.spans_fixed_spaces()


def test_a3_dimensions():
    report = fixed_submodule_H(a3_action(), 12)
    assert report.dimensions == [1, 1] + [2] * 11


def test_trivial_action():
    alg = MilnorAlgebra(2)
    x, y = alg.gens
    report = fixed_submodule_H(trivial_action(2), 5)
    assert set(report.generators) == {alg.one, x, y, x * y}
    assert report.dimensions == [1, 3] + [4] * 4


@pytest.mark.parametrize(
    "action", [a3_action(), s3_action(), n_action(1), n_action(2), trivial_action(3)], ids=lambda a: f"r{a.r}"
)
def test_generators_are_fixed(action):
    report = fixed_submodule_H(action, 6)
    for g in report.generators:
        assert action.is_fixed(g)
    for basis in report.fixed_bases:
        assert all(action.is_fixed(u) for u in basis)


def test_fixed_dimension_brute_force():
    """Count fixed vectors in degree d by enumerating the whole degree-d space of M(2)."""
    from altinv.milnor import MilnorElement

    action = a3_action()
    alg = MilnorAlgebra(2)
    report = fixed_submodule_H(action, 5)
    for d in range(6):
        basis = alg.basis(d)
        count = sum(
            action.is_fixed(MilnorElement(2, [m for m, b in zip(basis, bits) if b]))
            for bits in product((0, 1), repeat=len(basis))
        )
        assert count == 2 ** report.dimensions[d]


def test_n_action_basis():
    alg = MilnorAlgebra(4)
    report = fixed_submodule_H(n_action(2), 8)
    assert report.generator_degrees() == [0, 2, 4]
    w2 = [alg.e * alg.x(2 * i - 1) + alg.e * alg.x(2 * i) + alg.x(2 * i - 1) * alg.x(2 * i) for i in (1, 2)]
    assert report.generators[1] == w2[0] + w2[1]
    assert report.generators[2] == w2[0] * w2[1]
    assert report.spans_fixed_spaces()


def test_linear_action_validation():
    with pytest.raises(ValueError):
        LinearAction(2, (((1, 1), (1, 1)),))
    with pytest.raises(ValueError):
        fixed_submodule_H(a3_action(), 13)


def test_W_examples():
    W = fixed_permutation_module_W(4, [[1, 3, 4, 2]], ["1", "a_x", "a_y", "a_xy"])
    assert W.formatted() == ["1", "a_x+a_y+a_xy"]
    W = fixed_permutation_module_W(3, [[1, 2, 3]])
    assert W.formatted() == ["b1", "b2", "b3"]
    # subsets of {1,2}: {}, {1}, {2}, {1,2}; swapping indices
    W = fixed_permutation_module_W(4, [[1, 3, 2, 4]], ["q{}", "q1", "q2", "q12"])
    assert W.formatted() == ["q{}", "q1+q2", "q12"]
    with pytest.raises(ValueError):
        fixed_permutation_module_W(3, [[1, 1, 2]])


@given(st.integers(1, 7).flatmap(lambda n: st.lists(st.permutations(range(1, n + 1)), max_size=3)))
def test_orbit_sums_span_fixed_module(gens):
    n = len(gens[0]) if gens else 1
    W = fixed_permutation_module_W(n, gens)
    # invariance of every orbit sum, and dimension = rank of the fixed space over Q
    for orb in W.orbits:
        for g in gens:
            assert sorted(g[i] - 1 for i in orb) == sorted(orb)
    if gens:
        A = sympy.Matrix.vstack(
            *[sympy.Matrix(n, n, lambda i, j: int(g[j] - 1 == i)) - sympy.eye(n) for g in gens]
        )
        assert len(A.nullspace()) == len(W.orbits)


def test_symbolic_gw_ring():
    m = 3
    q1, q2 = SymbolicGW.q(m, 1), SymbolicGW.q(m, 2)
    assert q1 * q1 == 4 * q1
    assert (q1 + 1) * (q2 - 2) == q1 * q2 - 2 * q1 + q2 - 2
    assert SymbolicGW.q_level(m, 2).coefficient({1, 3}) == 1
    assert str(q1 * q2 - 3) == "-3 + q1*q2"
    with pytest.raises(ValueError):
        SymbolicGW(2, {frozenset([3]): 1})


def test_pfister_lambda_expansion():
    assert [verify_pfister_lambda_expansion(m) for m in range(5)] == [1] * 5
    assert verify_prop_5_3_2 is verify_pfister_lambda_expansion
    assert len(pfister_lambda_product(3)) == 4 * 3 + 1
    assert pfister_lambda_product(0) == [SymbolicGW.const(0, 1)]


def test_triangular_expansion_examples():
    T = triangular_expansion(2)
    assert T[0] == [1, 0, 0]
    assert T[1][1] == 1
    assert T[2] == [-4, 2, 1]
    assert all(is_unitriangular(triangular_expansion(m)) for m in range(5))


def test_triangular_expansion_closed_form():
    t = sympy.symbols("t")
    for m in range(5):
        T = triangular_expansion(m)
        for d in range(m + 1):
            for k in range(d + 1):
                poly = sympy.expand((1 + t) ** (2 * m) * (1 - t) ** (2 * m - 2 * k))
                assert T[d][k] == poly.coeff(t, d - k)


def test_pfister_sw_product():
    assert [verify_pfister_sw_product(m) for m in range(4)] == [1] * 4
    assert verify_lemma_5_4_2 is verify_pfister_sw_product
    with pytest.raises(ValueError):
        verify_pfister_sw_product(4)
