"""Named verification suites, each a batch of exact checks.

Used by ``altinv verify <suite>`` and by the acceptance tests.  Random
instances come from a fixed seed so every run checks the same inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from math import factorial

from . import dyadic
from .etale import (
    algebra_from_cycle_type,
    enumerate_An_torsors,
    quadratic_algebra,
    split_algebra,
    trace_form,
    type_T_algebra,
)
from .fields import FiniteField, QuadClosed, RealClosed
from .fixed import (
    a3_action,
    fixed_permutation_module_W,
    fixed_submodule_H,
    is_unitriangular,
    s3_action,
    triangular_expansion,
    verify_pfister_lambda_expansion,
    verify_pfister_sw_product,
)
from .groups import (
    build_D,
    build_E,
    build_iota_prime,
    centralizer_bruteforce,
    class_count,
    odd_double_factorial,
)
from .milnor import (
    MilnorAlgebra,
    MilnorElement,
    NotInP,
    elementary_symmetric,
    p_factorize,
    sw_product_check,
    sw_total,
    total_product,
)
from .relations import SweepFailure, sweep_verify
from .witt import DiagonalForm, GWPolynomial, gw_class, lambda_poly, ones, pfister2

SEED = 20240601


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, label, passed, detail=""):
        self.checks.append(Check(label, bool(passed), detail))

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": len(self.checks),
            "failures": [{"label": c.label, "detail": c.detail} for c in self.failures()],
        }


def random_element(rng, g, d, density=0.5):
    alg = MilnorAlgebra(g)
    return MilnorElement(g, [m for m in alg.basis(d) if rng.random() < density])


# -- appendix A: symmetric functions and the P normal form


def _check_power_identity(ys, g, d):
    """prod (1 + y_i) == prod_j (1 + s_(2^j)) for degree-d entries."""
    lhs = total_product(ys, g)
    rhs = MilnorAlgebra(g).one
    j = 0
    while 1 << j <= len(ys):
        rhs = rhs * (1 + elementary_symmetric(ys, 1 << j, g))
        j += 1
    return lhs == rhs


def suite_appendix_a(instances=100):
    res = SuiteResult("appendixA")
    rng = random.Random(SEED)
    for g in range(1, 6):
        alg = MilnorAlgebra(g)
        for d in (1, 2, 3):
            ys = [MilnorElement(g, [m]) for m in alg.basis(d)]
            ok = _check_power_identity(ys, g, d)
            for _ in range(10):
                sample = [random_element(rng, g, d) for _ in range(rng.randint(1, 6))]
                ok = ok and _check_power_identity(sample, g, d)
            res.add(f"power identity g={g} d={d}", ok)
    # closure of P under products
    closure_ok = True
    for k in range(instances):
        g = rng.randint(1, 4)
        n = rng.choice((2, 3))
        xs = []
        for _ in range(2):
            factors = [random_element(rng, g, 1 << j) for j in range(n)]
            x = MilnorAlgebra(g).one
            for a in factors:
                x = x * (1 + a)
            xs.append(x)
        prod_ = xs[0] * xs[1]
        try:
            form = p_factorize(prod_)
            closure_ok = closure_ok and form.expand() == prod_
        except NotInP:
            closure_ok = False
            res.add(f"P closure instance {k}", False, str(prod_))
    res.add(f"P closure on {instances} random products", closure_ok)
    # the c0, c1, c2 coefficients for (1+a0)(1+a1) * (1+b0)(1+b1), over every choice in M(2)
    alg = MilnorAlgebra(2)
    deg1 = [MilnorElement(2, s) for s in _subsets(alg.basis(1))]
    deg2 = [MilnorElement(2, s) for s in _subsets(alg.basis(2))]
    coeff_ok = True
    for a0, b0 in product(deg1, repeat=2):
        for a1 in deg2:
            for b1 in deg2:
                x = (1 + a0) * (1 + a1) * (1 + b0) * (1 + b1)
                form = p_factorize(x, bound=3)
                expected = (a0 + b0, a1 + a0 * b0 + b1, a0 * a1 * b0 + a1 * b1 + a0 * b0 * b1)
                if form.factors != expected:
                    coeff_ok = False
    res.add("c0, c1, c2 coefficients over M(2)", coeff_ok)
    return res


def _subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from combinations(items, r)


# -- product rules


def suite_product_rules(limit=12, integer_limit=64):
    res = SuiteResult("product-rules")
    g = 6
    alg = MilnorAlgebra(g)
    x = alg.gens
    deg1 = x + [alg.e, x[0] + x[1], x[2] + x[3] + alg.e, x[4] + x[5], x[0] + x[2] + x[4], x[1] + x[3] + x[5]]
    deg2 = [x[i] * x[j] for i, j in combinations(range(g), 2)][:limit]
    for d, ys in ((1, deg1[:limit]), (2, deg2)):
        s = [elementary_symmetric(ys, k, g) for k in range(2 * limit + 1)]
        ok = True
        for m in range(limit + 1):
            for m2 in range(limit + 1):
                lhs = s[m] * s[m2]
                rhs = alg.e ** (d * dyadic.overlap_value(m, m2)) * s[m | m2]
                ok = ok and lhs == rhs
        res.add(f"s_m s_m' rule, degree {d}, m, m' <= {limit}", ok)
    w = sw_total(deg1[:limit], g)
    ok = all(sw_product_check(m, m2, w) for m in range(limit + 1) for m2 in range(limit + 1))
    res.add(f"w_m w_m' rule and trinomial form, m, m' <= {limit}", ok)
    # integer level: exactly one odd trinomial coefficient, at i = m + m' - (m|m')
    ok = True
    for m in range(integer_limit + 1):
        for m2 in range(integer_limit + 1):
            odd = [
                i
                for i in range(min(m, m2) + 1)
                if factorial(m + m2 - i) // (factorial(i) * factorial(m - i) * factorial(m2 - i)) % 2
            ]
            filtered = dyadic.odd_trinomial_indices(m, m2)
            ok = ok and odd == filtered == [m + m2 - dyadic.diminished_sum(m, m2)]
    res.add(f"trinomial parity filter, m, m' <= {integer_limit}", ok)
    return res


# -- Pfister forms


def pfister_expected(F, x, y):
    """(1+t)^2 (1 + (q-2) t + t^2) with q = <1,x,y,xy>."""
    q = gw_class(pfister2(F, x, y))
    inner = GWPolynomial(F, [1, q - 2, 1])
    return GWPolynomial.one_plus_t_power(F, 2) * inner


def pfister_fields():
    return [QuadClosed(), RealClosed(), FiniteField(3), FiniteField(5), FiniteField(7)]


def suite_pfister():
    res = SuiteResult("pfister")
    for F in pfister_fields():
        for x, y in product(F.class_reps(), repeat=2):
            ok = lambda_poly(pfister2(F, x, y)) == pfister_expected(F, x, y)
            res.add(f"lambda_t of <<{F.format(x)},{F.format(y)}>> over {F}", ok)
    alg = MilnorAlgebra(2)
    X, Y = alg.x(1), alg.x(2)
    w = sw_total([alg.zero, X, Y, X + Y], 2)
    res.add("w2 of <1,x,y,xy> = ex + ey + xy", w.w(2) == alg.e * X + alg.e * Y + X * Y)
    return res


# -- trace forms


def suite_trace():
    res = SuiteResult("trace")
    for p in (3, 5, 7):
        F = FiniteField(p)
        for x in range(1, p):
            q = trace_form(quadratic_algebra(F, x))
            ok = gw_class(q) == gw_class(DiagonalForm(F, (2, 2 * x)))
            res.add(f"F_{p}[X]/(X^2-{x}) ~ <2,{2 * x % p}>", ok, str(q))
        for x, y in product(F.class_reps(), repeat=2):
            q = trace_form(type_T_algebra(F, 0, [(x, y)]))
            res.add(f"biquadratic ({x},{y}) over F_{p}", gw_class(q) == gw_class(pfister2(F, x, y)), str(q))
        # adding a split factor adds <1>
        for n in range(1, 7):
            for ct, _ in enumerate_An_torsors(p, n):
                L = algebra_from_cycle_type(F, ct)
                lhs = trace_form(L + split_algebra(F, 1))
                rhs = trace_form(L) + ones(F, 1)
                res.add(f"L x k for {ct} over F_{p}", gw_class(lhs) == gw_class(rhs))
    return res


# -- groups


def suite_groups(enumerate_up_to=8):
    res = SuiteResult("groups")
    for n in range(4, 13, 2):
        D = build_D(n)
        res.add(f"(A_{n}:D) formula", D.formula_index == odd_double_factorial(n), str(D.formula_index))
        if n <= enumerate_up_to:
            order = D.group.order
            res.add(f"|D| enumerated n={n}", order == D.formula_order == centralizer_bruteforce(n, D.involution))
    for n in (6, 7, 10, 11):
        I = build_iota_prime(n)
        idx = I.index
        res.add(f"(A_{n}:S'_{n - 2}) = {n * (n - 1) // 2}, odd", idx == I.formula_index and idx % 2 == 1)
    E = build_E(10)
    expected = ["(1 2)(3 4)", "(1 3)(2 4)", "(5 6)(7 8)", "(5 7)(6 8)"]
    res.add("E for n=10", [str(g) for g in E.generators] == expected)
    I6 = build_iota_prime(6)
    diff = len(build_E(6).fixed_points()) - len(I6.c_prime.fixed_points())
    res.add("fixed points of E minus C' for n=6", diff == 2, str(diff))
    return res


# -- fixed modules


def suite_fixed():
    res = SuiteResult("fixed")
    alg = MilnorAlgebra(2)
    expected = [alg.one, alg.e * alg.x(1) + alg.e * alg.x(2) + alg.x(1) * alg.x(2)]
    for name, action in (("A3", a3_action()), ("S3", s3_action())):
        report = fixed_submodule_H(action, 8)
        res.add(f"H fixed module under {name}", report.generators == expected and report.spans_fixed_spaces())
    W = fixed_permutation_module_W(4, [[1, 3, 4, 2]], ["1", "a_x", "a_y", "a_xy"])
    res.add("W fixed module", W.formatted() == ["1", "a_x+a_y+a_xy"])
    for m in range(4):
        res.add(f"Pfister lambda expansion m={m}", verify_pfister_lambda_expansion(m))
        res.add(f"Pfister SW product m={m}", verify_pfister_sw_product(m))
    for m in range(5):
        res.add(f"unitriangular m={m}", is_unitriangular(triangular_expansion(m)))
    return res


# -- theorem 6 sweeps


def suite_theorem6(primes=(3, 5, 7), n_max=10, real_max=12):
    res = SuiteResult("theorem6")
    runs = [(f"sweep F_{p}, n <= {n_max}", p, n_max) for p in primes]
    runs.append((f"sweep real, n <= {real_max}", RealClosed(), real_max))
    for label, F, top in runs:
        try:
            rows = sweep_verify(F, top)
        except SweepFailure as exc:
            res.add(label, False, str(exc.row))
            continue
        res.add(label, True, f"{len(rows)} instances")
    return res


# -- torsor count


def suite_torsors(n_max=10):
    res = SuiteResult("torsors")
    for n in range(1, n_max + 1):
        rule = sum(c for _, c in enumerate_An_torsors(3, n))
        brute = class_count(n, alternating=True)
        res.add(f"A_{n} classes", rule == brute, f"{rule} vs {brute}")
    return res


# -- odd components vanish for trivial discriminant


def real_sw_class(q):
    """Total SW class of a form over a real closed field, in M(0) = F2[e]: (1+e)^(#negative)."""
    if not isinstance(q.field, RealClosed):
        raise TypeError("real closed field expected")
    alg = MilnorAlgebra(0)
    return sw_total([alg.e if a < 0 else alg.zero for a in q.entries], 0)


def suite_odd_vanishing(max_rank=10):
    res = SuiteResult("odd-vanishing")
    F = RealClosed()
    for n in range(max_rank + 1):
        for neg in range(n + 1):
            q = DiagonalForm(F, (1,) * (n - neg) + (-1,) * neg)
            if not q.has_trivial_disc():
                continue
            w = real_sw_class(q)
            ok = all(not w.w(i) for i in range(1, n + 1, 2))
            res.add(f"rank {n}, {neg} negative", ok, str(w))
    return res


SUITES = {
    "appendixA": suite_appendix_a,
    "product-rules": suite_product_rules,
    "pfister": suite_pfister,
    "trace": suite_trace,
    "groups": suite_groups,
    "fixed": suite_fixed,
    "theorem6": suite_theorem6,
    "torsors": suite_torsors,
    "odd-vanishing": suite_odd_vanishing,
}


def run_suite(name):
    if name == "all":
        return [fn() for fn in SUITES.values()]
    try:
        return [SUITES[name]()]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all") from None
