"""Integer relations among exterior powers of A_n trace forms, and sweeps checking them.

For a trace form q of an A_n-torsor, lambda_t(q) = (1+t)^N P(t) with
N = 2m + c (n = 4m + c, 0 <= c <= 3) and P palindromic of degree 2m.  So
lambda^0..lambda^m determine every lambda^j; ``compute_z_table`` gives the
integer coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from .dyadic import signed_binomial
from .etale import algebra_from_cycle_type, enumerate_An_torsors, real_algebra, trace_form, type_T_algebra
from .fields import FiniteField, QuadClosed, RealClosed, field_make
from .witt import GWClass, divisible_by_one_plus_t, lambda_power


@dataclass(frozen=True)
class RelationTable:
    n: int
    m: int
    c: int
    z: tuple  # z[j][i]: lambda^j = sum_i z[j][i] lambda^i, i <= m

    @property
    def N(self):
        return 2 * self.m + self.c

    def row_text(self, j):
        return f"lambda{j} = {format_combination(self.z[j])}"

    def rows_text(self):
        return [self.row_text(j) for j in range(self.n + 1)]

    def to_json(self):
        return {"n": self.n, "m": self.m, "c": self.c, "z": [list(r) for r in self.z], "rows": self.rows_text()}


def format_combination(row):
    """``(-14, 5)`` -> ``"5*lambda1 - 14"``; lambda0 = 1 is printed as a constant."""
    terms = []
    for i in range(len(row) - 1, -1, -1):
        a = row[i]
        if a == 0:
            continue
        if i == 0:
            body = str(abs(a))
        else:
            body = f"lambda{i}" if abs(a) == 1 else f"{abs(a)}*lambda{i}"
        terms.append(("-" if a < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def compute_z_table(n: int) -> RelationTable:
    if not 1 <= n <= 64:
        raise ValueError("n must lie in 1..64")
    m, c = n // 4, n % 4
    N = 2 * m + c
    # p_i in terms of lambda^0..lambda^m, from P(t) = (1+t)^(-N) lambda_t
    p = []
    for i in range(m + 1):
        p.append([signed_binomial(-N, i - j) if j <= i else 0 for j in range(m + 1)])
    zero = [0] * (m + 1)
    p_all = [p[i] if i <= m else p[2 * m - i] for i in range(2 * m + 1)]
    z = []
    for j in range(n + 1):
        row = list(zero)
        for i in range(min(j, 2 * m) + 1):
            b = comb(N, j - i)
            if b:
                row = [r + b * v for r, v in zip(row, p_all[i])]
        z.append(tuple(row))
    return RelationTable(n, m, c, tuple(z))


def lambda_powers(q):
    return [lambda_power(q, i) for i in range(q.rank + 1)]


def _check_trivial_disc(q):
    if not q.has_trivial_disc():
        raise ValueError(f"{q} does not have trivial discriminant")


def taylor_sums(lams, N):
    """sum_{i>=j} (-1)^i C(i, j) lambda^i for j < N."""
    F = lams[0].field
    out = []
    for j in range(N):
        acc = GWClass.from_int(F, 0)
        for i in range(j, len(lams)):
            acc = acc + lams[i] * ((-1) ** i * comb(i, j))
        out.append(acc)
    return out


def taylor_vanishing_check(q, n: int) -> int:
    if q.rank != n:
        raise ValueError(f"form has rank {q.rank}, expected {n}")
    _check_trivial_disc(q)
    N = 2 * (n // 4) + n % 4
    return int(all(s.is_zero() for s in taylor_sums(lambda_powers(q), N)))


def relations_hold(lams, table: RelationTable) -> bool:
    F = lams[0].field
    for j, row in enumerate(table.z):
        rhs = GWClass.from_int(F, 0)
        for i, a in enumerate(row):
            if a:
                rhs = rhs + lams[i] * a
        if rhs != lams[j]:
            return False
    return True


class SweepFailure(AssertionError):
    def __init__(self, row):
        super().__init__(f"check failed for {row}")
        self.row = row


def check_form(q, n, table=None):
    """Run the three checks on one trace form; returns a dict of booleans."""
    from .witt import lambda_poly

    _check_trivial_disc(q)
    table = table or compute_z_table(n)
    lams = lambda_powers(q)
    poly = lambda_poly(q)
    N = table.N
    return {
        "divisible": bool(divisible_by_one_plus_t(poly, N)),
        "taylor": all(s.is_zero() for s in taylor_sums(lams, N)),
        "relations": relations_hold(lams, table),
    }


def _instances(F, n_max):
    """(n, family, label, split_count, algebra) in sweep order."""
    if isinstance(F, FiniteField):
        for n in range(1, n_max + 1):
            for ct, split in enumerate_An_torsors(F.p, n):
                yield n, "torsor", "{" + ",".join(map(str, ct)) + "}", split, algebra_from_cycle_type(F, ct)
            pairs = [(x, y) for x in F.class_reps() for y in F.class_reps()]
            for b in range(1, n // 4 + 1):
                for chosen in combinations_with_replacement(pairs, b):
                    label = f"T(c={n - 4 * b};" + ";".join(f"{F.format(x)},{F.format(y)}" for x, y in chosen) + ")"
                    yield n, "typeT", label, None, type_T_algebra(F, n - 4 * b, list(chosen))
    elif isinstance(F, RealClosed):
        for n in range(1, n_max + 1):
            for b in range(0, n // 2 + 1, 2):
                yield n, "real", f"R^{n - 2 * b} x C^{b}", None, real_algebra(n - 2 * b, b, F)
    elif isinstance(F, QuadClosed):
        from .etale import split_algebra

        for n in range(1, n_max + 1):
            yield n, "split", f"k^{n}", None, split_algebra(F, n)
    else:
        raise TypeError(f"unsupported field {F!r}")


def sweep_verify(field, n_max: int) -> list:
    """Check every A_n trace form of the sweep family for n <= n_max.

    ``field`` is a field object, a descriptor such as ``"f:5"``, or an odd
    prime.  Returns one row per instance ordered by (n, family, label); raises
    ``SweepFailure`` at the first instance failing a check.
    """
    if isinstance(field, int):
        field = FiniteField(field)
    elif isinstance(field, str):
        field = field_make(field)
    if not 1 <= n_max <= 12:
        raise ValueError("n_max must lie in 1..12")
    rows = []
    tables = {}
    for n, family, label, split, L in _instances(field, n_max):
        table = tables.setdefault(n, compute_z_table(n))
        q = trace_form(L)
        checks = check_form(q, n, table)
        row = {
            "field": str(field),
            "n": n,
            "family": family,
            "instance": label,
            "split_count": split,
            "trace_form": str(q),
            **checks,
        }
        if not all(checks.values()):
            raise SweepFailure(row)
        rows.append(row)
    return rows
