"""Dense univariate polynomials over a field object.

A polynomial is a tuple of field elements, constant term first, with no
trailing zeros.  The zero polynomial is ``()``.  Field arithmetic is
delegated to the descriptor ``F`` (``F.add``, ``F.mul``, ...).
"""


def trim(F, coeffs):
    coeffs = list(coeffs)
    while coeffs and F.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def degree(f):
    return len(f) - 1


def add(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero
        b = g[i] if i < len(g) else F.zero
        out.append(F.add(a, b))
    return trim(F, out)


def neg(F, f):
    return tuple(F.neg(a) for a in f)


def sub(F, f, g):
    return add(F, f, neg(F, g))


def scale(F, c, f):
    return trim(F, (F.mul(c, a) for a in f))


def mul(F, f, g):
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = F.inv(g[-1])
    rem = list(f)
    quot = [F.zero] * max(len(f) - len(g) + 1, 0)
    for shift in range(len(f) - len(g), -1, -1):
        c = F.mul(rem[shift + len(g) - 1], lead_inv)
        quot[shift] = c
        if F.is_zero(c):
            continue
        for i, b in enumerate(g):
            rem[shift + i] = F.sub(rem[shift + i], F.mul(c, b))
    return trim(F, quot), trim(F, rem[: len(g) - 1])


def mod(F, f, g):
    return divmod_(F, f, g)[1]


def monic(F, f):
    if not f:
        return f
    return scale(F, F.inv(f[-1]), f)


def gcd(F, f, g):
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def powmod(F, f, k, modulus):
    result = (F.one,)
    base = mod(F, f, modulus)
    while k:
        if k & 1:
            result = mod(F, mul(F, result, base), modulus)
        base = mod(F, mul(F, base, base), modulus)
        k >>= 1
    return result


def derivative(F, f):
    return trim(F, (F.mul(F.from_int(i), a) for i, a in enumerate(f) if i))


def is_one(F, f):
    return len(f) == 1 and F.eq(f[0], F.one)


def x_poly(F):
    return (F.zero, F.one)


def is_irreducible(F, f, q):
    """Ben-Or test over a finite field with q elements."""
    d = degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    f = monic(F, f)
    x = x_poly(F)
    power = x
    for _ in range(d // 2):
        power = powmod(F, power, q, f)
        if not is_one(F, gcd(F, sub(F, power, x), f)):
            return False
    return True


def is_separable(F, f):
    return is_one(F, gcd(F, f, derivative(F, f)))


def evaluate(F, f, x):
    acc = F.zero
    for a in reversed(f):
        acc = F.add(F.mul(acc, x), a)
    return acc
