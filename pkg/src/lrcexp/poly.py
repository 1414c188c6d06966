"""Univariate polynomials over a finite field context.

Polynomials are lists of integer-encoded field elements, constant term
first, with no trailing zeros (``[]`` is the zero polynomial).  Every
function takes the field context explicitly.
"""

from __future__ import annotations

from typing import Iterator, Sequence

Poly = list


def trim(f: Sequence[int]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence[int]) -> int:
    """Degree of ``f``; -1 for the zero polynomial."""
    return len(trim(f)) - 1


def add(ctx, f: Sequence[int], g: Sequence[int]) -> Poly:
    n = max(len(f), len(g))
    out = [ctx.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)]
    return trim(out)


def neg(ctx, f: Sequence[int]) -> Poly:
    return [ctx.neg(c) for c in f]


def sub(ctx, f: Sequence[int], g: Sequence[int]) -> Poly:
    return add(ctx, f, neg(ctx, g))


def scale(ctx, c: int, f: Sequence[int]) -> Poly:
    if c == 0:
        return []
    return trim([ctx.mul(c, a) for a in f])


def mul(ctx, f: Sequence[int], g: Sequence[int]) -> Poly:
    f, g = trim(f), trim(g)
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return trim(out)


def divmod_(ctx, f: Sequence[int], g: Sequence[int]) -> tuple[Poly, Poly]:
    g = trim(g)
    if not g:
        from .errors import DivisionByZero

        raise DivisionByZero("polynomial division by zero")
    r = trim(f)
    dg = len(g) - 1
    lead_inv = ctx.inv(g[-1])
    if len(r) - 1 < dg:
        return [], r
    quo = [0] * (len(r) - dg)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = ctx.mul(r[-1], lead_inv)
        quo[shift] = c
        for i, b in enumerate(g):
            r[i + shift] = ctx.sub(r[i + shift], ctx.mul(c, b))
        r = trim(r)
    return trim(quo), r


def mod(ctx, f: Sequence[int], g: Sequence[int]) -> Poly:
    return divmod_(ctx, f, g)[1]


def monic(ctx, f: Sequence[int]) -> Poly:
    f = trim(f)
    if not f:
        return f
    return scale(ctx, ctx.inv(f[-1]), f)


def gcd(ctx, f: Sequence[int], g: Sequence[int]) -> Poly:
    a, b = trim(f), trim(g)
    while b:
        a, b = b, mod(ctx, a, b)
    return monic(ctx, a)


def powmod(ctx, f: Sequence[int], k: int, m: Sequence[int]) -> Poly:
    result: Poly = [1]
    base = mod(ctx, f, m)
    while k > 0:
        if k & 1:
            result = mod(ctx, mul(ctx, result, base), m)
        base = mod(ctx, mul(ctx, base, base), m)
        k >>= 1
    return mod(ctx, result, m)


def evaluate(ctx, f: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def taylor_shift(ctx, f: Sequence[int], a: int) -> Poly:
    """Coefficients of ``f(x + a)``."""
    out: Poly = []
    for c in reversed(trim(f)):
        # Horner with the linear polynomial (x + a)
        out = add(ctx, mul(ctx, out, [a, 1]), [c])
    return out


def is_irreducible(ctx, f: Sequence[int]) -> bool:
    """Ben-Or test: no factor of degree <= deg/2 divides ``f``."""
    f = trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = powmod(ctx, h, ctx.q, f)
        if degree(gcd(ctx, sub(ctx, h, x), f)) > 0:
            return False
    return True


def monic_of_degree(ctx, d: int) -> Iterator[Poly]:
    """All monic polynomials of degree ``d`` in ascending integer encoding."""
    q = ctx.q
    for code in range(q**d):
        coeffs = []
        for _ in range(d):
            code, c = divmod(code, q)
            coeffs.append(c)
        yield coeffs + [1]


def encode(ctx, f: Sequence[int]) -> int:
    return sum(c * ctx.q**i for i, c in enumerate(trim(f)))


def to_str(f: Sequence[int], var: str = "x") -> str:
    f = trim(f)
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)
