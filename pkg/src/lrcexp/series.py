"""Truncated Laurent series over F_q in a local parameter t.

A series ``sum a_i t^i`` is stored by its starting exponent ``v``, the
coefficients for exponents ``v .. prec-1`` and the precision ``prec``:
nothing is known about exponents ``>= prec``.  Precision is tracked
pessimistically, so every stored coefficient is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ContextMismatch, NoContraction, NotInvertible
from .galois import FieldCtx


@dataclass(frozen=True)
class LaurentSeries:
    ctx: FieldCtx
    v: int
    coeffs: tuple[int, ...]

    @property
    def prec(self) -> int:
        return self.v + len(self.coeffs)

    # constructors ---------------------------------------------------------

    @classmethod
    def make(cls, ctx: FieldCtx, v: int, coeffs: Sequence[int], prec: int | None = None) -> "LaurentSeries":
        """Canonical series from coefficients starting at exponent ``v``.

        ``prec`` truncates (or, for exact polynomial data, zero-extends) the window.
        """
        coeffs = list(coeffs)
        if prec is not None:
            want = prec - v
            if want < 0:
                return cls(ctx, prec, ())
            coeffs = coeffs[:want] + [0] * (want - len(coeffs))
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        return cls(ctx, v + k, tuple(coeffs[k:]))

    @classmethod
    def zero(cls, ctx: FieldCtx, prec: int) -> "LaurentSeries":
        return cls(ctx, prec, ())

    @classmethod
    def constant(cls, ctx: FieldCtx, c: int, prec: int) -> "LaurentSeries":
        return cls.make(ctx, 0, [c], prec)

    @classmethod
    def monomial(cls, ctx: FieldCtx, c: int, k: int, prec: int) -> "LaurentSeries":
        return cls.make(ctx, k, [c], prec)

    # queries ----------------------------------------------------------------

    @property
    def is_zero_window(self) -> bool:
        return not self.coeffs

    def valuation(self) -> float:
        """Index of the first nonzero coefficient; ``inf`` for a zero window.

        An infinite answer only means "zero up to ``prec``".
        """
        return math.inf if not self.coeffs else self.v

    def coefficient(self, i: int) -> int:
        if i >= self.prec:
            raise IndexError(f"coefficient {i} lies beyond precision {self.prec}")
        if i < self.v:
            return 0
        return self.coeffs[i - self.v]

    def window(self, start: int, stop: int) -> list[int]:
        return [self.coefficient(i) for i in range(start, stop)]

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        return LaurentSeries.make(self.ctx, self.v, self.coeffs, prec)

    def dump(self) -> str:
        """Debug form ``v;prec;c0,c1,...``."""
        return f"{self.v};{self.prec};{','.join(map(str, self.coeffs))}"

    @classmethod
    def load(cls, ctx: FieldCtx, text: str) -> "LaurentSeries":
        v, prec, body = text.split(";")
        coeffs = [int(c) for c in body.split(",")] if body else []
        return cls.make(ctx, int(v), coeffs, int(prec))

    # arithmetic ---------------------------------------------------------------

    def _same(self, other: "LaurentSeries") -> None:
        if other.ctx != self.ctx:
            raise ContextMismatch("series over different fields")

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._same(other)
        ctx = self.ctx
        prec = min(self.prec, other.prec)
        lo = min(self.v, other.v, prec)
        out = [0] * (prec - lo)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.v + i
                if e >= prec:
                    break
                if c:
                    out[e - lo] = ctx.add(out[e - lo], c)
        return LaurentSeries.make(ctx, lo, out)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.ctx, self.v, tuple(self.ctx.neg(c) for c in self.coeffs))

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._same(other)
        ctx = self.ctx
        v = self.v + other.v
        prec = min(self.prec + other.v, other.prec + self.v)
        n = prec - v
        if n <= 0 or self.is_zero_window or other.is_zero_window:
            return LaurentSeries.zero(ctx, prec)
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        for i in range(min(n, len(a))):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(n - i, len(b))):
                bj = b[j]
                if bj:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj))
        return LaurentSeries.make(ctx, v, out)

    def scale(self, c: int) -> "LaurentSeries":
        if c == 0:
            return LaurentSeries.zero(self.ctx, self.prec)
        return LaurentSeries(self.ctx, self.v, tuple(self.ctx.mul(c, x) for x in self.coeffs))

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``t**k``."""
        return LaurentSeries(self.ctx, self.v + k, self.coeffs)

    def inv(self, out_prec: int | None = None) -> "LaurentSeries":
        return series_inv(self, out_prec)

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            return series_inv(self) ** (-n)
        result = LaurentSeries.constant(self.ctx, 1, self.prec - self.v)
        base = self
        first = True
        while n:
            if n & 1:
                result = base if first else result * base
                first = False
            n >>= 1
            if n:
                base = base * base
        return result


def series_arith(op: str, a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series operation {op!r}")


def series_inv(a: LaurentSeries, out_prec: int | None = None) -> LaurentSeries:
    """Inverse of a series with a known nonzero leading coefficient.

    The result has the same relative precision as ``a`` (capped at
    ``out_prec`` when given) and starts at exponent ``-valuation(a)``.
    """
    if a.is_zero_window:
        raise NotInvertible("leading coefficient unknown or zero")
    ctx = a.ctx
    rel = len(a.coeffs)
    if out_prec is not None:
        rel = min(rel, out_prec + a.v)
    if rel <= 0:
        return LaurentSeries.zero(ctx, -a.v + rel)
    c = a.coeffs
    c0inv = ctx.inv(c[0])
    out = [0] * rel
    out[0] = c0inv
    for k in range(1, rel):
        acc = 0
        for j in range(1, min(k, len(c) - 1) + 1):
            if c[j] and out[k - j]:
                acc = ctx.add(acc, ctx.mul(c[j], out[k - j]))
        out[k] = ctx.neg(ctx.mul(acc, c0inv))
    return LaurentSeries.make(ctx, -a.v, out)


def valuation(a: LaurentSeries) -> float:
    return a.valuation()


def solve_fixed_point(
    fmap: Callable[[LaurentSeries], LaurentSeries], seed: LaurentSeries, out_prec: int
) -> LaurentSeries:
    """Iterate a t-adic contraction until successive iterates agree below ``out_prec``.

    Raises:
        NoContraction: the agreement precision failed to grow between two
            iterations, or the iteration cap ``4 * out_prec`` was hit.
    """
    u = seed.truncate(out_prec)
    agreement = -math.inf
    for _ in range(max(4 * out_prec, 4)):
        nxt = fmap(u).truncate(out_prec)
        diff = nxt - u
        if diff.is_zero_window and diff.prec >= out_prec:
            return nxt
        level = diff.valuation() if not diff.is_zero_window else diff.prec
        if level <= agreement:
            raise NoContraction(f"agreement stalled at t^{level}")
        agreement = level
        u = nxt
    raise NoContraction(f"no convergence to precision {out_prec}")
