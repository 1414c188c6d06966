"""Exact arithmetic in F_p and F_{p^k}.

Elements are handled internally as integer encodings: the coefficient
vector ``(c_0, ..., c_{k-1})`` of ``c_0 + c_1 z + ...`` maps to
``sum(c_i * p**i)``.  This is also the encoding used by every export.
:class:`FieldElement` is the explicit coefficient-vector form for callers
that want it; it carries no reference to its context.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import poly
from .errors import (
    BadParams,
    ContextMismatch,
    DegreeMismatch,
    DivisionByZero,
    NotPrime,
    ReducibleModulus,
)

_ADD_TABLE_LIMIT = 729


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None when q is not a prime power."""
    if q < 2:
        return None
    p = prime_factors(q)
    if len(p) != 1:
        return None
    k, n = 0, q
    while n > 1:
        n //= p[0]
        k += 1
    return p[0], k


@dataclass(frozen=True)
class FieldElement:
    """Coefficient vector of length ext_deg, constant term first."""

    coeffs: tuple[int, ...]

    def __str__(self) -> str:
        return poly.to_str(self.coeffs, "z")


@dataclass(frozen=True)
class FieldCtx:
    p: int
    ext_deg: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.ext_deg

    def __repr__(self) -> str:
        if self.ext_deg == 1:
            return f"F_{self.p}"
        return f"F_{self.q}[{poly.to_str(self.modulus, 'z')}]"

    # encodings ---------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.ext_deg):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        acc = 0
        for d in reversed(ds):
            acc = acc * self.p + d
        return acc

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.q):
            raise ContextMismatch(f"{a!r} is not an element encoding of {self!r}")
        return a

    def element(self, a: int) -> FieldElement:
        return FieldElement(tuple(self.digits(self.check(a))))

    def encode(self, x: FieldElement) -> int:
        if len(x.coeffs) != self.ext_deg or any(not 0 <= c < self.p for c in x.coeffs):
            raise ContextMismatch(f"{x!r} does not belong to {self!r}")
        return self.from_digits(x.coeffs)

    def elements(self) -> range:
        return range(self.q)

    # arithmetic on encodings ------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.ext_deg == 1:
            s = a + b
            return s - self.p if s >= self.p else s
        if self.p == 2:
            return a ^ b
        table = self._add_table
        if table is not None:
            return table[a * self.q + b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.ext_deg == 1:
            return (self.p - a) % self.p
        if self.p == 2:
            return a
        return self.from_digits([(-d) % self.p for d in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.ext_deg == 1:
            return a * b % self.p
        exp, log = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.ext_deg == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if n == 0 else 0
        if self.ext_deg == 1:
            return pow(a, n % (self.p - 1), self.p)
        exp, log = self._tables
        return exp[(log[a] * n) % (self.q - 1)]

    # internals ----------------------------------------------------------

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * scale
            scale *= p
        return out

    @cached_property
    def _add_table(self) -> list[int] | None:
        q = self.q
        if q > _ADD_TABLE_LIMIT:
            return None
        return [self._add_digits(a, b) for a in range(q) for b in range(q)]

    def _mul_slow(self, a: int, b: int) -> int:
        fp = _prime_ctx(self.p)
        prod = poly.mul(fp, self.digits(a), self.digits(b))
        return self.from_digits(poly.mod(fp, prod, self.modulus) + [0] * self.ext_deg)

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        q = self.q
        factors = prime_factors(q - 1)
        gen = None
        for cand in range(2, q):
            if all(self._pow_slow(cand, (q - 1) // f) != 1 for f in factors):
                gen = cand
                break
        if gen is None:  # pragma: no cover - a finite field always has one
            raise ReducibleModulus(f"no primitive element in {self!r}")
        # powers g^0 .. g^(2^j - 1) times g^(2^j) give the next 2^j powers; multiplying
        # by a fixed element is an F_p-linear map on digit vectors, so each round is one matmul
        k, p = self.ext_deg, self.p
        weights = np.array([p**i for i in range(k)], dtype=np.int64)
        powers = np.ones(1, dtype=np.int64)
        step = gen
        while len(powers) < q - 1:
            rows = np.array([self.digits(self._mul_slow(p**i, step)) for i in range(k)], dtype=np.int64)
            digits = (powers[:, None] // weights) % p
            nxt = (digits @ rows) % p
            powers = np.concatenate([powers, nxt @ weights])
            step = self._mul_slow(step, step)
        powers = powers[: q - 1]
        log_arr = np.zeros(q, dtype=np.int64)
        log_arr[powers] = np.arange(q - 1)
        exp = powers.tolist() * 2
        return exp, log_arr.tolist()

    def _pow_slow(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            n >>= 1
        return result


_PRIME_CTX: dict[int, FieldCtx] = {}


def _prime_ctx(p: int) -> FieldCtx:
    ctx = _PRIME_CTX.get(p)
    if ctx is None:
        ctx = _PRIME_CTX[p] = FieldCtx(p, 1, (0, 1))
    return ctx


def make_field(p: int, ext_deg: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Build F_{p^ext_deg}.

    Without an explicit modulus the lexicographically smallest monic
    irreducible polynomial (ascending integer encoding) is used.

    Raises:
        NotPrime: p is not prime.
        DegreeMismatch: ext_deg < 1 or the modulus has the wrong degree.
        ReducibleModulus: the modulus factors over F_p.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if ext_deg < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {ext_deg}")
    fp = _prime_ctx(p)
    if ext_deg == 1:
        return fp
    if modulus is None:
        for cand in poly.monic_of_degree(fp, ext_deg):
            if poly.is_irreducible(fp, cand):
                return FieldCtx(p, ext_deg, tuple(cand))
        raise ReducibleModulus("no irreducible polynomial found")  # pragma: no cover
    mod = poly.trim(c % p for c in modulus)
    if len(mod) - 1 != ext_deg:
        raise DegreeMismatch(f"modulus degree {len(mod) - 1} != extension degree {ext_deg}")
    if mod[-1] != 1:
        raise BadParams("modulus must be monic")
    if not poly.is_irreducible(fp, mod):
        raise ReducibleModulus(f"{poly.to_str(mod)} is reducible over F_{p}")
    return FieldCtx(p, ext_deg, tuple(mod))


def field_of_order(q: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    pk = prime_power(q)
    if pk is None:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(pk[0], pk[1], modulus)


_OPS = {"add": 2, "sub": 2, "mul": 2, "div": 2, "inv": 1, "neg": 1}


def arith(ctx: FieldCtx, op: str, *operands):
    """Apply ``op`` to FieldElement operands and return a FieldElement.

    ``pow`` takes ``(element, integer exponent)``.
    """
    if op == "pow":
        x, n = operands
        return ctx.element(ctx.pow(ctx.encode(x), n))
    if op not in _OPS or len(operands) != _OPS[op]:
        raise BadParams(f"unknown operation or arity: {op}/{len(operands)}")
    args = [ctx.encode(x) for x in operands]
    return ctx.element(getattr(ctx, op)(*args))


def enumerate_elements(ctx: FieldCtx) -> list[FieldElement]:
    return [ctx.element(a) for a in ctx.elements()]
