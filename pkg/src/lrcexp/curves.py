"""Function-field backends with a distinguished rational place at infinity.

Two backends are provided:

* ``RationalBackend`` -- the rational function field F_q(x), genus 0,
  local parameter ``t = 1/x`` at infinity.  Supports places of any degree.
* ``HermitianBackend`` -- the Hermitian curve ``y^q0 + y = x^(q0+1)`` over
  F_{q0^2}, genus ``q0(q0-1)/2``, local parameter ``t = x/y``.  Its
  Weierstrass semigroup at infinity is generated by ``q0`` and ``q0 + 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import poly
from .errors import (
    BadParams,
    Exhausted,
    NonRationalPlace,
    PlaceAtInfinity,
    PrecisionExhausted,
    UnsupportedBackend,
)
from .galois import FieldCtx
from .series import LaurentSeries, solve_fixed_point


@dataclass(frozen=True)
class Place:
    kind: str  # "infinity" | "affine" | "higher"
    coords: tuple[int, ...] = ()
    poly: tuple[int, ...] = ()

    @classmethod
    def infinity(cls) -> "Place":
        return cls("infinity")

    @classmethod
    def affine(cls, *coords: int) -> "Place":
        return cls("affine", tuple(coords))

    @classmethod
    def higher(cls, m: Sequence[int]) -> "Place":
        return cls("higher", poly=tuple(poly.trim(m)))

    @property
    def degree(self) -> int:
        return len(self.poly) - 1 if self.kind == "higher" else 1

    def literal(self) -> str:
        if self.kind == "infinity":
            return "inf"
        if self.kind == "higher":
            return "poly=" + ",".join(map(str, self.poly))
        if len(self.coords) == 1:
            return f"a={self.coords[0]}"
        return f"(a={self.coords[0]},b={self.coords[1]})"

    def __str__(self) -> str:
        return self.literal()


_HERM_RE = re.compile(r"^\(\s*a\s*=\s*(\d+)\s*,\s*b\s*=\s*(\d+)\s*\)$")


def parse_place(text: str) -> Place:
    """Parse ``inf``, ``a=<int>``, ``(a=<int>,b=<int>)`` or ``poly=<c0,c1,...>``."""
    s = text.strip()
    if s == "inf":
        return Place.infinity()
    m = _HERM_RE.match(s)
    if m:
        return Place.affine(int(m.group(1)), int(m.group(2)))
    if s.startswith("a="):
        return Place.affine(int(s[2:]))
    if s.startswith("poly="):
        return Place.higher([int(c) for c in s[5:].split(",")])
    raise BadParams(f"cannot parse place literal {text!r}")


@dataclass(frozen=True)
class CurveFunction:
    """Quotient ``num / den`` in the backend's canonical representation.

    Rational backend: ``num`` is a univariate coefficient tuple.
    Hermitian backend: ``num`` is a sorted tuple of ``((i, j), c)`` terms for
    ``c x^i y^j`` with ``j < q0``; ``den`` is univariate in x.
    """

    backend: str
    num: tuple
    den: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __str__(self) -> str:
        return self.label or f"({self.num})/({self.den})"


class CurveBackend:
    kind: str = ""
    genus: int = 0
    local_parameter: str = ""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx

    def rational_places(self) -> list[Place]:
        raise NotImplementedError

    def rr_basis_at_infinity(self) -> list[tuple[CurveFunction, int]]:
        raise NotImplementedError

    def auxiliary_function(self, P: Place) -> CurveFunction:
        raise NotImplementedError

    def higher_degree_block(self, Q: Place) -> list[CurveFunction]:
        raise UnsupportedBackend(f"{self.kind} backend has no higher-degree blocks")

    def expand_at_infinity(self, f: CurveFunction, out_prec: int) -> LaurentSeries:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind, "genus": self.genus}

    def _check_rational(self, P: Place) -> None:
        if P.kind == "infinity":
            raise PlaceAtInfinity("auxiliary functions need a finite place")
        if P.kind != "affine":
            raise NonRationalPlace(f"{P} is not a rational place")


class RationalBackend(CurveBackend):
    kind = "rational"
    genus = 0
    local_parameter = "1/x"

    def rational_places(self) -> list[Place]:
        return [Place.affine(a) for a in self.ctx.elements()] + [Place.infinity()]

    def rr_basis_at_infinity(self) -> list[tuple[CurveFunction, int]]:
        return []

    def function(self, num: Sequence[int], den: Sequence[int] = (1,), label: str = "") -> CurveFunction:
        num, den = poly.trim(num), poly.trim(den)
        if not den:
            raise BadParams("zero denominator")
        label = label or f"({poly.to_str(num)})/({poly.to_str(den)})"
        return CurveFunction(self.kind, tuple(num), tuple(den), label)

    def auxiliary_function(self, P: Place) -> CurveFunction:
        self._check_rational(P)
        (a,) = P.coords
        return self.function([1], [self.ctx.neg(a), 1], label=f"1/(x-{a})")

    def higher_degree_block(self, Q: Place) -> list[CurveFunction]:
        if Q.kind == "infinity":
            raise PlaceAtInfinity("blocks need a finite place")
        m = list(Q.poly) if Q.kind == "higher" else [self.ctx.neg(Q.coords[0]), 1]
        if not poly.is_irreducible(self.ctx, m) or m[-1] != 1:
            raise BadParams(f"{Q} is not given by a monic irreducible polynomial")
        mstr = poly.to_str(m)
        out = []
        for s in range(len(m) - 1):
            xs = [0] * s + [1]
            out.append(self.function(xs, m, label=f"{poly.to_str(xs)}/({mstr})"))
        return out

    def add(self, f: CurveFunction, h: CurveFunction) -> CurveFunction:
        c = self.ctx
        num = poly.add(c, poly.mul(c, f.num, h.den), poly.mul(c, h.num, f.den))
        return self.function(num, poly.mul(c, f.den, h.den))

    def mul(self, f: CurveFunction, h: CurveFunction) -> CurveFunction:
        c = self.ctx
        return self.function(poly.mul(c, f.num, h.num), poly.mul(c, f.den, h.den))

    def expand_at_infinity(self, f: CurveFunction, out_prec: int) -> LaurentSeries:
        """Expansion in ``t = 1/x``: ``f = t^(deg den - deg num) * rev(num)/rev(den)``."""
        num, den = list(f.num), list(f.den)
        if not num:
            return LaurentSeries.zero(self.ctx, out_prec)
        lead = len(den) - len(num)
        return _ratio_series(self.ctx, num[::-1], den[::-1], lead, out_prec)

    def expand_at_affine(self, f: CurveFunction, a: int, out_prec: int) -> LaurentSeries:
        """Expansion at the rational place ``x = a`` in the local parameter ``x - a``."""
        c = self.ctx
        num = poly.taylor_shift(c, f.num, a)
        den = poly.taylor_shift(c, f.den, a)
        if not num:
            return LaurentSeries.zero(c, out_prec)
        jn = next(i for i, x in enumerate(num) if x)
        jd = next(i for i, x in enumerate(den) if x)
        return _ratio_series(c, num[jn:], den[jd:], jn - jd, out_prec)


def _ratio_series(ctx, num: list[int], den: list[int], lead: int, out_prec: int) -> LaurentSeries:
    """``t^lead * num(t)/den(t)`` for exact polynomials with ``den(0) != 0``."""
    length = out_prec - lead
    if length <= 0:
        return LaurentSeries.zero(ctx, out_prec)
    n = LaurentSeries.make(ctx, 0, num, length)
    d = LaurentSeries.make(ctx, 0, den, length)
    return (n * d.inv(length)).shift(lead).truncate(out_prec)


class HermitianBackend(CurveBackend):
    kind = "hermitian"
    local_parameter = "x/y"

    def __init__(self, ctx: FieldCtx, q0: int):
        if ctx.q != q0 * q0:
            raise BadParams(f"Hermitian curve with q0={q0} needs a field of order {q0 * q0}, got {ctx.q}")
        super().__init__(ctx)
        self.q0 = q0
        self.genus = q0 * (q0 - 1) // 2

    def describe(self) -> dict:
        return {"kind": self.kind, "genus": self.genus, "q0": self.q0}

    # function arithmetic -------------------------------------------------

    def _reduce(self, terms: dict) -> tuple:
        """Rewrite ``y^q0`` as ``x^(q0+1) - y`` until every y-degree is < q0."""
        c, q0 = self.ctx, self.q0
        work = dict(terms)
        out: dict = {}
        while work:
            (i, j), a = work.popitem()
            if a == 0:
                continue
            if j < q0:
                out[(i, j)] = c.add(out.get((i, j), 0), a)
                continue
            for key, coef in (((i + q0 + 1, j - q0), a), ((i, j - q0 + 1), c.neg(a))):
                work[key] = c.add(work.get(key, 0), coef)
        return tuple(sorted((k, v) for k, v in out.items() if v))

    def function(self, terms: dict, den: Sequence[int] = (1,), label: str = "") -> CurveFunction:
        den = poly.trim(den)
        if not den:
            raise BadParams("zero denominator")
        return CurveFunction(self.kind, self._reduce(terms), tuple(den), label or f"{terms}/{den}")

    def coordinate(self, name: str) -> CurveFunction:
        key = (1, 0) if name == "x" else (0, 1)
        return self.function({key: 1}, label=name)

    def constant(self, a: int) -> CurveFunction:
        return self.function({(0, 0): a}, label=str(a))

    def add(self, f: CurveFunction, h: CurveFunction) -> CurveFunction:
        c = self.ctx
        terms: dict = {}
        for num, den in ((f.num, h.den), (h.num, f.den)):
            for (i, j), a in num:
                for k, d in enumerate(den):
                    if d:
                        terms[(i + k, j)] = c.add(terms.get((i + k, j), 0), c.mul(a, d))
        return self.function(terms, poly.mul(c, f.den, h.den))

    def mul(self, f: CurveFunction, h: CurveFunction) -> CurveFunction:
        c = self.ctx
        terms: dict = {}
        for (i1, j1), a in f.num:
            for (i2, j2), b in h.num:
                key = (i1 + i2, j1 + j2)
                terms[key] = c.add(terms.get(key, 0), c.mul(a, b))
        return self.function(terms, poly.mul(c, f.den, h.den))

    # places and bases ----------------------------------------------------

    def fiber(self, a: int) -> list[int]:
        """All b with ``b^q0 + b = a^(q0+1)``, in encoding order."""
        c, q0 = self.ctx, self.q0
        rhs = c.pow(a, q0 + 1)
        return [b for b in c.elements() if c.add(c.pow(b, q0), b) == rhs]

    def rational_places(self) -> list[Place]:
        out = [Place.affine(a, b) for a in self.ctx.elements() for b in self.fiber(a)]
        return out + [Place.infinity()]

    def pole_number(self, i: int, j: int) -> int:
        return i * self.q0 + j * (self.q0 + 1)

    def rr_basis_at_infinity(self) -> list[tuple[CurveFunction, int]]:
        bound = 2 * self.genus - 1
        monos = [
            (self.pole_number(i, j), i, j)
            for j in range(self.q0)
            for i in range(bound // self.q0 + 1)
            if self.pole_number(i, j) <= bound
        ]
        out = []
        for n, i, j in sorted(monos):
            out.append((self.function({(i, j): 1}, label=_mono_label(i, j)), n))
        return out

    def auxiliary_function(self, P: Place) -> CurveFunction:
        """``prod_{b' != b} (y - b') / (x - a)``: simple pole at (a, b), pole 2g-1 at infinity."""
        self._check_rational(P)
        c = self.ctx
        a, b = P.coords
        others = [bk for bk in self.fiber(a) if bk != b]
        if len(others) != self.q0 - 1:
            raise NonRationalPlace(f"{P} is not on the curve")
        ypoly = [1]
        for bk in others:
            ypoly = poly.mul(c, ypoly, [c.neg(bk), 1])
        terms = {(0, j): coef for j, coef in enumerate(ypoly) if coef}
        label = "".join(f"(y-{bk})" for bk in others) or "1"
        return self.function(terms, [c.neg(a), 1], label=f"{label}/(x-{a})")

    def numerator_at(self, f: CurveFunction, P: Place) -> int:
        c = self.ctx
        a, b = P.coords
        acc = 0
        for (i, j), coef in f.num:
            acc = c.add(acc, c.mul(coef, c.mul(c.pow(a, i), c.pow(b, j))))
        return acc

    # expansions ---------------------------------------------------------

    @lru_cache(maxsize=None)
    def unit(self, prec: int) -> LaurentSeries:
        """The unit ``u`` with ``x = t^-q0 u`` and ``y = t^-(q0+1) u``.

        It solves ``u = 1 + t^(q0^2 - 1) u^(1 - q0)``.
        """
        c, q0 = self.ctx, self.q0
        one = LaurentSeries.constant(c, 1, prec)

        def step(u: LaurentSeries) -> LaurentSeries:
            return one + (u.inv(prec) ** (q0 - 1)).shift(q0 * q0 - 1)

        return solve_fixed_point(step, one, prec)

    def expand_at_infinity(self, f: CurveFunction, out_prec: int) -> LaurentSeries:
        c, q0 = self.ctx, self.q0
        if not f.num:
            return LaurentSeries.zero(c, out_prec)
        max_pole = max(self.pole_number(i, j) for (i, j), _ in f.num)
        deg_den = len(f.den) - 1
        rel = max(1, out_prec + max_pole - q0 * deg_den)
        u = self.unit(rel)
        xs, ys = u.shift(-q0), u.shift(-(q0 + 1))
        xpow = _power_cache(xs, c, rel)
        ypow = _power_cache(ys, c, rel)
        num = None
        for (i, j), coef in f.num:
            term = (xpow(i) * ypow(j)).scale(coef)
            num = term if num is None else num + term
        den = None
        for k, d in enumerate(f.den):
            if d:
                term = xpow(k).scale(d)
                den = term if den is None else den + term
        out = num * den.inv()
        if out.prec < out_prec:
            raise PrecisionExhausted(f"expansion reached t^{out.prec}, needed t^{out_prec}")
        return out.truncate(out_prec)


def _power_cache(s: LaurentSeries, ctx, rel: int):
    cache = {0: LaurentSeries.constant(ctx, 1, rel), 1: s}

    def get(k: int) -> LaurentSeries:
        if k not in cache:
            cache[k] = get(k - 1) * s
        return cache[k]

    return get


def _mono_label(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts) or "1"


# module-level operations -------------------------------------------------


def rational_places(backend: CurveBackend) -> list[Place]:
    return backend.rational_places()


def rr_basis_at_infinity(backend: CurveBackend) -> list[tuple[CurveFunction, int]]:
    return backend.rr_basis_at_infinity()


def auxiliary_function(backend: CurveBackend, P: Place) -> CurveFunction:
    return backend.auxiliary_function(P)


def higher_degree_block(backend: CurveBackend, Q: Place) -> list[CurveFunction]:
    return backend.higher_degree_block(Q)


def expand_at_infinity(backend: CurveBackend, f: CurveFunction, out_prec: int) -> LaurentSeries:
    return backend.expand_at_infinity(f, out_prec)


def irreducibles_of_degree(ctx: FieldCtx, d: int, count: int | None = None) -> list[list[int]]:
    """The ``count`` smallest monic irreducibles of degree d (all of them if count is None).

    Raises:
        Exhausted: fewer than ``count`` exist.
    """
    if d < 1:
        raise BadParams("degree must be >= 1")
    out = []
    for f in poly.monic_of_degree(ctx, d):
        if poly.is_irreducible(ctx, f):
            out.append(f)
            if count is not None and len(out) == count:
                return out
    if count is not None:
        raise Exhausted(f"only {len(out)} monic irreducibles of degree {d} over F_{ctx.q}")
    return out


def make_backend(ctx: FieldCtx, kind: str = "rational", q0: int | None = None) -> CurveBackend:
    if kind == "rational":
        return RationalBackend(ctx)
    if kind == "hermitian":
        if q0 is None:
            from .galois import prime_power

            pk = prime_power(ctx.q)
            if pk is None or pk[1] % 2:
                raise BadParams(f"field order {ctx.q} is not a square")
            q0 = pk[0] ** (pk[1] // 2)
        return HermitianBackend(ctx, q0)
    raise BadParams(f"unknown backend {kind!r}")
