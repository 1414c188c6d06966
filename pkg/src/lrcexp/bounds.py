"""Asymptotic rate bounds for locally repairable codes.

Affine bounds are evaluated in exact rational arithmetic (``Fraction``);
floats appear only in the entropy-based bounds and their optimizers.  A
float ``delta`` passed to an exact bound is read through its shortest
decimal representation, so ``0.3`` means ``3/10``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable

import numpy as np

from .errors import BadParams, DomainError, NoEvenDivisor, NotASquare, NotOddPower
from .galois import prime_power

Number = int | float | Fraction

GRID_POINTS = 10_000
OPT_TOL = 1e-9
_GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class Inapplicable:
    """Tagged absence: the bound's precondition fails for these parameters."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass
class BoundCurve:
    bound_id: str
    params: dict
    samples: list[tuple[Fraction | float, Fraction | float]] = field(default_factory=list)
    exact: bool = True
    raw: list = field(default_factory=list)


def as_fraction(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(repr(float(x)))


def _clamp(x: Fraction, clamp: bool) -> Fraction:
    return max(x, Fraction(0)) if clamp else x


def square_root(q: int) -> int:
    s = isqrt(q)
    if s * s != q:
        raise NotASquare(f"{q} is not a perfect square")
    return s


def _check_delta(delta: Number, hi: Number = 1) -> None:
    if not 0 <= delta <= hi:
        raise DomainError(f"delta={delta} outside [0, {hi}]")


# entropy-based bounds ------------------------------------------------------


def entropy_q(q: int, x: float) -> float:
    """q-ary entropy, with ``0 log 0 = 0``."""
    if not 0 <= x <= 1:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    out = x * math.log(q - 1) if x > 0 else 0.0
    if 0 < x:
        out -= x * math.log(x)
    if x < 1:
        out -= (1 - x) * math.log1p(-x)
    return out / math.log(q)


def _entropy_vec(q: int, x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = np.where(x > 0, x * (math.log(q - 1) - np.log(np.where(x > 0, x, 1.0))), 0.0)
        t2 = np.where(x < 1, -(1 - x) * np.log1p(-np.where(x < 1, x, 0.0)), 0.0)
    return (t1 + t2) / math.log(q)


def lp_inner(q: int, x: np.ndarray | float) -> np.ndarray:
    """``f_q(x) = H_q((q-1-x(q-2)-2 sqrt((q-1)x(1-x)))/q)``, zero for ``x >= 1 - 1/q``."""
    x = np.asarray(x, dtype=float)
    xc = np.clip(x, 0.0, 1.0)
    arg = (q - 1 - xc * (q - 2) - 2 * np.sqrt((q - 1) * xc * (1 - xc))) / q
    val = _entropy_vec(q, np.clip(arg, 0.0, 1.0))
    return np.where(x >= 1 - 1 / q, 0.0, val)


def _lp_objective(q: int, r: int, delta: float, tau: np.ndarray) -> np.ndarray:
    tau = np.asarray(tau, dtype=float)
    scale = 1 - tau * (r + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = np.where(scale > 0, delta / np.where(scale > 0, scale, 1.0), np.inf)
    inner = np.where(scale > 0, lp_inner(q, np.where(np.isfinite(arg), arg, 1.0)), 0.0)
    return tau * r + np.where(scale > 0, scale * inner, 0.0)


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = OPT_TOL) -> float:
    """Minimizer of a unimodal ``f`` on ``[a, b]``."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (a + b) / 2


def lp_bound(q: int, r: int, delta: float) -> float:
    """Upper bound from linear programming, minimized over ``tau in [0, 1/(r+1)]``."""
    _check_delta(delta, 1 - 1 / q)
    hi = 1 / (r + 1)
    grid = np.linspace(0.0, hi, GRID_POINTS + 1)
    vals = _lp_objective(q, r, float(delta), grid)
    i = int(np.argmin(vals))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, GRID_POINTS)]
    obj = lambda s: float(_lp_objective(q, r, float(delta), np.array([s]))[0])  # noqa: E731
    t = golden_section(obj, a, b)
    return min(obj(t), float(vals[i]))


def singleton_rate(r: int, delta: Number) -> Fraction:
    _check_delta(delta)
    return Fraction(r, r + 1) * (1 - as_fraction(delta))


def plotkin_rate(q: int, r: int, delta: Number) -> Fraction:
    _check_delta(delta, 1 - Fraction(1, q))
    return Fraction(r, r + 1) * (1 - Fraction(q, q - 1) * as_fraction(delta))


# Gilbert-Varshamov ---------------------------------------------------------


def gv_objective(q: int, r: int, delta: float, s: float | np.ndarray) -> float | np.ndarray:
    """``h(s) = log_q((1+(q-1)s)^(r+1) + (q-1)(1-s)^(r+1))/(r+1) - delta log_q s``, overflow-safe."""
    s = np.asarray(s, dtype=float)
    big = 1 + (q - 1) * s
    rho = (1 - s) / big
    log_sum = (r + 1) * np.log(big) + np.log1p((q - 1) * rho ** (r + 1))
    out = (log_sum / (r + 1) - delta * np.log(s)) / math.log(q)
    return float(out) if out.ndim == 0 else out


def gv_derivative_sign(q: int, r: int, delta: float, s: float | np.ndarray):
    """Numerator of ``h'(s)`` divided by ``(1+(q-1)s)^(r+1)``; same sign as ``h'``.

    At ``delta = 1/2`` it is half of
    ``(1+(q-1)s)^r((q-1)s-1) - (q-1)(1-s)^r(1+s)`` after the same scaling.
    """
    s = np.asarray(s, dtype=float)
    big = 1 + (q - 1) * s
    rho = (1 - s) / big
    out = (q - 1) * s * (1 - rho**r) / big - delta * (1 + (q - 1) * rho ** (r + 1))
    return float(out) if out.ndim == 0 else out


def _grid_minimizer(f, lo: float, hi: float) -> float:
    # log-spaced grid resolves minimizers near 0 as well as near 1
    grid = np.unique(np.concatenate([np.geomspace(lo, hi, GRID_POINTS), np.linspace(lo, hi, GRID_POINTS)]))
    vals = f(grid)
    i = int(np.argmin(vals))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    return golden_section(lambda s: float(f(np.array([s]))[0]), a, b, tol=1e-13 * max(1.0, b))


def gv_minimizer(q: int, r: int, delta: float, method: str = "bisection") -> float:
    """Minimizing ``s in (0, 1]`` of the GV objective.

    ``bisection`` finds the unique sign change of the derivative numerator,
    after checking on a grid that it changes sign once (unimodality); if
    the check fails it falls back to ``grid``.
    """
    delta = float(delta)
    if not 0 < delta <= 1 - 1 / q:
        raise DomainError(f"delta={delta} outside (0, 1-1/q]")
    lo = 1e-300
    if method == "bisection":
        probe = np.geomspace(1e-12, 1.0, 400)
        signs = np.sign(gv_derivative_sign(q, r, delta, probe))
        changes = np.count_nonzero(np.diff(signs[signs != 0]))
        if changes <= 1:
            if gv_derivative_sign(q, r, delta, 1.0) <= 0:
                return 1.0
            a, b = lo, 1.0
            for _ in range(2000):
                mid = math.sqrt(a * b) if b / a > 4 else (a + b) / 2
                if gv_derivative_sign(q, r, delta, mid) < 0:
                    a = mid
                else:
                    b = mid
                if b - a <= 1e-15 * b:
                    break
            return (a + b) / 2
        method = "grid"
    if method == "grid":
        return _grid_minimizer(lambda s: gv_objective(q, r, delta, s), 1e-15, 1.0)
    raise BadParams(f"unknown method {method!r}")


def gv_bound(q: int, r: int, delta: Number, method: str = "bisection") -> float:
    """Gilbert-Varshamov lower bound ``1 - min_{0<s<=1} h(s)``; ``r/(r+1)`` at delta = 0."""
    delta = float(delta)
    _check_delta(delta, 1 - 1 / q)
    if delta == 0:
        return r / (r + 1)
    s = gv_minimizer(q, r, delta, method)
    return 1 - gv_objective(q, r, delta, s)


# affine lower bounds ---------------------------------------------------------


def tvz_rate(r: int, delta: Number, ihara: Number, clamp: bool = True) -> Fraction:
    """``r/(r+1) - r/((r+1) A) - delta`` for an Ihara constant (or lower bound) A."""
    ihara = as_fraction(ihara)
    if ihara <= 0:
        raise DomainError("Ihara constant must be positive")
    frac = Fraction(r, r + 1)
    return _clamp(frac - frac / ihara - as_fraction(delta), clamp)


def cor12_square(q: int, r: int, delta: Number, clamp: bool = True) -> Fraction:
    return tvz_rate(r, delta, square_root(q) - 1, clamp)


def oddpower_penalty(p: int, m: int) -> Fraction:
    return Fraction(1, 2) * (Fraction(1, p**m - 1) + Fraction(1, p ** (m + 1) - 1))


def cor12_oddpower(p: int, m: int, r: int, delta: Number, clamp: bool = True) -> Fraction:
    if m < 1 or prime_power(p) != (p, 1):
        raise NotOddPower(f"need q = p^(2m+1) with p prime and m >= 1, got p={p}, m={m}")
    frac = Fraction(r, r + 1)
    return _clamp(frac - oddpower_penalty(p, m) * frac - as_fraction(delta), clamp)


def eq6_bound(q: int, r: int, delta: Number, clamp: bool = True) -> Fraction | Inapplicable:
    s = square_root(q)
    if r != s - 1:
        return Inapplicable(f"needs r = sqrt(q) - 1 = {s - 1}")
    frac = Fraction(r, r + 1)
    return _clamp(frac * (1 - as_fraction(delta) - Fraction(3, s + 1)), clamp)


def eq7_bound(q: int, r: int, delta: Number, clamp: bool = True) -> Fraction | Inapplicable:
    s = square_root(q)
    if (s + 1) % (r + 1):
        return Inapplicable(f"needs (r+1) | (sqrt(q)+1) = {s + 1}")
    frac = Fraction(r, r + 1)
    return _clamp(frac * (1 - as_fraction(delta) - Fraction(s + r, q - 1)), clamp)


def barg_bounds(q: int, r: int, delta: Number, clamp: bool = True) -> tuple:
    """The two bounds for ``r = sqrt(q) - 1`` and ``(r+1) | (sqrt(q)+1)``."""
    return eq6_bound(q, r, delta, clamp), eq7_bound(q, r, delta, clamp)


def lmx_parameters(q: int, r: int) -> tuple[int, int] | None:
    """``(u, v)`` with ``r + 1 = u p^v`` and ``u | gcd(p^v - 1, sqrt(q) - 1)``, if any."""
    s = square_root(q)
    pk = prime_power(q)
    if pk is None:
        return None
    p = pk[0]
    v = 0
    while (r + 1) % p ** (v + 1) == 0:
        v += 1
    for vv in range(v, -1, -1):
        u = (r + 1) // p**vv
        if math.gcd(p**vv - 1, s - 1) % u == 0:
            return u, vv
    return None


def lmx_bound(q: int, r: int, delta: Number, u: int | None = None, v: int | None = None, clamp: bool = True):
    s = square_root(q)
    p = prime_power(q)[0]
    if u is None or v is None:
        uv = lmx_parameters(q, r)
        if uv is None:
            return Inapplicable("r+1 is not u p^v with u | gcd(p^v - 1, sqrt(q) - 1)")
        u, v = uv
    elif r + 1 != u * p**v or math.gcd(p**v - 1, s - 1) % u:
        return Inapplicable(f"(u, v) = ({u}, {v}) does not satisfy the divisibility condition")
    frac = Fraction(r, r + 1)
    return _clamp(frac * (1 - as_fraction(delta) - Fraction(s + r - 1, q - s)), clamp)


def crossover_delta(q: int, r: int, vs: str) -> Fraction:
    """Largest delta below which the square-field bound beats the comparison bound."""
    s = square_root(q)
    if vs == "eq7":
        return Fraction((r - 1) * r, q - 1)
    if vs == "eq8":
        return Fraction((r - 1) * r, q - s)
    raise BadParams(f"unknown comparison {vs!r}")


# prime fields -----------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    e: int
    intercept: Fraction
    start: Fraction
    end: Fraction

    @property
    def slope(self) -> Fraction:
        return Fraction(-self.e)

    def __call__(self, delta: Number) -> Fraction:
        return self.intercept - self.e * as_fraction(delta)


@dataclass
class PrimeFieldBound:
    q: int
    r: int
    b: int
    lines: dict[int, Fraction]
    pieces: list[Piece]

    @property
    def breakpoints(self) -> list[Fraction]:
        return [p.start for p in self.pieces[1:]] + ([self.pieces[-1].end] if self.pieces else [])

    def value(self, delta: Number) -> Fraction:
        d = as_fraction(delta)
        best = max((line - e * d for e, line in self.lines.items()), default=Fraction(0))
        return max(best, Fraction(0))


def prime_field_lines(q: int, r: int) -> tuple[int, dict[int, Fraction]]:
    from .builder import locality_parameter_b

    b = locality_parameter_b(q, r)
    evens = [e for e in range(2, b + 1, 2) if b % e == 0]
    if not evens:
        raise NoEvenDivisor(f"b={b} has no even divisor")
    frac = Fraction(r, r + 1)
    return b, {e: frac - Fraction(b, r + 1) / (q ** (e // 2) - 1) for e in evens}


def prime_field_bound(q: int, r: int) -> PrimeFieldBound:
    """Upper envelope over even divisors e of b of ``r/(r+1) - b/((r+1)(q^(e/2)-1)) - e delta``."""
    pk = prime_power(q)
    if pk is None or pk[1] != 1:
        raise BadParams(f"{q} is not prime")
    b, lines = prime_field_lines(q, r)
    pieces: list[Piece] = []
    live = {e: c for e, c in lines.items() if c > 0}
    if live:
        # walk the upper envelope from delta = 0 until it reaches zero
        cur = max(live, key=lambda e: (live[e], -e))
        start = Fraction(0)
        while True:
            c = live[cur]
            end = c / cur
            crossings = [((c - live[e]) / (cur - e), e) for e in live if e < cur]
            crossings = [(x, e) for x, e in crossings if start < x < end]
            if not crossings:
                pieces.append(Piece(cur, c, start, end))
                break
            x, e = min(crossings)
            pieces.append(Piece(cur, c, start, x))
            start, cur = x, e
    return PrimeFieldBound(q, r, b, lines, pieces)


# function-field arithmetic -----------------------------------------------------


def gs_tower_params(ell: int, level: int) -> tuple[int, int]:
    """Genus and lower bound on rational places of level ``level`` of the tower over F_{ell^2}."""
    if prime_power(ell) is None or level < 1:
        raise BadParams(f"need a prime power ell and level >= 1, got ell={ell}, level={level}")
    if level % 2 == 0:
        genus = (ell ** (level // 2) - 1) ** 2
    else:
        genus = (ell ** ((level + 1) // 2) - 1) * (ell ** ((level - 1) // 2) - 1)
    q = ell * ell
    places = (q - ell) * ell ** (level - 1) + ell
    return genus, places


def ihara_lower(q: int) -> Fraction | None:
    """Best known explicit lower bound on A(q): sqrt(q)-1 for squares, the odd-power tower bound
    for ``q = p^(2m+1)`` with m >= 1, otherwise None (unknown)."""
    pk = prime_power(q)
    if pk is None:
        raise BadParams(f"{q} is not a prime power")
    p, k = pk
    if k % 2 == 0:
        return Fraction(isqrt(q) - 1)
    if k >= 3:
        m = (k - 1) // 2
        zeta = Fraction(p - 1, p**m - 1)
        return 2 * Fraction(p ** (m + 1) - 1) / (p + 1 + zeta)
    return None


def gv_exceedance_check(q: int, r: int, delta: Number) -> bool:
    """Does the square-field bound strictly exceed GV (by more than 1e-10) at delta?"""
    ours = float(cor12_square(q, r, delta))
    return ours > gv_bound(q, r, delta) + 1e-10


def gv_derivative_numerator_exact(q: int, r: int, s: Fraction) -> Fraction:
    """Exact ``(1+(q-1)s)^r((q-1)s-1) - (q-1)(1-s)^r(1+s)``: the sign of ``h'`` at delta = 1/2."""
    s = Fraction(s)
    return (1 + (q - 1) * s) ** r * ((q - 1) * s - 1) - (q - 1) * (1 - s) ** r * (1 + s)


def half_delta_bracket_certified(q: int, r: int) -> bool:
    """Exact certificate that the delta = 1/2 minimizer lies in ``(1/(q-1), 1/(q-1) + 2^-r)``:
    the increasing derivative numerator is negative at the left end and positive at the right."""
    lo = Fraction(1, q - 1)
    hi = lo + Fraction(1, 2**r)
    return gv_derivative_numerator_exact(q, r, lo) < 0 < gv_derivative_numerator_exact(q, r, hi)


# curves and figures -------------------------------------------------------------

BOUND_IDS = ("singleton", "plotkin", "lp", "gv", "eq6", "eq7", "eq8", "eq10", "eq11", "eq12")


def delta_grid(spec: str) -> list[Fraction]:
    """Inclusive grid from ``start:stop:step``, computed exactly."""
    try:
        a, b, h = (Fraction(x) for x in spec.split(":"))
    except ValueError as exc:
        raise BadParams(f"bad grid {spec!r}; expected start:stop:step") from exc
    if h <= 0 or b < a:
        raise BadParams(f"bad grid {spec!r}")
    count = int((b - a) / h)
    return [a + i * h for i in range(count + 1)]


def _evaluator(bound_id: str, q: int, r: int, p: int | None = None, m: int | None = None):
    """Returns ``(fn(delta) -> value or Inapplicable, exact, max_delta)``."""
    top = 1 - Fraction(1, q)
    if bound_id == "singleton":
        return (lambda d: singleton_rate(r, d)), True, Fraction(1)
    if bound_id == "plotkin":
        return (lambda d: plotkin_rate(q, r, d)), True, top
    if bound_id == "lp":
        return (lambda d: lp_bound(q, r, float(d))), False, top
    if bound_id == "gv":
        return (lambda d: gv_bound(q, r, float(d))), False, top
    if bound_id == "eq6":
        return (lambda d: eq6_bound(q, r, d, clamp=False)), True, Fraction(1)
    if bound_id == "eq7":
        return (lambda d: eq7_bound(q, r, d, clamp=False)), True, Fraction(1)
    if bound_id == "eq8":
        return (lambda d: lmx_bound(q, r, d, clamp=False)), True, Fraction(1)
    if bound_id == "eq10":
        return (lambda d: cor12_square(q, r, d, clamp=False)), True, Fraction(1)
    if bound_id == "eq11":
        if p is None or m is None:
            pk = prime_power(q)
            if pk is None or pk[1] < 3 or pk[1] % 2 == 0:
                raise NotOddPower(f"{q} is not p^(2m+1) with m >= 1")
            p, m = pk[0], (pk[1] - 1) // 2
        return (lambda d: cor12_oddpower(p, m, r, d, clamp=False)), True, Fraction(1)
    if bound_id == "eq12":
        env = prime_field_bound(q, r)
        raw = lambda d: max(c - e * as_fraction(d) for e, c in env.lines.items())  # noqa: E731
        return raw, True, Fraction(1)
    raise BadParams(f"unknown bound id {bound_id!r}")


def bound_curve(bound_id: str, q: int, r: int, deltas, p: int | None = None, m: int | None = None) -> BoundCurve | Inapplicable:
    """Sample a bound over a delta grid; rates clamp at 0, unclamped values kept in ``raw``.

    Grid points outside the bound's delta domain are skipped.
    """
    fn, exact, top = _evaluator(bound_id, q, r, p, m)
    params = {"q": q, "r": r}
    if bound_id == "eq11":
        pk = prime_power(q)
        params.update(p=pk[0], m=(pk[1] - 1) // 2)
    curve = BoundCurve(bound_id, params, exact=exact)
    for d in deltas:
        d = as_fraction(d)
        if d < 0 or d > top:
            continue
        val = fn(d)
        if isinstance(val, Inapplicable):
            return val
        curve.raw.append((d, val))
        curve.samples.append((d, max(val, 0 * val)))
    return curve


FIGURES = {
    1: {"q": 2**12, "r": 63, "bounds": ("gv", "eq6", "eq7", "eq8", "eq10"), "grid": "0:0.99:0.01"},
    2: {"q": 2**12, "r": 64, "bounds": ("gv", "eq6", "eq7", "eq8", "eq10"), "grid": "0:0.99:0.01"},
    3: {"q": 2**13, "r": 64, "bounds": ("gv", "eq11"), "grid": "0:0.99:0.01"},
    4: {"q": 2**12, "delta": Fraction(1, 2), "bounds": ("gv", "eq10"), "r_values": range(1, 201)},
    5: {"q": 2, "r": 11, "bounds": ("gv", "eq12"), "grid": "0:0.5:0.005"},
}


def figure_curves(k: int) -> tuple[list[BoundCurve], list[str]]:
    """All applicable curves of figure k, plus notes on omitted bounds."""
    if k not in FIGURES:
        raise BadParams(f"no figure {k}; choose from {sorted(FIGURES)}")
    spec = FIGURES[k]
    curves, notes = [], []
    if "r_values" in spec:
        # sweep locality at fixed delta: one single-sample curve per (bound, r)
        for bid in spec["bounds"]:
            for r in spec["r_values"]:
                c = bound_curve(bid, spec["q"], r, [spec["delta"]])
                if isinstance(c, Inapplicable):
                    notes.append(f"{bid} r={r}: {c.reason}")
                else:
                    curves.append(c)
        return curves, notes
    grid = delta_grid(spec["grid"])
    for bid in spec["bounds"]:
        c = bound_curve(bid, spec["q"], spec["r"], grid)
        if isinstance(c, Inapplicable):
            notes.append(f"{bid}: {c.reason}")
        else:
            curves.append(c)
    return curves, notes


def curves_to_csv(curves: list[BoundCurve]) -> str:
    lines = ["delta,rate,bound_id,params"]
    for c in curves:
        params = ";".join(f"{k}={v}" for k, v in c.params.items())
        for d, val in c.samples:
            lines.append(f"{float(d):.12g},{float(val):.12g},{c.bound_id},{params}")
    return "\n".join(lines) + "\n"
