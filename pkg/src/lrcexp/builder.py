"""Parity-check matrices of locally repairable codes from local expansions.

The basis ``f_1..f_g`` of ``L((2g-1)P_inf)`` is expanded at infinity; each
repair group contributes functions with one extra pole (a rational place,
or a block of places of degree dividing ``e``).  Those functions are
reduced against the ``f_w`` so their expansion coefficients vanish on a
set of pivot rows, and the remaining coefficients become columns of ``H``
under one all-one row per group.

Row ``p`` of every coefficient vector holds the coefficient of
``t^(p - 2g + 1)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .curves import CurveBackend, CurveFunction, Place, RationalBackend, irreducibles_of_degree, parse_place
from .errors import (
    AlphaInvalid,
    BadLocalityParity,
    BadParams,
    Exhausted,
    FieldTooSmall,
    InsufficientPrecision,
    NotEnoughIrreducibles,
    NotEnoughPlaces,
    PoleBoundViolated,
    PrecisionExhausted,
    RankDeficient,
)
from .galois import FieldCtx, make_field
from .series import LaurentSeries

GUARD_TERMS = 8
FORMAT = "lrcexp.code/1"


@dataclass
class ExpansionMatrixA:
    """Expansion coefficients of the basis of ``L((2g-1)P_inf)``, shape ``(2g + t*e) x g``."""

    ctx: FieldCtx
    genus: int
    t: int
    e: int
    entries: list[list[int]]
    pivot_rows: tuple[int, ...]
    pole_numbers: tuple[int, ...] = ()

    @property
    def nrows(self) -> int:
        return 2 * self.genus + self.t * self.e

    @property
    def offset(self) -> int:
        """Exponent of row 0."""
        return 1 - 2 * self.genus

    @property
    def complement_rows(self) -> list[int]:
        piv = set(self.pivot_rows)
        return [p for p in range(self.nrows) if p not in piv]

    def rank(self) -> int:
        return linalg.rank(self.ctx, self.entries)


def _expansion_budget(genus: int, t: int, e: int) -> int:
    return 2 * genus + t * e + GUARD_TERMS


def _expand(backend: CurveBackend, f: CurveFunction, nrows: int, budget: int) -> LaurentSeries:
    out_prec = max(budget, nrows) - 2 * backend.genus + 1
    try:
        return backend.expand_at_infinity(f, out_prec)
    except PrecisionExhausted:
        return backend.expand_at_infinity(f, 2 * out_prec)


def _column(s: LaurentSeries, offset: int, nrows: int) -> list[int]:
    if s.prec < offset + nrows:
        raise InsufficientPrecision(f"expansion known to t^{s.prec}, rows need t^{offset + nrows}")
    if s.valuation() < offset:
        raise PoleBoundViolated(f"valuation {s.valuation()} below {offset}")
    return s.window(offset, offset + nrows)


def build_matrix_A(backend: CurveBackend, t: int, e: int = 1) -> ExpansionMatrixA:
    """Expansion matrix of the pole-number basis with an invertible pivot row set.

    Pivots are the leading rows ``2g-1-n_j`` when those form an invertible
    block (they do for a pole-number basis); otherwise rows are picked by
    elimination.

    Raises:
        RankDeficient: the matrix has rank below g.
    """
    if t < 0 or e < 1:
        raise BadParams("need t >= 0 and e >= 1")
    g = backend.genus
    nrows = 2 * g + t * e
    basis = backend.rr_basis_at_infinity()
    budget = _expansion_budget(g, t, e)
    cols = [_column(_expand(backend, f, nrows, budget), 1 - 2 * g, nrows) for f, _ in basis]
    entries = [list(row) for row in zip(*cols)] if cols else [[] for _ in range(nrows)]
    pole_numbers = tuple(n for _, n in basis)
    leading = [2 * g - 1 - n for n in pole_numbers]
    if g and linalg.rank(backend.ctx, [entries[p] for p in leading]) == g:
        pivots = tuple(sorted(leading))
    else:
        pivots = tuple(linalg.independent_rows(backend.ctx, entries))
    if len(pivots) != g:
        raise RankDeficient(f"expansion matrix has rank {len(pivots)} < genus {g}")
    return ExpansionMatrixA(backend.ctx, g, t, e, entries, pivots, pole_numbers)


def _reduce_full(A: ExpansionMatrixA, g_expansion: LaurentSeries) -> tuple[list[int], list[int]]:
    ctx = A.ctx
    b = _column(g_expansion, A.offset, A.nrows)
    if not A.pivot_rows:
        return b, []
    rows = [A.entries[p] for p in A.pivot_rows]
    alpha = linalg.solve(ctx, rows, [b[p] for p in A.pivot_rows])
    full = [ctx.sub(b[p], linalg.sum_products(ctx, A.entries[p], alpha)) for p in range(A.nrows)]
    assert all(full[p] == 0 for p in A.pivot_rows)
    return full, alpha


def reduce_function(A: ExpansionMatrixA, g_expansion: LaurentSeries) -> list[int]:
    """Coefficients of ``g - sum(alpha_w f_w)`` on the non-pivot rows.

    The ``alpha_w`` solve the pivot-row system, so the reduced function's
    coefficients vanish on ``A.pivot_rows``.
    """
    full, _ = _reduce_full(A, g_expansion)
    return [full[p] for p in A.complement_rows]


@dataclass
class LrcCode:
    """Parity-check matrix plus repair-group layout and construction record."""

    ctx: FieldCtx
    H: list[list[int]]
    groups: list[list[int]] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    provenance: list[str] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        if self.H:
            return len(self.H[0])
        return int(self.params.get("n", 0))

    @property
    def r(self) -> int | None:
        return self.params.get("r")

    @property
    def k_lower_bound(self) -> int | None:
        p = self.params
        if "m" not in p:
            return None
        return self.n - p["m"] - p.get("genus", 0) - p.get("t", 0) * p.get("e", 1)

    @classmethod
    def from_parity_check(cls, ctx: FieldCtx, H: Sequence[Sequence[int]], n: int | None = None, groups=None, r=None) -> "LrcCode":
        H = [list(row) for row in H]
        params = {"n": n if n is not None else (len(H[0]) if H else 0)}
        if r is not None:
            params["r"] = r
        return cls(ctx, H, [list(g) for g in groups or []], params)

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "field": {"p": self.ctx.p, "ext_deg": self.ctx.ext_deg, "modulus": list(self.ctx.modulus)},
            "params": self.params,
            "groups": self.groups,
            "provenance": self.provenance,
            "diagnostics": self.diagnostics,
            "H": self.H,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "LrcCode":
        if d.get("format") != FORMAT:
            raise BadParams(f"unsupported code format {d.get('format')!r}")
        fd = d["field"]
        ctx = make_field(fd["p"], fd["ext_deg"], fd["modulus"] if fd["ext_deg"] > 1 else None)
        H = [[ctx.check(int(x)) for x in row] for row in d["H"]]
        return cls(ctx, H, d.get("groups", []), d.get("params", {}), d.get("provenance", []), d.get("diagnostics", {}))

    @classmethod
    def from_json(cls, text: str) -> "LrcCode":
        return cls.from_dict(json.loads(text))

    def h_csv(self) -> str:
        return "".join(",".join(map(str, row)) + "\n" for row in self.H)


def default_alphas(ctx: FieldCtx, m: int) -> list[int]:
    """``m`` copies of the element with encoding 2 (the smallest outside {0, 1})."""
    if ctx.q < 3:
        raise FieldTooSmall("no element outside {0, 1} in F_2")
    return [2] * m


def _check_alphas(ctx: FieldCtx, alphas: Sequence[int] | None, m: int) -> list[int]:
    if alphas is None:
        return default_alphas(ctx, m)
    alphas = list(alphas)
    if len(alphas) != m:
        raise BadParams(f"need {m} alphas, got {len(alphas)}")
    for a in alphas:
        ctx.check(a)
        if a in (0, 1):
            raise AlphaInvalid(f"alpha must avoid 0 and 1, got {a}")
    return alphas


def _independence_rank(backend: CurveBackend, funcs: list[CurveFunction], divisor_degree: int) -> int:
    """Rank of the reduced functions' coefficient vectors through exponent deg D + 1.

    A nonzero element of ``L((2g-1)P_inf + D)`` has valuation at most
    ``deg D`` at infinity, so these truncated vectors detect any linear
    dependence among the reduced functions exactly.
    """
    if not funcs:
        return 0
    A = build_matrix_A(backend, divisor_degree + 1, 1)
    budget = _expansion_budget(backend.genus, divisor_degree + 1, 1)
    vecs = [_reduce_full(A, _expand(backend, f, A.nrows, budget))[0] for f in funcs]
    return linalg.rank(backend.ctx, vecs)


def _assemble(
    backend: CurveBackend,
    A: ExpansionMatrixA,
    group_funcs: list[list[tuple[CurveFunction, str]]],
    alphas: list[int] | None,
    width: int,
) -> tuple[list[list[int]], list[list[int]], list[str]]:
    ctx = backend.ctx
    m = len(group_funcs)
    budget = _expansion_budget(A.genus, A.t, A.e)
    cols: list[list[int]] = []
    groups: list[list[int]] = []
    prov: list[str] = []
    for i, funcs in enumerate(group_funcs):
        members = []
        for j, (f, where) in enumerate(funcs):
            full, _ = _reduce_full(A, _expand(backend, f, A.nrows, budget))
            members.append(len(cols))
            cols.append([full[p] for p in A.complement_rows])
            prov.append(f"group {i} col {j}: {f.label} @ {where}")
        if alphas is not None:
            members.append(len(cols))
            cols.append([ctx.mul(alphas[i], x) for x in cols[members[0]]])
            prov.append(f"group {i} col {len(funcs)}: alpha={alphas[i]} * col 0")
        assert len(members) == width
        groups.append(members)
    n = len(cols)
    H = [[1 if c in set(groups[i]) else 0 for c in range(n)] for i in range(m)]
    H += [list(row) for row in zip(*cols)] if cols and cols[0] else []
    return H, groups, prov


def build_code_rational_places(
    backend: CurveBackend,
    r: int,
    m: int,
    t: int,
    alphas: Sequence[int] | None = None,
    places: Sequence[Place | str] | None = None,
) -> LrcCode:
    """Code of length ``m(r+1)`` from ``m*r`` rational places and one replicated column per group.

    Guarantees ``k >= n - m - g - t`` and ``d >= t + 1`` with locality r.

    Raises:
        FieldTooSmall: q == 2.
        AlphaInvalid: some alpha is 0 or 1.
        NotEnoughPlaces: fewer than ``m*r`` finite rational places.
    """
    ctx = backend.ctx
    if r < 1 or m < 1 or t < 0:
        raise BadParams("need r >= 1, m >= 1, t >= 0")
    if ctx.q < 3:
        raise FieldTooSmall("the replicated column needs an element outside {0, 1}")
    alphas = _check_alphas(ctx, alphas, m)
    if places is None:
        avail = [P for P in backend.rational_places() if P.kind == "affine"]
    else:
        avail = [parse_place(P) if isinstance(P, str) else P for P in places]
        if len(set(avail)) != len(avail):
            raise BadParams("configured places are not distinct")
        known = set(backend.rational_places())
        for P in avail:
            if P.kind == "infinity":
                raise BadParams("the place at infinity cannot carry a column")
            if P not in known:
                raise BadParams(f"{P} is not a rational place of the {backend.kind} backend")
    if len(avail) < m * r:
        raise NotEnoughPlaces(f"need {m * r} rational places, have {len(avail)}")
    used = avail[: m * r]
    A = build_matrix_A(backend, t, 1)
    group_funcs = [
        [(backend.auxiliary_function(P), P.literal()) for P in used[i * r : (i + 1) * r]] for i in range(m)
    ]
    H, groups, prov = _assemble(backend, A, group_funcs, alphas, r + 1)
    funcs = [f for grp in group_funcs for f, _ in grp]
    params = {
        "construction": "sec3",
        "backend": backend.describe(),
        "q": ctx.q,
        "r": r,
        "m": m,
        "t": t,
        "e": 1,
        "genus": backend.genus,
        "n": m * (r + 1),
        "alphas": alphas,
        "places": [P.literal() for P in used],
    }
    diag = {
        "pivot_rows": list(A.pivot_rows),
        "rank_A": A.rank(),
        "independence_rank": _independence_rank(backend, funcs, m * r),
        "independence_expected": len(funcs),
    }
    return LrcCode(ctx, H, groups, params, prov, diag)


def locality_parameter_b(q: int, r: int) -> int:
    """Degree of each group's divisor over a prime field."""
    if r % 2 == 1:
        return r + 1
    if q == 2:
        return r + 2
    return r


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def allocate_blocks(ctx: FieldCtx, e: int, count: int, mode: str = "single") -> list[list[Place]]:
    """``count`` pairwise disjoint effective divisors of degree e, each a list of places.

    ``single`` uses one place of degree exactly e per block (the smallest
    irreducibles first).  ``mixed`` fills blocks greedily with distinct places
    whose degrees divide e, largest degree first.

    Raises:
        NotEnoughIrreducibles: the supply of places runs out.
    """
    if mode == "single":
        try:
            return [[Place.higher(m)] for m in irreducibles_of_degree(ctx, e, count)]
        except Exhausted as exc:
            raise NotEnoughIrreducibles(str(exc)) from exc
    if mode != "mixed":
        raise BadParams(f"unknown block mode {mode!r}")
    supply: list[Place] = []
    for d in sorted(_divisors(e), reverse=True):
        if d == 1:
            supply += [Place.affine(a) for a in ctx.elements()]
        else:
            supply += [Place.higher(m) for m in irreducibles_of_degree(ctx, d)]
    used = [False] * len(supply)
    blocks = []
    for _ in range(count):
        remaining, block = e, []
        for k, P in enumerate(supply):
            if not used[k] and P.degree <= remaining:
                used[k] = True
                block.append(P)
                remaining -= P.degree
                if remaining == 0:
                    break
        if remaining:
            raise NotEnoughIrreducibles(f"cannot fill {count} disjoint degree-{e} blocks over F_{ctx.q}")
        blocks.append(block)
    return blocks


def build_code_prime_field(
    backend: CurveBackend,
    r: int,
    m: int,
    t: int,
    e: int,
    alphas: Sequence[int] | None = None,
    block_mode: str = "single",
    blocks: Sequence[Sequence[Place | str]] | None = None,
) -> LrcCode:
    """Code over a prime field from places of degree dividing e.

    Each group uses a divisor of degree b (r, r+1 or r+2 depending on the
    parities of q and r) split into b/e blocks of degree e.  With q odd and
    r even the group has r columns plus a replicated one; otherwise it has
    r+1 plain columns (for q = 2 and r even the last of the r+2 block
    functions is dropped).  Guarantees ``k >= n - m - g - t*e``, ``d >= t + 1``.

    Raises:
        BadLocalityParity: e is odd or does not divide b.
        NotEnoughIrreducibles: not enough disjoint blocks.
    """
    ctx = backend.ctx
    if not isinstance(backend, RationalBackend):
        from .errors import UnsupportedBackend

        raise UnsupportedBackend("places of higher degree are only available on the rational backend")
    if ctx.ext_deg != 1:
        raise BadParams("this construction is for prime fields")
    if r < 1 or m < 1 or t < 0:
        raise BadParams("need r >= 1, m >= 1, t >= 0")
    q = ctx.q
    b = locality_parameter_b(q, r)
    if e < 2 or e % 2 or b % e:
        raise BadLocalityParity(f"e={e} must be an even divisor of b={b}")
    replicate = q % 2 == 1 and r % 2 == 0
    alphas = _check_alphas(ctx, alphas, m) if replicate else None
    per_group = b // e
    if blocks is None:
        all_blocks = allocate_blocks(ctx, e, m * per_group, block_mode)
    else:
        all_blocks = [[parse_place(P) if isinstance(P, str) else P for P in blk] for blk in blocks]
        _validate_blocks(all_blocks, e, m * per_group)
    A = build_matrix_A(backend, t, e)
    group_funcs = []
    for i in range(m):
        funcs = []
        for blk in all_blocks[i * per_group : (i + 1) * per_group]:
            for Q in blk:
                funcs += [(f, Q.literal()) for f in backend.higher_degree_block(Q)]
        assert len(funcs) == b
        keep = r if replicate else r + 1
        group_funcs.append(funcs[:keep])
    H, groups, prov = _assemble(backend, A, group_funcs, alphas, r + 1)
    funcs = [f for grp in group_funcs for f, _ in grp]
    params = {
        "construction": "sec4",
        "backend": backend.describe(),
        "q": q,
        "r": r,
        "m": m,
        "t": t,
        "e": e,
        "b": b,
        "genus": backend.genus,
        "n": m * (r + 1),
        "alphas": alphas,
        "blocks": [[P.literal() for P in blk] for blk in all_blocks],
        "block_mode": block_mode if blocks is None else "explicit",
    }
    diag = {
        "pivot_rows": list(A.pivot_rows),
        "rank_A": A.rank(),
        "independence_rank": _independence_rank(backend, funcs, m * b),
        "independence_expected": len(funcs),
    }
    return LrcCode(ctx, H, groups, params, prov, diag)


def _validate_blocks(blocks: list[list[Place]], e: int, count: int) -> None:
    if len(blocks) != count:
        raise BadParams(f"need {count} blocks, got {len(blocks)}")
    seen = set()
    for blk in blocks:
        if sum(P.degree for P in blk) != e or any(e % P.degree for P in blk):
            raise BadParams(f"block {[str(P) for P in blk]} is not a degree-{e} divisor of allowed places")
        for P in blk:
            if P in seen or P.kind == "infinity":
                raise BadParams(f"place {P} repeated or at infinity")
            seen.add(P)
