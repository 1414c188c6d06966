"""Exact analysis of linear codes given by a parity-check matrix."""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .builder import LrcCode
from .errors import (
    BudgetExceeded,
    DistanceUnknown,
    InconsistentWord,
    MultipleErasures,
    NotInAnyGroup,
)

MESSAGE_ENUMERATION_LIMIT = 2**22
DEFAULT_BUDGET = 2_000_000
_TABLE_LIMIT = 256
_CHUNK = 2**16


@dataclass
class CodeReport:
    n: int
    k_exact: int
    k_lower_bound: int | None = None
    d_exact: int | None = None
    d_lower: int | None = None
    d_singleton_upper: int | None = None
    r: int | None = None
    locality_certified: bool | None = None
    t_independence_certified: bool | None = None
    unknown: list[str] = field(default_factory=list)

    def check(self) -> None:
        if self.k_lower_bound is not None:
            assert self.k_exact >= self.k_lower_bound, "dimension below the construction bound"
        if self.d_exact is not None:
            if self.d_lower is not None:
                assert self.d_lower <= self.d_exact, "distance below t + 1"
            if self.d_singleton_upper is not None:
                assert self.d_exact <= self.d_singleton_upper, "distance above the Singleton-type bound"

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def dimension_and_generator(code: LrcCode) -> tuple[int, list[list[int]]]:
    """``k = n - rank(H)`` and a generator matrix whose rows span ker H."""
    G = linalg.nullspace(code.ctx, code.H, code.n)
    return len(G), G


def singleton_upper(n: int, k: int, r: int | None) -> int:
    """``n - k - ceil(k/r) + 2`` (plain Singleton ``n - k + 1`` when r is None)."""
    if r is None:
        return n - k + 1
    return n - k - math.ceil(k / r) + 2


def _tables(ctx) -> tuple[np.ndarray, np.ndarray]:
    q = ctx.q
    add = np.array([[ctx.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)
    mul = np.array([[ctx.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)
    return add, mul


def _distance_by_messages(ctx, G: list[list[int]], n: int) -> int:
    q = ctx.q
    add, mul = _tables(ctx)
    rows = [np.array(g, dtype=np.int32) for g in G]
    k = len(rows)
    inner = 0
    while inner < k and q ** (inner + 1) <= _CHUNK:
        inner += 1
    # all combinations of the last `inner` rows, built layer by layer
    words = np.zeros((1, n), dtype=np.int32)
    for g in rows[k - inner :]:
        scaled = mul[np.arange(q)][:, g]  # (q, n)
        words = add[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
    best = n + 1
    outer = rows[: k - inner]
    for msg in itertools.product(range(q), repeat=len(outer)):
        base = np.zeros(n, dtype=np.int32)
        for a, g in zip(msg, outer):
            if a:
                base = add[base, mul[a][g]]
        cw = add[words, base[None, :]]
        weights = np.count_nonzero(cw, axis=1)
        if not any(msg):
            weights = weights[1:]  # skip the zero codeword
        if weights.size:
            best = min(best, int(weights.min()))
    return best


def _columns(code: LrcCode) -> list[list[int]]:
    n = code.n
    if not code.H:
        return [[] for _ in range(n)]
    return [[row[c] for row in code.H] for c in range(n)]


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise BudgetExceeded(f"enumeration budget {self.limit} exhausted")


def _has_dependent_subset(ctx, cols: list[list[int]], size: int, budget: _Budget) -> bool:
    """True iff some set of at most ``size`` columns is linearly dependent."""
    if size <= 0:
        return False
    if any(not any(c) for c in cols):
        return True
    basis = linalg.EchelonBasis(ctx)
    n = len(cols)

    def dfs(start: int, depth: int) -> bool:
        for c in range(start, n):
            budget.spend()
            if not basis.add(cols[c]):
                return True
            if depth + 1 < size and dfs(c + 1, depth + 1):
                basis.pop()
                return True
            basis.pop()
        return False

    return dfs(0, 0)


def _distance_by_supports(ctx, cols: list[list[int]], cap: int, budget: _Budget) -> int:
    for w in range(1, cap):
        if _has_dependent_subset(ctx, cols, w, budget):
            return w
    return cap


def min_distance_exact(
    code: LrcCode,
    budget: int = DEFAULT_BUDGET,
    strategy: str = "auto",
    r: int | None = None,
) -> int | None:
    """Exact minimum distance, or None when the budget does not allow it.

    ``messages`` enumerates all ``q^k`` codewords; ``supports`` searches for
    the smallest linearly dependent set of columns of H, stopping below the
    Singleton-type bound (which is then the answer).  ``auto`` picks messages
    when ``q^k`` fits both the budget and the 2^22 switch.  Passing ``r``
    uses the locality-aware bound as the cap; only do so for codes whose
    locality is certified.  A code with k = 0 has no distance (None).
    """
    ctx = code.ctx
    k, G = dimension_and_generator(code)
    if k == 0 or budget <= 0:
        return None
    n = code.n
    total = ctx.q**k
    if strategy == "auto":
        strategy = "messages" if total <= min(budget, MESSAGE_ENUMERATION_LIMIT) and ctx.q <= _TABLE_LIMIT else "supports"
    if strategy == "messages":
        if total > budget:
            return None
        return _distance_by_messages(ctx, G, n)
    cap = singleton_upper(n, k, r)
    try:
        return _distance_by_supports(ctx, _columns(code), cap, _Budget(budget))
    except BudgetExceeded:
        return None


def verify_t_independence(code: LrcCode, t: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff every t columns of H are linearly independent.

    Raises:
        BudgetExceeded: ``C(n, t)`` is larger than the budget.
    """
    if t <= 0:
        return True
    n = code.n
    if t > n:
        return False
    if math.comb(n, t) > budget:
        raise BudgetExceeded(f"C({n},{t}) subsets exceed budget {budget}")
    return not _has_dependent_subset(code.ctx, _columns(code), t, _Budget(budget * (t + 1)))


def _witness_rows(code: LrcCode, r: int) -> dict[int, list[int]]:
    """Coordinate -> repair set from a row of H of weight <= r + 1 covering it."""
    out: dict[int, list[int]] = {}
    for row in code.H:
        supp = [c for c, x in enumerate(row) if x]
        if len(supp) <= r + 1:
            for c in supp:
                out.setdefault(c, [j for j in supp if j != c])
    return out


def _codewords(code: LrcCode, G: list[list[int]]) -> list[tuple[int, ...]]:
    ctx = code.ctx
    words = []
    for msg in itertools.product(range(ctx.q), repeat=len(G)):
        w = [0] * code.n
        for a, g in zip(msg, G):
            if a:
                w = [ctx.add(x, ctx.mul(a, y)) for x, y in zip(w, g)]
        words.append(tuple(w))
    return words


def _projections_disjoint(words, i: int, I: Sequence[int]) -> bool:
    seen: dict[tuple, int] = {}
    for w in words:
        key = tuple(w[j] for j in I)
        prev = seen.setdefault(key, w[i])
        if prev != w[i]:
            return False
    return True


def _determined_by(ctx, G: list[list[int]], i: int, I: Sequence[int]) -> bool:
    """Is column i of G in the span of the columns I (coordinate i a function of I)?"""
    if not G:
        return True
    cols = [[g[j] for g in G] for j in I]
    target = [g[i] for g in G]
    return linalg.rank(ctx, cols + [target]) == linalg.rank(ctx, cols)


def verify_locality(code: LrcCode, r: int, exhaustive_limit: int = 2**16) -> tuple[bool, dict[int, list[int]]]:
    """Certify locality r: every coordinate is recoverable from at most r others.

    Uses rows of H of weight at most r + 1 as constructive witnesses.  Any
    coordinate without one is searched over all repair sets of size <= r,
    comparing codeword projections literally for n <= 14 and q <= 4 and by
    a span test otherwise.

    Returns:
        (certified, witnesses) where witnesses maps coordinate -> repair set.
    """
    n = code.n
    witnesses = _witness_rows(code, r)
    missing = [i for i in range(n) if i not in witnesses]
    if not missing:
        return True, witnesses
    ctx = code.ctx
    k, G = dimension_and_generator(code)
    literal = n <= 14 and ctx.q <= 4 and ctx.q**k <= exhaustive_limit
    words = _codewords(code, G) if literal else None
    for i in missing:
        others = [j for j in range(n) if j != i]
        found = None
        for size in range(0, min(r, n - 1) + 1):
            for I in itertools.combinations(others, size):
                ok = _projections_disjoint(words, i, I) if literal else _determined_by(ctx, G, i, I)
                if ok:
                    found = list(I)
                    break
            if found is not None:
                break
        if found is None:
            return False, witnesses
        witnesses[i] = found
    return True, witnesses


def syndrome(code: LrcCode, word: Sequence[int]) -> list[int]:
    return linalg.matvec(code.ctx, code.H, word)


def repair_erasure(code: LrcCode, word: Sequence[int | None]) -> int:
    """Restore the single erased symbol (marked ``None``) of a codeword.

    The repair uses the all-one row of the erasure's group (or, for a
    code without recorded groups, any low-weight row of H covering it).

    Raises:
        MultipleErasures: more than one (or no) erasure.
        NotInAnyGroup: no repair row covers the erased position.
        InconsistentWord: the restored word is not a codeword.
    """
    ctx = code.ctx
    erased = [i for i, x in enumerate(word) if x is None]
    if len(erased) != 1:
        raise MultipleErasures(f"expected exactly one erasure, found {len(erased)}")
    (i,) = erased
    row = None
    for grp in code.groups:
        if i in grp:
            row = [1 if c in set(grp) else 0 for c in range(code.n)]
            break
    if row is None:
        r = code.r if code.r is not None else code.n
        for h in code.H:
            if h[i] and sum(1 for x in h if x) <= r + 1:
                row = h
                break
    if row is None:
        raise NotInAnyGroup(f"position {i} is not covered by any repair group")
    acc = 0
    for j, (h, x) in enumerate(zip(row, word)):
        if j != i and h:
            acc = ctx.add(acc, ctx.mul(h, x))
    value = ctx.neg(ctx.div(acc, row[i]))
    restored = [value if j == i else x for j, x in enumerate(word)]
    if any(syndrome(code, restored)):
        raise InconsistentWord("word is not a codeword outside the erasure")
    return value


def random_codewords(code: LrcCode, count: int, seed: int = 0) -> list[list[int]]:
    ctx = code.ctx
    _, G = dimension_and_generator(code)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        w = [0] * code.n
        for g in G:
            a = rng.randrange(ctx.q)
            if a:
                w = [ctx.add(x, ctx.mul(a, y)) for x, y in zip(w, g)]
        out.append(w)
    return out


def singleton_defect(report: CodeReport) -> int:
    """Gap to ``n - k - ceil(k/r) + 2``; 0 means an optimal LRC.

    Raises:
        DistanceUnknown: the report has no exact distance.
    """
    if report.d_exact is None:
        raise DistanceUnknown("exact distance not computed")
    bound = singleton_upper(report.n, report.k_exact, report.r)
    defect = bound - report.d_exact
    if defect < 0:
        raise AssertionError(f"d={report.d_exact} exceeds the Singleton-type bound {bound}")
    return defect


def analyze(
    code: LrcCode,
    exact_distance: bool = False,
    verify_locality_flag: bool = False,
    independence_t: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> CodeReport:
    """Assemble a CodeReport; budget overruns leave fields None and listed in ``unknown``."""
    k, _ = dimension_and_generator(code)
    r = code.r
    t = code.params.get("t")
    report = CodeReport(
        n=code.n,
        k_exact=k,
        k_lower_bound=code.k_lower_bound,
        d_lower=t + 1 if t is not None else None,
        r=r,
    )
    locality_ok = None
    if verify_locality_flag and r is not None:
        locality_ok, _ = verify_locality(code, r)
        report.locality_certified = locality_ok
    report.d_singleton_upper = singleton_upper(code.n, k, r if locality_ok else None)
    if exact_distance:
        report.d_exact = min_distance_exact(code, budget, r=r if locality_ok else None)
        if report.d_exact is None and k > 0:
            report.unknown.append("d_exact")
    if independence_t is not None:
        try:
            report.t_independence_certified = verify_t_independence(code, independence_t, budget)
        except BudgetExceeded:
            report.unknown.append("t_independence_certified")
    return report
