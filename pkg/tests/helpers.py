"""Shared instance builders and an independent rank oracle for the tests."""

from __future__ import annotations

import itertools

from lrcexp.builder import build_code_prime_field, build_code_rational_places
from lrcexp.curves import HermitianBackend, RationalBackend
from lrcexp.galois import field_of_order


def rank_oracle(F, rows):
    """Plain Gaussian elimination, written independently of lrcexp.linalg."""
    M = [list(r) for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][c])
        M[rank] = [F.mul(inv, x) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def brute_distance(code):
    """Minimum weight over all of F_q^n satisfying H w = 0 (tiny codes only)."""
    F, n = code.ctx, code.n
    best = None
    for w in itertools.product(range(F.q), repeat=n):
        wt = sum(1 for x in w if x)
        if wt == 0 or (best is not None and wt >= best):
            continue
        ok = True
        for row in code.H:
            acc = 0
            for h, x in zip(row, w):
                acc = F.add(acc, F.mul(h, x))
            if acc:
                ok = False
                break
        if ok:
            best = wt
    return best


def f5_instance():
    return build_code_rational_places(RationalBackend(field_of_order(5)), 2, 2, 2)


def hermitian_instance(q0=2, r=2, m=3, t=1):
    return build_code_rational_places(HermitianBackend(field_of_order(q0 * q0), q0), r, m, t)


def prime_instance(q, r, e, m, t=1, mode="single"):
    return build_code_prime_field(RationalBackend(field_of_order(q)), r, m, t, e, block_mode=mode)
