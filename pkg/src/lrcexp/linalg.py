"""Gaussian elimination over F_q on integer-encoded matrices (lists of rows)."""

from __future__ import annotations

from typing import Sequence

from .errors import RankDeficient

Matrix = list


def rref(ctx, M: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        found = next((i for i in range(row, nrows) if R[i][col]), None)
        if found is None:
            continue
        R[row], R[found] = R[found], R[row]
        inv = ctx.inv(R[row][col])
        R[row] = [ctx.mul(inv, x) for x in R[row]]
        prow = R[row]
        for i in range(nrows):
            c = R[i][col]
            if i != row and c:
                R[i] = [ctx.sub(a, ctx.mul(c, b)) for a, b in zip(R[i], prow)]
        pivots.append(col)
        row += 1
    return R, pivots


def rank(ctx, M: Sequence[Sequence[int]]) -> int:
    return len(rref(ctx, M)[1])


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*M)]


def nullspace(ctx, M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis (as rows) of ``{x : M x = 0}``."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(ctx, M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = ctx.neg(R[i][f])
        basis.append(v)
    return basis


def solve(ctx, A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """Solve the square invertible system ``A x = b``."""
    n = len(A)
    if n == 0:
        return []
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, pivots = rref(ctx, aug)
    if pivots != list(range(n)):
        raise RankDeficient("system matrix is singular")
    return [R[i][n] for i in range(n)]


def matvec(ctx, M: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    out = []
    for row in M:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = ctx.add(acc, ctx.mul(a, x))
        out.append(acc)
    return out


def matmul(ctx, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = transpose(B)
    return [[sum_products(ctx, row, col) for col in Bt] for row in A]


def sum_products(ctx, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def independent_rows(ctx, M: Sequence[Sequence[int]], prefer: Sequence[int] = ()) -> list[int]:
    """Greedy maximal set of linearly independent row indices.

    Rows listed in ``prefer`` are tried first, then the rest in order.
    """
    order = list(prefer) + [i for i in range(len(M)) if i not in set(prefer)]
    chosen: list[int] = []
    basis = EchelonBasis(ctx)
    for i in order:
        if basis.add(M[i]):
            chosen.append(i)
    return sorted(chosen)


class EchelonBasis:
    """Incrementally maintained echelon basis; supports push/pop for DFS."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence[int]) -> list[int]:
        ctx = self.ctx
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [ctx.sub(a, ctx.mul(c, b)) for a, b in zip(v, row)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        """Append ``v``; return False (and leave the basis unchanged) if dependent."""
        w = self.reduce(v)
        pc = next((i for i, x in enumerate(w) if x), None)
        if pc is None:
            return False
        inv = self.ctx.inv(w[pc])
        self.rows.append([self.ctx.mul(inv, x) for x in w])
        self.pivots.append(pc)
        return True

    def pop(self) -> None:
        self.rows.pop()
        self.pivots.pop()

    def __len__(self) -> int:
        return len(self.rows)
