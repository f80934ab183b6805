"""Exact Gaussian elimination over the scalar field of a base ring."""

from __future__ import annotations

from .rings import BaseRing


def _pivot(base: BaseRing, rows, col, start):
    for r in range(start, len(rows)):
        if not base.is_zero(rows[r][col]):
            return r
    return None


def rref(base: BaseRing, rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        pr = _pivot(base, rows, c, r)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = base.invert(rows[r][c])
        rows[r] = [base.mul(x, inv) for x in rows[r]]
        for rr in range(len(rows)):
            if rr != r and not base.is_zero(rows[rr][c]):
                f = rows[rr][c]
                rows[rr] = [
                    base.add(x, base.neg(base.mul(f, y))) for x, y in zip(rows[rr], rows[r])
                ]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(base: BaseRing, rows) -> int:
    _, pivots = rref(base, rows)
    return len(pivots)


def solve(base: BaseRing, rows, rhs):
    """One solution of rows * x = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(base, aug)
    ncols = len(rows[0]) if rows else 0
    if ncols in pivots:
        return None  # pivot in the constants column
    x = [base.zero()] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][-1]
    return x


def kernel_basis(base: BaseRing, rows, ncols):
    """Basis of the right kernel of the matrix (list of coordinate vectors)."""
    red, pivots = rref(base, [list(r) for r in rows]) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [base.zero()] * ncols
        v[fc] = base.one()
        for i, pc in enumerate(pivots):
            v[pc] = base.neg(red[i][fc])
        basis.append(v)
    return basis
