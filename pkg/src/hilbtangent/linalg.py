"""Exact linear algebra: fraction-free rank, field kernels, modular ranks."""

from __future__ import annotations

import numpy as np

from .rings import QQ, Ring


def rank_rational(rows) -> int:
    """Rank of a matrix with rational entries, via integer Bareiss elimination."""
    mat = []
    for row in rows:
        lcm = 1
        for v in row:
            den = v.denominator
            if den != 1:
                g = _gcd(lcm, den)
                lcm = lcm // g * den
        mat.append([int(v * lcm) for v in row])
    return rank_bareiss(mat)


def rank_bareiss(mat) -> int:
    """Fraction-free Gaussian elimination on an integer matrix (destructive)."""
    if not mat:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if mat[r][col]), None)
        if piv is None:
            continue
        if piv != row:
            mat[row], mat[piv] = mat[piv], mat[row]
        pivot = mat[row][col]
        for r in range(row + 1, nrows):
            v = mat[r][col]
            if v == 0 and prev == 1:
                mr, mp = mat[r], mat[row]
                for c in range(col + 1, ncols):
                    mr[c] = mr[c] * pivot
                continue
            mr, mp = mat[r], mat[row]
            for c in range(col + 1, ncols):
                mr[c] = (mr[c] * pivot - v * mp[c]) // prev
            mr[col] = 0
        prev = pivot
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def rref_field(rows, ring: Ring):
    """Reduced row echelon form over a field ring.

    Returns (rref_rows, pivot_columns).  Input rows are lists of ring elements;
    the input is not mutated.
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if not ring.is_zero(mat[r][col])), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = ring.inv(mat[row][col])
        mat[row] = [ring.mul(inv, v) for v in mat[row]]
        for r in range(nrows):
            if r == row or ring.is_zero(mat[r][col]):
                continue
            factor = mat[r][col]
            mat[r] = [
                ring.sub(mat[r][c], ring.mul(factor, mat[row][c])) for c in range(ncols)
            ]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return mat[:row], pivots


def kernel_basis_field(rows, ncols: int, ring: Ring):
    """Basis of the right kernel of the matrix, as lists of ring elements."""
    if not rows:
        rref, pivots = [], []
    else:
        rref, pivots = rref_field(rows, ring)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [ring.zero()] * ncols
        vec[fc] = ring.one()
        for r, pc in enumerate(pivots):
            vec[pc] = ring.neg(rref[r][fc])
        basis.append(vec)
    return basis


def solve_field(rows, rhs, ring: Ring):
    """Solve A x = b over a field; returns one solution or None if inconsistent.

    A must have full column rank for the solution to be unique; this helper is
    used on square invertible systems.
    """
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rref, pivots = rref_field(aug, ring)
    for row in rref:
        if all(ring.is_zero(v) for v in row[:-1]) and not ring.is_zero(row[-1]):
            return None
    x = [ring.zero()] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = rref[r][-1]
    return x


def rank_mod_p(rows, p: int) -> int:
    """Rank of an integer matrix mod p (p < 2**26), vectorized elimination."""
    if not rows:
        return 0
    mat = np.array(rows, dtype=np.int64) % p
    nrows, ncols = mat.shape
    rank = 0
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        sub = mat[row:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            mat[[row, piv]] = mat[[piv, row]]
        inv = pow(int(mat[row, col]), -1, p)
        mat[row] = mat[row] * inv % p
        col_vals = mat[row + 1 :, col]
        mask = col_vals != 0
        if mask.any():
            mat[row + 1 :][mask] = (
                mat[row + 1 :][mask] - np.outer(col_vals[mask], mat[row])
            ) % p
        row += 1
        rank += 1
    return rank
