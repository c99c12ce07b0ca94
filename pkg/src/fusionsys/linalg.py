"""Exact Gaussian elimination over the rationals."""
from fractions import Fraction

import numpy as np

CHECK_PRIME = 2147483629


class SingularSystem(ArithmeticError):
    pass


def _echelon(rows, ncols):
    """In-place row reduction; returns pivot columns and the determinant sign/product."""
    pivots, det, r = [], Fraction(1), 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            det = Fraction(0)
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            det = -det
        lead = rows[r][c]
        det *= lead
        inv = 1 / lead
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots, det


def solve(matrix, rhs):
    """Solve A x = b exactly; A must be square and nonsingular."""
    n = len(matrix)
    rows = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    if any(len(row) != n + 1 for row in rows):
        raise ValueError("matrix must be square")
    pivots, _ = _echelon(rows, n)
    if len(pivots) < n:
        raise SingularSystem(f"matrix of size {n} has rank {len(pivots)}")
    return [rows[i][n] for i in range(n)]


def rank(matrix):
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    return len(_echelon(rows, len(rows[0]))[0])


def determinant(matrix):
    n = len(matrix)
    rows = [[Fraction(x) for x in row] for row in matrix]
    pivots, det = _echelon(rows, n)
    return det if len(pivots) == n else Fraction(0)


def rank_mod(matrix, prime=CHECK_PRIME):
    """Rank of an integer matrix modulo a prime below 2^31."""
    a = np.array(matrix, dtype=np.int64) % prime
    if a.size == 0:
        return 0
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, prime) % prime
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows] = (a[rows] - col[rows, None] * a[r]) % prime
        r += 1
        if r == nrows:
            break
    return r


def is_nonsingular(matrix):
    """Exact test; a full rank mod a large prime certifies it quickly."""
    n = len(matrix)
    if n and all(Fraction(x).denominator == 1 for row in matrix for x in row):
        if rank_mod([[int(x) for x in row] for row in matrix]) == n:
            return True
    return determinant(matrix) != 0
