"""
Exact linear algebra over Q on lists of rows.

Ranks go through fraction-free (Bareiss) elimination on integer rows;
reduced echelon forms and kernels use Fractions directly.
"""

from fractions import Fraction
from math import lcm


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def rank(rows):
    """Rank of a rational matrix, by Bareiss elimination."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[col]
            mi[col] = 0
            for j in range(col + 1, ncols):
                mi[j] = (p * mi[j] - f * m[r][j]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(rows):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows, ncols=None):
    """Basis of {x : A x = 0} as a list of Fraction vectors."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pcol in zip(red, pivots):
            v[pcol] = -row[fcol]
        basis.append(v)
    return basis


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matadd(*mats):
    return [[sum(vals) for vals in zip(*rows)] for rows in zip(*mats)]
