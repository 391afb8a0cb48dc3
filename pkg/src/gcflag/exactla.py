"""Exact linear algebra over the rationals (fractions.Fraction).

Small dense problems only; everything here is O(n^3) Gaussian elimination
with exact arithmetic.
"""

from fractions import Fraction


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        if not float(x).is_integer():
            raise TypeError("refusing to coerce non-integral float %r exactly" % x)
        return Fraction(int(x))
    raise TypeError("cannot coerce %r to Fraction" % (x,))


def det(rows):
    """Exact determinant of a square matrix (list of rows of Fractions)."""
    n = len(rows)
    a = [[to_fraction(x) for x in row] for row in rows]
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / a[col][col]
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    result = Fraction(sign)
    for i in range(n):
        result *= a[i][i]
    return result


def rank(rows):
    """Exact rank of a (possibly rectangular) matrix."""
    if not rows:
        return 0
    a = [[to_fraction(x) for x in row] for row in rows]
    m, n = len(a), len(a[0])
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            if a[i][col] != 0:
                f = a[i][col] / a[r][col]
                for c in range(col, n):
                    a[i][c] -= f * a[r][c]
        r += 1
        if r == m:
            break
    return r


def solve(rows, rhs):
    """Solve a square system exactly; returns None if singular."""
    n = len(rows)
    a = [[to_fraction(x) for x in row] + [to_fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / inv
                for c in range(col, n + 1):
                    a[r][c] -= f * a[col][c]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def affine_dim(points):
    """Dimension of the affine hull of a set of rational points (-1 if empty)."""
    pts = list(points)
    if not pts:
        return -1
    p0 = pts[0]
    diffs = [[to_fraction(x) - to_fraction(y) for x, y in zip(p, p0)] for p in pts[1:]]
    return rank(diffs) if diffs else 0
