"""Small exact linear algebra helpers over ZZ and QQ.

Everything in this package works with tiny matrices (ambient dimensions
are single digits, chain groups a few dozen), so plain Fraction Gaussian
elimination and textbook Smith reduction are fast enough and keep all
arithmetic exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def det(rows):
    """Exact determinant of a square matrix (ints or Fractions)."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
    out = Fraction(sign)
    for i in range(n):
        out *= a[i][i]
    return out


def solve(rows, rhs):
    """Solve A x = b exactly.  Returns a list of Fractions, or None if the
    system is singular or inconsistent.  A may be rectangular (m x n with
    m >= n, full column rank expected)."""
    m, n = len(rows), len(rows[0]) if rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(row, m) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[row], a[piv] = a[piv], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for r in range(m):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    if len(pivots) < n:
        return None
    for r in range(row, m):
        if a[r][n] != 0:
            return None
    return [a[i][n] for i in range(n)]


def rank(rows):
    """Rank over QQ."""
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    a = [[Fraction(x) for x in row] for row in rows]
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


def primitive(vec):
    """(primitive direction, positive multiplier) for a nonzero int vector."""
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in vec), g


def smith_invariants(rows):
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.

    Plain row/column reduction with a smallest-pivot heuristic; entries stay
    Python ints so there is no overflow to worry about.
    """
    if not rows or not rows[0]:
        return []
    a = [list(map(int, row)) for row in rows]
    m, n = len(a), len(a[0])
    invariants = []
    top = 0
    while True:
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best[0]):
                    best = (abs(a[i][j]), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        while True:
            p = a[top][top]
            dirty = False
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // p
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // p
                    for i in range(top, m):
                        a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for i in range(top, m):
                            a[i][top], a[i][j] = a[i][j], a[i][top]
                        dirty = True
                        break
            if not dirty:
                break
        # pivot must divide the remaining block
        p = abs(a[top][top])
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(top, n):
                a[top][j] += a[offender][j]
            continue
        invariants.append(p)
        top += 1
        if top == min(m, n):
            break
    return invariants


def exterior_power(rows, p, shape=None):
    """p-th exterior power of a linear map given as an (m x n) matrix.

    Result is C(m,p) x C(n,p), entries the p x p minors, with row/column
    index sets ordered lexicographically.  p = 0 gives the 1 x 1 identity.
    """
    if shape is not None:
        m, n = shape
    else:
        m, n = len(rows), len(rows[0]) if rows else 0
    if p == 0:
        return [[1]]
    rsets = list(combinations(range(m), p))
    csets = list(combinations(range(n), p))
    out = []
    for rs in rsets:
        line = []
        for cs in csets:
            minor = [[rows[i][j] for j in cs] for i in rs]
            line.append(int(det(minor)))
        out.append(line)
    return out


def matmul(a, b):
    """Integer matrix product."""
    if not a or not b:
        return []
    n = len(b)
    return [[sum(row[k] * b[k][j] for k in range(n)) for j in range(len(b[0]))] for row in a]


def symmetric_signature(gram):
    """Signature (n_+ minus n_-) of a rational symmetric matrix.

    Congruence diagonalization; a zero diagonal with a nonzero off-diagonal
    entry is handled by the hyperbolic-plane trick (contributes 0).
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    sig = 0
    live = list(range(n))
    while live:
        k = next((i for i in live if a[i][i] != 0), None)
        if k is None:
            pair = None
            for i in live:
                for j in live:
                    if i != j and a[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # remaining block is zero: contributes nothing
            i, j = pair
            # replace basis vector e_i by e_i + e_j to expose a nonzero diagonal
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            k = i
        sig += 1 if a[k][k] > 0 else -1
        for r in live:
            if r != k and a[r][k] != 0:
                f = a[r][k] / a[k][k]
                for c in range(n):
                    a[r][c] -= f * a[k][c]
                for c in range(n):
                    a[c][r] -= f * a[c][k]
        live.remove(k)
    return sig
