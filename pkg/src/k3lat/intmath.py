"""Exact integer and rational matrix arithmetic.

Everything here works over Python ints and fractions.Fraction; no floating
point is used anywhere.  Matrices are lists of lists in row-major order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import DegenerateLattice, ShapeError

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    if not a or not b:
        return []
    if len(a[0]) != len(b):
        raise ShapeError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    if len(a[0]) != len(v):
        raise ShapeError(f"cannot apply {len(a)}x{len(a[0])} to vector of length {len(v)}")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def check_rectangular(m, rows: int | None = None, cols: int | None = None) -> tuple[int, int]:
    """Validate that m is rectangular; return (rows, cols)."""
    r = len(m)
    c = len(m[0]) if r else 0
    if any(len(row) != c for row in m):
        raise ShapeError("ragged matrix")
    if rows is not None and r != rows:
        raise ShapeError(f"expected {rows} rows, got {r}")
    if cols is not None and c != cols:
        raise ShapeError(f"expected {cols} columns, got {c}")
    return r, c


def det(mat: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    check_rectangular(mat, n, n)
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(mat: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (S, D, T) with S*mat*T = D, S and T unimodular, D diagonal.

    The nonzero diagonal entries of D are positive and each divides the next.
    """
    r, c = check_rectangular(mat) if mat else (0, 0)
    a = [row[:] for row in mat]
    s = identity(r)
    t = identity(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in t:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        s[i] = [-x for x in s[i]]

    n = min(r, c)
    for k in range(n):
        # Find a nonzero pivot in the remaining submatrix.
        pivot = None
        for i in range(k, r):
            for j in range(k, c):
                if a[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        while True:
            # Clear column k below the pivot.
            again = False
            for i in range(k + 1, r):
                if a[i][k] == 0:
                    continue
                if a[i][k] % a[k][k] == 0:
                    add_row(i, k, -(a[i][k] // a[k][k]))
                else:
                    q = a[i][k] // a[k][k]
                    add_row(i, k, -q)
                    swap_rows(i, k)
                    again = True
            for j in range(k + 1, c):
                if a[k][j] == 0:
                    continue
                if a[k][j] % a[k][k] == 0:
                    add_col(j, k, -(a[k][j] // a[k][k]))
                else:
                    q = a[k][j] // a[k][k]
                    add_col(j, k, -q)
                    swap_cols(j, k)
                    again = True
            if again:
                continue
            # Pivot must divide every remaining entry; if not, fold the
            # offending row into row k and restart the reduction.
            offender = None
            for i in range(k + 1, r):
                for j in range(k + 1, c):
                    if a[i][j] % a[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(k, offender, 1)
    for k in range(n):
        if a[k][k] < 0:
            negate_row(k)
    return s, a, t


def invariant_factors(mat: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in order."""
    _, d, _ = smith_normal_form(mat)
    out = []
    for k in range(min(len(d), len(d[0]) if d else 0)):
        if d[k][k] != 0:
            out.append(d[k][k])
    return out


def functional_solutions(c: list[int], k: int) -> tuple[list[int] | None, list[list[int]]]:
    """Integer solutions of the single equation c . v = k.

    Returns (particular, kernel_basis) where particular is None when no
    integer solution exists.  kernel_basis is a list of n-vectors spanning
    the solutions of c . v = 0 (length n-1 when c is nonzero, n when c = 0).
    """
    n = len(c)
    if all(x == 0 for x in c):
        basis = [row[:] for row in identity(n)]
        return ([0] * n if k == 0 else None), basis
    s, d, t = smith_normal_form([list(c)])
    d0 = d[0][0]
    # s is 1x1 with entry +-1, so c . (t columns) = (d0/s00, 0, ..., 0).
    lead = d0 * s[0][0]
    cols = transpose(t)
    kernel = [list(col) for col in cols[1:]]
    if k % lead != 0:
        return None, kernel
    q = k // lead
    particular = [q * x for x in cols[0]]
    return particular, kernel


def signature_of(gram: IntMatrix) -> tuple[int, int]:
    """Signature (positive, negative eigenvalue counts) of a symmetric
    integer matrix, computed by exact congruence diagonalization."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                other = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if other is None:
                    raise DegenerateLattice("symmetric matrix is singular")
                # Fold row/col `other` into k; the new diagonal entry is
                # 2*a[k][other] which is nonzero.
                for j in range(n):
                    a[k][j] += a[other][j]
                for i in range(n):
                    a[i][k] += a[i][other]
        pivot = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
                for j in range(k, n):
                    a[j][i] -= f * a[j][k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg


def frac_inverse(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a nonsingular rational matrix by Gauss-Jordan elimination."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            raise DegenerateLattice("matrix is singular")
        a[k], a[pivot_row] = a[pivot_row], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def ldl_decompose(p: list[list[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Decompose a positive definite rational matrix P so that

        t^T P t  ==  sum_i d[i] * (t_i + sum_{j>i} u[i][j] * t_j)^2.

    Raises DegenerateLattice if P is not positive definite.
    """
    n = len(p)
    a = [[Fraction(x) for x in row] for row in p]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise DegenerateLattice("matrix is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] -= a[i][j] * a[i][k] / d[i]
                a[k][j] = a[j][k]
    return d, u


def sqrt_floor(x: Fraction | int) -> int:
    """Largest integer m >= 0 with m*m <= x; requires x >= 0."""
    f = Fraction(x)
    if f < 0:
        raise ValueError("negative radicand")
    m = isqrt(f.numerator // f.denominator)
    while (m + 1) * (m + 1) * f.denominator <= f.numerator:
        m += 1
    return m


def sqrt_ceil(x: Fraction | int) -> int:
    """Smallest integer m >= 0 with m*m >= x; requires x >= 0."""
    f = Fraction(x)
    if f < 0:
        raise ValueError("negative radicand")
    m = isqrt(f.numerator // f.denominator)
    while m * m * f.denominator < f.numerator:
        m += 1
    return m


def gcd_vector(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def lll_reduce(basis: list[list[int]], form: IntMatrix) -> list[list[int]]:
    """LLL-reduce integer vectors under a bilinear form that is positive
    definite on their span.  Exact arithmetic, delta = 3/4.

    The span is unchanged; only the basis gets shorter.  Gram-Schmidt data
    is recomputed from the Gram matrix after every mutation, which is cheap
    at the ranks used here (at most 9).
    """
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return b

    def pair(u, v):
        return vec_dot(u, mat_vec(form, v))

    def gram_schmidt():
        g = [[pair(b[i], b[j]) for j in range(n)] for i in range(n)]
        mu = [[Fraction(0)] * n for _ in range(n)]
        bnorm = [Fraction(0)] * n
        for i in range(n):
            bnorm[i] = Fraction(g[i][i])
            for j in range(i):
                mu[i][j] = Fraction(g[i][j])
                for k in range(j):
                    mu[i][j] -= mu[i][k] * mu[j][k] * bnorm[k]
                mu[i][j] /= bnorm[j]
                bnorm[i] -= mu[i][j] * mu[i][j] * bnorm[j]
        return mu, bnorm

    delta = Fraction(3, 4)
    k = 1
    mu, bnorm = gram_schmidt()
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                r = round(mu[k][j])
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                mu, bnorm = gram_schmidt()
        if bnorm[k] >= (delta - mu[k][k - 1] ** 2) * bnorm[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, bnorm = gram_schmidt()
            k = max(k - 1, 1)
    return b
