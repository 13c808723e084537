"""Exact dense linear algebra over the coefficient rings.

Two routines carry the whole load: a fraction-free (Bareiss) inverse used for
the Poincare-pairing matrices, and reduced row echelon form over an exact
field used to build quotient-algebra normal forms.  Matrices are plain lists
of lists; entries only need ring operators (+, -, *), equality with 0 via
``is_zero``/falsiness, and ``exact_div`` for the fraction-free path.
"""

from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ArithmeticError):
    """Raised when an exact inverse does not exist.  Never regularized."""


def _is_zero(x):
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def _exact_div(a, b):
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    return a / b


def identity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b, zero):
    rows, mid, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = zero
            for k in range(mid):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def invert_exact(m, one, zero):
    """Exact inverse by fraction-free Gaussian elimination.

    Runs a Bareiss-style Gauss-Jordan pass on [M | I]; every division along
    the way is exact in the entry ring, so the routine works verbatim over
    Q, Q[pi,pi^-1] and Q[lam].  Raises SingularMatrixError when no pivot can
    be found -- callers treat that as a hard bug (wrong basis or functional),
    so no fallback is attempted.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("invert_exact needs a square matrix")
    a = [list(row) + identity(n, one, zero)[i] for i, row in enumerate(m)]
    width = 2 * n
    prev = one
    for k in range(n):
        piv = next((r for r in range(k, n) if not _is_zero(a[r][k])), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        for i in range(n):
            if i == k:
                continue
            for j in range(width):
                if j == k:
                    continue
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = _exact_div(num, prev)
            a[i][k] = zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    if _is_zero(det):
        raise SingularMatrixError("matrix is singular")
    return [[_exact_div(a[i][n + j], det) for j in range(n)] for i in range(n)]


def rref(rows, ncols, zero=Fraction(0), one=Fraction(1)):
    """Reduced row echelon form over an exact field.

    Returns (reduced_rows, pivot_columns).  Zero rows are dropped.  Entries
    must support true division (Fraction, RatFunc).
    """
    work = [list(r) for r in rows if any(not _is_zero(x) for x in r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if not _is_zero(work[i][c])), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c]
        work[r] = [x / inv for x in work[r]]
        for i in range(len(work)):
            if i != r and not _is_zero(work[i][c]):
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    work = work[:r]
    return work, pivots


def kernel_basis(matrix, ncols, zero=Fraction(0), one=Fraction(1)):
    """Basis of the right null space of ``matrix`` (rows over an exact field)."""
    reduced, pivots = rref(matrix, ncols, zero, one)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(reduced, pivots):
            v[p] = zero - row[f]
        basis.append(v)
    return basis
