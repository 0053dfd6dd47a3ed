"""Double-double arithmetic and Gaussian elimination in it.

A value is a pair ``(hi, lo)`` of floats with ``hi + lo`` the represented
number and ``|lo| <= ulp(hi) / 2``.  Only what the moment solver needs is
implemented: add, sub, mul, div and a pivoted dense solve.
"""

from __future__ import annotations

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(x, y):
    s, e = two_sum(x[0], y[0])
    t, f = two_sum(x[1], y[1])
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


def dd_neg(x):
    return (-x[0], -x[1])


def dd_sub(x, y):
    return dd_add(x, (-y[0], -y[1]))


def dd_mul(x, y):
    p, e = two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return quick_two_sum(p, e)


def dd_div(x, y):
    q1 = x[0] / y[0]
    r = dd_sub(x, dd_mul((q1, 0.0), y))
    q2 = r[0] / y[0]
    r = dd_sub(r, dd_mul((q2, 0.0), y))
    q3 = r[0] / y[0]
    q = quick_two_sum(q1, q2)
    return dd_add(q, (q3, 0.0))


def dd_abs(x):
    return dd_neg(x) if x[0] < 0.0 or (x[0] == 0.0 and x[1] < 0.0) else x


def dd_pow(x, k):
    """x**k for a non-negative integer k by repeated squaring."""
    result = (1.0, 0.0)
    base = x
    while k:
        if k & 1:
            result = dd_mul(result, base)
        base = dd_mul(base, base)
        k >>= 1
    return result


def dd_solve(A, b, singular_tol=0.0):
    """Solve ``A x = b`` with partial pivoting; entries are dd pairs.

    Returns the solution as a list of dd pairs.  Raises ``ZeroDivisionError``
    when a pivot magnitude falls to ``singular_tol`` or below.
    """
    n = len(A)
    M = [list(row) + [b[i]] for i, row in enumerate(A)]
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(M[i][k][0]))
        if abs(M[p][k][0]) <= singular_tol:
            raise ZeroDivisionError(f"singular pivot in column {k}")
        if p != k:
            M[k], M[p] = M[p], M[k]
        piv = M[k][k]
        for i in range(k + 1, n):
            if M[i][k][0] == 0.0 and M[i][k][1] == 0.0:
                continue
            f = dd_div(M[i][k], piv)
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n + 1):
                row_i[j] = dd_sub(row_i[j], dd_mul(f, row_k[j]))
            row_i[k] = (0.0, 0.0)
    x = [(0.0, 0.0)] * n
    for i in range(n - 1, -1, -1):
        acc = M[i][n]
        for j in range(i + 1, n):
            acc = dd_sub(acc, dd_mul(M[i][j], x[j]))
        x[i] = dd_div(acc, M[i][i])
    return x
