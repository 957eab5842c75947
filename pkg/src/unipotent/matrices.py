"""Dense exact matrices as lists of rows.

Everything here is field-agnostic: entries only need ``+``, ``-``, ``*``,
``/`` and comparison with ``0``.  Matrices are never mutated in place by the
public helpers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence

Matrix = List[list]


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def zeros(rows: int, cols: int, zero=0) -> Matrix:
    return [[zero] * cols for _ in range(rows)]


def identity(n: int, one=1, zero=0) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def convert(m: Matrix, coerce: Callable) -> Matrix:
    return [[coerce(x) for x in row] for row in m]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != k:
        raise ValueError(f"shape mismatch: {shape(a)} @ {shape(b)}")
    if k == 0:
        return [[0] * cols for _ in range(n)]
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a: Matrix, v: Sequence) -> list:
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError(f"shape mismatch: {shape(a)} + {shape(b)}")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError(f"shape mismatch: {shape(a)} - {shape(b)}")
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def equal(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; basis ``e_i (x) f_j`` is indexed ``i * len(f) + j``."""
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = [[0] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if x == 0:
                continue
            for k in range(rb):
                row = out[i * rb + k]
                for l in range(cb):
                    row[j * cb + l] = x * b[k][l]
    return out


def kron_all(mats: Sequence[Matrix], one=1) -> Matrix:
    out: Matrix = [[one]]
    for m in mats:
        out = kron(out, m)
    return out


def matpow(m: Matrix, k: int, one=1, zero=0) -> Matrix:
    if k < 0:
        return matpow(inverse(m), -k, one, zero)
    result = identity(len(m), one, zero)
    base = m
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def _inv(x):
    if isinstance(x, int):
        return Fraction(1, x)
    if hasattr(x, "inverse"):
        return x.inverse()
    return 1 / x


def _row_reduce(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(row) for row in m]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = _inv(a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(_row_reduce(m)[1])


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ``ZeroDivisionError`` when singular."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return []
    one = m[0][0] ** 0 if not isinstance(m[0][0], int) else 1
    zero = one - one
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m)]
    red, pivots = _row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def solve(a: Matrix, b: Sequence) -> list:
    """Unique solution of ``a x = b`` for square invertible ``a``."""
    return matvec(inverse(a), b)


def kernel(m: Matrix) -> Matrix:
    """Basis of the right null space, one vector per row."""
    rows, cols = shape(m)
    if rows == 0:
        return identity(cols)
    red, pivots = _row_reduce(m)
    sample = red[0][0]
    one = sample**0 if not isinstance(sample, int) else 1
    zero = one - one
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def column(m: Matrix, j: int) -> list:
    return [row[j] for row in m]


def from_columns(cols: Sequence[Sequence], nrows: int | None = None) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows or 0)]
    return [list(r) for r in zip(*cols)]
