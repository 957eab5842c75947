"""Smith normal form over the integers, with transforms and their inverses.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so
arithmetic stays exact and empty shapes such as ``(0, 3)`` survive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


def intmat(data, shape: Optional[tuple] = None) -> np.ndarray:
    """Exact integer matrix; ``shape`` is required to build empty matrices."""
    if shape is not None and (shape[0] == 0 or shape[1] == 0):
        return np.zeros(shape, dtype=object)
    arr = np.array(data, dtype=object)
    if arr.ndim == 1 and shape is not None:
        arr = arr.reshape(shape)
    if shape is not None and arr.shape != tuple(shape):
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    return np.vectorize(int, otypes=[object])(arr) if arr.size else arr


def int_identity(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=object)
    for i in range(n):
        m[i, i] = 1
    return m


def int_zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


@dataclass
class SmithForm:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def smith_decomposition(M) -> SmithForm:
    A = intmat(M) if not isinstance(M, np.ndarray) else M.astype(object).copy()
    m, n = A.shape
    U, U_inv = int_identity(m), int_identity(m)
    V, V_inv = int_identity(n), int_identity(n)

    # Row/column operations act on A; U accumulates row ops, V column ops, and
    # the inverses are updated with the inverse operation on the other side.
    def swap_rows(i, j):
        if i != j:
            A[[i, j]] = A[[j, i]]
            U[[i, j]] = U[[j, i]]
            U_inv[:, [i, j]] = U_inv[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]
            V_inv[[i, j]] = V_inv[[j, i]]

    def add_row(src, dst, q):  # row_dst += q * row_src
        A[dst] = A[dst] + q * A[src]
        U[dst] = U[dst] + q * U[src]
        U_inv[:, src] = U_inv[:, src] - q * U_inv[:, dst]

    def add_col(src, dst, q):  # col_dst += q * col_src
        A[:, dst] = A[:, dst] + q * A[:, src]
        V[:, dst] = V[:, dst] + q * V[:, src]
        V_inv[src] = V_inv[src] - q * V_inv[dst]

    def negate_row(i):
        A[i] = -A[i]
        U[i] = -U[i]
        U_inv[:, i] = -U_inv[:, i]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i, j]), i, j) for i in range(t, m) for j in range(t, n) if A[i, j] != 0]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = A[t, t]
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    add_row(t, i, -(A[i, t] // p))
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    add_col(t, j, -(A[t, j] // p))
            rest = [(abs(A[i, t]), i, t) for i in range(t + 1, m) if A[i, t] != 0]
            rest += [(abs(A[t, j]), t, j) for j in range(t + 1, n) if A[t, j] != 0]
            if rest:
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i, j] % p != 0),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t, t] < 0:
            negate_row(t)
        t += 1
    return SmithForm(U, A, V, U_inv, V_inv)


def smith_normal_form(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(U, D, V)`` with ``U M V = D``, ``d_1 | d_2 | ...`` and ``U, V`` unimodular."""
    sf = smith_decomposition(M)
    return sf.U, sf.D, sf.V


@dataclass
class Certificate:
    """Obstruction to ``A x = b`` over the integers.

    ``row @ A`` is divisible by ``modulus`` (zero when ``modulus == 0``) while
    ``row @ b`` is not, so no integer solution can exist.
    """

    row: list
    modulus: int

    def verify(self, A, b) -> bool:
        A = np.asarray(A, dtype=object)
        w = np.array(self.row, dtype=object)
        lhs = w @ A if A.size else np.zeros(A.shape[1], dtype=object)
        rhs = int(w @ np.array(b, dtype=object)) if len(b) else 0
        if self.modulus == 0:
            return all(x == 0 for x in lhs) and rhs != 0
        return all(x % self.modulus == 0 for x in lhs) and rhs % self.modulus != 0


def solve_integer(A, b, sf: Optional[SmithForm] = None):
    """Integer solution of ``A x = b`` or a :class:`Certificate` that none exists."""
    A = np.asarray(A, dtype=object)
    m, n = A.shape
    b = np.array(list(b), dtype=object).reshape(m)
    if sf is None:
        sf = smith_decomposition(A)
    c = sf.U @ b if m else np.zeros(0, dtype=object)
    diag = sf.diagonal
    y = np.zeros(n, dtype=object)
    for k in range(m):
        d = diag[k] if k < len(diag) else 0
        if d == 0:
            if c[k] != 0:
                return Certificate([int(x) for x in sf.U[k]], 0)
        elif c[k] % d != 0:
            return Certificate([int(x) for x in sf.U[k]], d)
        else:
            y[k] = c[k] // d
    return sf.V @ y if n else y


def integer_kernel(A) -> np.ndarray:
    """Columns form a basis of the integer (saturated) kernel of ``A``."""
    A = np.asarray(A, dtype=object)
    n = A.shape[1]
    if A.shape[0] == 0:
        return int_identity(n)
    sf = smith_decomposition(A)
    return sf.V[:, sf.rank :]


def invariant_factors(M) -> list[int]:
    return smith_decomposition(M).invariant_factors


def is_unimodular(M) -> bool:
    M = np.asarray(M, dtype=object)
    if M.shape[0] != M.shape[1]:
        return False
    return all(d == 1 for d in smith_decomposition(M).diagonal)
