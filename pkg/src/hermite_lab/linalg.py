"""Dense exact linear algebra over a :class:`FieldSpec`.

Matrices are lists of rows of raw field values.  Prime fields go through the
int64 row-reduction kernel; the rationals use fraction arithmetic, with a
modular shortcut for rank when the matrix is integral.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from ._kernels import MAX_MODULUS, rref_mod_p
from .errors import ShapeMismatch, SingularMatrix
from .field import FieldSpec

# large prime used to certify rank over Q for integer matrices
CERT_PRIME = 2147483647


def _shape(a) -> tuple:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    return rows, cols


def _rref_rational(a: Sequence[Sequence], ncols: int):
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pr = m[r]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row = m[i]
                m[i] = [x - f * y if y else x for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
    field = FieldSpec.rationals()
    return [[field.reduce(x) for x in row] for row in m], pivots


def rref(a: Sequence[Sequence], field: FieldSpec, ncols: int | None = None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    rows, cols = _shape(a)
    if ncols is not None:
        cols = ncols
    if rows == 0:
        return [], []
    p = field.modulus
    if p is not None:
        arr = np.array([[int(x) for x in row] for row in a], dtype=np.int64).reshape(rows, cols)
        red, piv = rref_mod_p(arr, p)
        return red.tolist(), piv.tolist()
    return _rref_rational(a, cols)


def rank(a: Sequence[Sequence], field: FieldSpec) -> int:
    rows, cols = _shape(a)
    if rows == 0 or cols == 0:
        return 0
    if field.modulus is None and all(type(x) is int for row in a for x in row):
        # rank over Q >= rank mod any prime; equality with min(rows, cols) certifies.
        r = rank_mod(a, CERT_PRIME)
        if r == min(rows, cols):
            return r
    return len(rref(a, field)[1])


def rank_mod(a: Sequence[Sequence], p: int) -> int:
    if p >= MAX_MODULUS:
        raise ValueError("modulus too large")
    arr = np.array([[int(x) % p for x in row] for row in a], dtype=np.int64)
    if arr.size == 0:
        return 0
    return len(rref_mod_p(arr, p)[1])


def nullspace(a: Sequence[Sequence], field: FieldSpec, ncols: int | None = None) -> list:
    """Basis of ``{x : A x = 0}`` in canonical form.

    Each basis vector has a 1 at one free column and 0 at the others; the
    vectors are listed by increasing free column.
    """
    rows, cols = _shape(a)
    if ncols is not None:
        cols = ncols
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    red, piv = rref(a, field, cols)
    pivset = set(piv)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [0] * cols
        v[free] = 1
        for r, pc in enumerate(piv):
            if red[r][free]:
                v[pc] = field.reduce(-red[r][free])
        basis.append(v)
    return basis


def row_space_basis(a: Sequence[Sequence], field: FieldSpec, ncols: int | None = None) -> list:
    """Nonzero rows of the RREF (canonical basis of the row space)."""
    if not a:
        return []
    red, piv = rref(a, field, ncols)
    return red[: len(piv)]


def solve(a: Sequence[Sequence], b: Sequence, field: FieldSpec):
    """One solution of ``A x = b`` or ``None`` if the system is inconsistent."""
    rows, cols = _shape(a)
    if rows != len(b):
        raise ShapeMismatch("right-hand side length differs from row count")
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, piv = rref(aug, field, cols + 1)
    if cols in piv:
        return None
    x = [0] * cols
    for r, pc in enumerate(piv):
        x[pc] = red[r][cols]
    return x


def det(a: Sequence[Sequence], field: FieldSpec):
    n, cols = _shape(a)
    if n != cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    if n == 0:
        return field.one
    p = field.modulus
    if p is not None:
        m = [[int(x) % p for x in row] for row in a]
    else:
        m = [[Fraction(x) for x in row] for row in a]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        pv = m[c][c]
        d = d * pv
        inv = pow(pv, -1, p) if p is not None else 1 / pv
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
                if p is not None:
                    m[i] = [x % p for x in m[i]]
        if p is not None:
            d %= p
    return field.reduce(d)


def inverse(a: Sequence[Sequence], field: FieldSpec) -> list:
    n, cols = _shape(a)
    if n != cols:
        raise ShapeMismatch("inverse of a non-square matrix")
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, field, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in red[:n]]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: FieldSpec) -> list:
    n, k = _shape(a)
    k2, m = _shape(b)
    if k != k2:
        raise ShapeMismatch(f"cannot multiply {n}x{k} by {k2}x{m}")
    bt = list(zip(*b)) if b else []
    return [[field.reduce(sum(x * y for x, y in zip(row, col) if x and y)) for col in bt] for row in a]


def transpose(a: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*a)]


def identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
