"""Exact Gauss-Jordan over the rationals for the small dense systems of one graded piece."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrixError(ArithmeticError):
    pass


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix; rows are kept sparse during elimination."""
    n = len(matrix)
    rows = []
    for i, r in enumerate(matrix):
        if len(r) != n:
            raise ValueError("matrix is not square")
        d = {j: Fraction(x) for j, x in enumerate(r) if x}
        d[n + i] = Fraction(1)
        rows.append(d)
    for col in range(n):
        pivot = next((r for r in range(col, n) if col in rows[r]), None)
        if pivot is None:
            raise SingularMatrixError(f"no pivot in column {col}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        if inv != 1:
            for j in prow:
                prow[j] *= inv
        for r in range(n):
            if r == col:
                continue
            row = rows[r]
            c = row.get(col)
            if not c:
                continue
            for j, x in prow.items():
                y = row.get(j, 0) - c * x
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
    return [[rows[i].get(n + j, Fraction(0)) for j in range(n)] for i in range(n)]


def vec_mat(vec: Sequence, mat: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    n = len(mat[0]) if mat else 0
    out = [Fraction(0)] * n
    for a, row in zip(vec, mat):
        if a:
            for j, x in enumerate(row):
                if x:
                    out[j] += a * x
    return out


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [vec_mat(row, b) for row in a]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
