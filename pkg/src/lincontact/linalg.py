"""Exact rational linear algebra on sparse graded rows and small dense systems.

Rows are dicts mapping exponent tuples to Fractions; columns are processed
in graded lexicographic order, so a row's pivot monomial is its lowest-degree
(then lexicographically earliest) nonzero entry.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polynomials import Exponent, graded_key

SparseRow = dict


def graded_rref(rows: Sequence[SparseRow]):
    """Reduced row echelon form against graded-lex ordered columns.

    Returns ``(reduced, transform, pivots)`` where ``reduced[i] =
    sum_j transform[i][j] * rows[j]``, each nonzero reduced row has leading
    coefficient 1 at its pivot monomial, pivot monomials are distinct and
    eliminated from all other rows, and ``pivots[i]`` is the pivot exponent
    of reduced row i (None for zero rows).  Row order is preserved; no
    sorting is applied here.
    """
    m = len(rows)
    work = [dict(r) for r in rows]
    transform = [
        [Fraction(1) if i == j else Fraction(0) for j in range(m)] for i in range(m)
    ]
    pivots: list[Exponent | None] = [None] * m
    columns = sorted({e for r in work for e in r}, key=graded_key)

    for col in columns:
        pivot_row = None
        for i in range(m):
            if pivots[i] is None and work[i].get(col):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        inv = 1 / work[pivot_row][col]
        if inv != 1:
            work[pivot_row] = {e: c * inv for e, c in work[pivot_row].items()}
            transform[pivot_row] = [c * inv for c in transform[pivot_row]]
        for j in range(m):
            if j == pivot_row:
                continue
            factor = work[j].get(col)
            if not factor:
                continue
            row_j, piv = work[j], work[pivot_row]
            for e, c in piv.items():
                s = row_j.get(e, Fraction(0)) - factor * c
                if s == 0:
                    row_j.pop(e, None)
                else:
                    row_j[e] = s
            transform[j] = [
                a - factor * b for a, b in zip(transform[j], transform[pivot_row])
            ]
        pivots[pivot_row] = col
    return work, transform, pivots


def sparse_rank(rows: Sequence[SparseRow]) -> int:
    """Rank of a list of sparse rows over Q."""
    _, _, pivots = graded_rref(rows)
    return sum(1 for p in pivots if p is not None)


def row_space_equal(rows_a: Sequence[SparseRow], rows_b: Sequence[SparseRow]) -> bool:
    """True iff the two row lists span the same subspace."""
    ra = sparse_rank(rows_a)
    rb = sparse_rank(rows_b)
    return ra == rb == sparse_rank(list(rows_a) + list(rows_b))


def solve_dense(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve a dense rational linear system A x = b.

    Returns one exact solution with every free variable set to zero, or
    None when the system is inconsistent.
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError("row/rhs length mismatch")
    n = len(rows[0]) if m else 0
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivot_cols = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivot_cols):
        x[col] = aug[i][n]
    return x
