"""Smith normal form over the integers, with transform matrices.

Used to read finite abelian invariants off integer matrices, in particular
the center of a simply connected group as the cokernel of its Cartan matrix.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(mat: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with U*mat*V = D diagonal, U and V unimodular,
    diagonal entries non-negative and each dividing the next."""
    A = [[int(x) for x in row] for row in mat]
    n = len(A)
    m = len(A[0]) if n else 0
    U = _identity(n)
    V = _identity(m)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(n, m):
        # pivot: smallest-magnitude nonzero entry of the trailing block
        piv = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv != (t, t):
            if piv[0] != t:
                swap_rows(t, piv[0])
            if piv[1] != t:
                swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(j, t)
                        dirty = True
        # divisibility: pivot must divide the whole trailing block
        fixed = True
        for i in range(t + 1, n):
            if any(A[i][j] % A[t][t] for j in range(t + 1, m)):
                add_row(t, i, 1)
                fixed = False
                break
        if fixed:
            t += 1
    for i in range(min(n, m)):
        if A[i][i] < 0:
            A[i] = [-x for x in A[i]]
            U[i] = [-x for x in U[i]]
    return A, U, V


def diagonal(D: Matrix) -> Tuple[int, ...]:
    return tuple(D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)))


def invariant_factors(mat: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Nontrivial invariant factors (> 1) of the cokernel of an integer matrix."""
    D, _, _ = smith_normal_form(mat)
    return tuple(d for d in diagonal(D) if d not in (0, 1))
