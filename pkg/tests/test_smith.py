import random

import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from jordanbounds.rootsystems import admissible_types, cartan_matrix
from jordanbounds.smith import diagonal, invariant_factors, smith_normal_form


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def _check(mat):
    D, U, V = smith_normal_form(mat)
    n, m = len(mat), len(mat[0])
    assert _matmul(_matmul(U, [list(r) for r in mat]), V) == D
    assert abs(sympy.Matrix(U).det()) == 1
    assert abs(sympy.Matrix(V).det()) == 1
    diag = diagonal(D)
    for i in range(len(diag)):
        for j in range(n):
            if j != i and j < m:
                assert D[i][j] == 0
        assert diag[i] >= 0
    nonzero = [d for d in diag if d]
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    return diag


def test_identity_and_zero():
    assert diagonal(smith_normal_form([[1, 0], [0, 1]])[0]) == (1, 1)
    assert diagonal(smith_normal_form([[0, 0], [0, 0]])[0]) == (0, 0)


def test_small_known_forms():
    assert invariant_factors([[2]]) == (2,)
    assert invariant_factors([[2, 0], [0, 3]]) == (6,)  # Z2 x Z3 = Z6
    assert invariant_factors([[4, 0], [0, 2]]) == (2, 4)
    _check([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])


def test_random_matrices_against_sympy():
    rng = random.Random(20240)
    for _ in range(60):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        mat = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)]
        diag = _check(mat)
        expected = sympy_snf(sympy.Matrix(mat), domain=sympy.ZZ)
        exp_diag = [abs(int(expected[i, i])) for i in range(min(n, m))]
        # sympy may order zero rows differently; compare nonzero invariant chains
        assert sorted(d for d in diag if d) == sorted(d for d in exp_diag if d)


def test_cartan_cokernels_match_centers():
    for t in admissible_types(20):
        assert invariant_factors(cartan_matrix(t)) == t.center_factors
