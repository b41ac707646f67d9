from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from rootdual import intlin

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def sympy_invariants(A):
    D = smith_normal_form(Matrix(A), domain=ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_matches_sympy(A):
    S = intlin.smith(A)
    assert intlin.matmul(intlin.matmul(S.U, A), S.V) == S.D
    diag = S.diagonal
    nz = [d for d in diag if d]
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert sorted(nz) == sympy_invariants(A)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_unimodular_factors(A):
    S = intlin.smith(A)
    for M in (S.U, S.V):
        assert abs(Matrix(M).det()) == 1


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_lattice_kernel_is_saturated_basis(A):
    n = len(A[0])
    K = intlin.lattice_kernel(A, n)
    k = len(K[0]) if K and K[0] else 0
    assert k == n - Matrix(A).rank()
    for j in range(k):
        col = [K[i][j] for i in range(n)]
        assert intlin.matvec(A, col) == [0] * len(A)
    if k:
        # saturated: the kernel basis extends to a basis of Z^n
        assert intlin.invariant_factors(K) == [1] * k


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(st.fractions(max_denominator=6), min_size=4, max_size=4))
def test_solve_mod_one_solutions_are_valid(A, b):
    b = b[:len(A)]
    z = intlin.solve_mod_one(A, b)
    if z is not None:
        assert all(Fraction(x - y).denominator == 1 for x, y in zip(intlin.matvec(A, z), b))


def test_solve_mod_one_detects_obstruction():
    # 2x = 1/2 has a solution, 0x = 1/2 does not
    assert intlin.solve_mod_one([[2]], [Fraction(1, 2)]) is not None
    assert intlin.solve_mod_one([[0]], [Fraction(1, 2)]) is None


def test_integer_inverse_rejects_nonunimodular():
    with pytest.raises(ValueError):
        intlin.integer_inverse([[2, 0], [0, 1]])


def test_subquotient_of_cyclic_complex():
    # Z/6 -> Z/6, x -> 2x ; kernel {0,3} modulo image of (x -> 3x) which is {0,3}
    sq = intlin.subquotient(1, [6], [[2]], [6], [[3]])
    assert sq.invariants == []
    sq = intlin.subquotient(1, [6], [[2]], [6], [])
    assert sq.invariants == [2]
