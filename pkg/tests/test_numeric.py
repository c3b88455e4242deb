from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensec import _kernel_py
from tensec.errors import InputError
from tensec.numeric import (ExactMatrix, KERNEL_BACKEND, nullspace_basis, rank,
                            scalar_from_string, scalar_to_string, solve_linear)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def mat(rows):
    return ExactMatrix(rows)


def test_scalar_string_roundtrip():
    for text in ["3", "-7", "2/5", "-11/13", "0"]:
        assert scalar_to_string(scalar_from_string(text)) == text
    assert scalar_from_string(" 4/6 ") == Fraction(2, 3)
    with pytest.raises(InputError):
        scalar_from_string("1/0")
    with pytest.raises(InputError):
        scalar_from_string("abc")


def test_identity_has_trivial_kernel():
    assert nullspace_basis(ExactMatrix.identity(2)) == []


def test_difference_matrix_kernel():
    basis = nullspace_basis(mat([[1, -1]]))
    assert basis == [(Fraction(1), Fraction(1))]


def test_empty_matrix_full_kernel():
    m = ExactMatrix([], cols=3)
    basis = nullspace_basis(m)
    assert basis == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    zero_rows = ExactMatrix([[0, 0, 0]])
    basis = nullspace_basis(zero_rows)
    assert len(basis) == 3
    for v in basis:
        assert zero_rows.mul_vector(v) == (Fraction(0),)


def test_solve_identity():
    sol = solve_linear(ExactMatrix.identity(2), [Fraction(3), Fraction(4)])
    assert sol == (Fraction(3), Fraction(4))


def test_solve_inconsistent():
    assert solve_linear(mat([[1, 1], [1, 1]]), [1, 2]) is None


def test_solve_hand_elimination():
    assert solve_linear(mat([[1, 1], [1, -1]]), [2, 0]) == (Fraction(1), Fraction(1))


def test_solve_underdetermined_free_vars_zero():
    sol = solve_linear(mat([[1, 1, 1]]), [6])
    assert sol is not None
    assert sum(sol) == 6


@st.composite
def matrices(draw):
    rows = draw(st.integers(min_value=1, max_value=5))
    cols = draw(st.integers(min_value=1, max_value=5))
    entries = draw(st.lists(st.lists(fractions, min_size=cols, max_size=cols),
                            min_size=rows, max_size=rows))
    return ExactMatrix(entries)


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_nullity_and_exactness(m):
    basis = nullspace_basis(m)
    assert rank(m) + len(basis) == m.cols
    zero = tuple(Fraction(0) for _ in range(m.rows))
    for v in basis:
        assert m.mul_vector(v) == zero


@given(matrices(), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_nullity_invariant_under_row_permutation_and_scaling(m, rng):
    rows = [list(r) for r in m.entries]
    rng.shuffle(rows)
    factors = [Fraction(rng.randint(1, 7)) for _ in rows]
    scaled = [[k * x for x in row] for k, row in zip(factors, rows)]
    assert len(nullspace_basis(ExactMatrix(scaled))) == len(nullspace_basis(m))


@given(fractions, fractions)
def test_exact_arithmetic(a, b):
    assert (a + b) - b == a


def test_backends_agree_bit_for_bit():
    if KERNEL_BACKEND != "cython":
        pytest.skip("compiled kernel not available")
    from tensec import _kernel

    rows = [
        [3, -1, 4, 1],
        [5, 9, -2, 6],
        [5, 3, 5, 8],
        [0, 0, 7, -9],
        [2, 2, 2, 2],
    ]
    for nr in range(1, 6):
        got_c = _kernel.echelon_int([r[:] for r in rows[:nr]], 4)
        got_py = _kernel_py.echelon_int([r[:] for r in rows[:nr]], 4)
        assert got_c == got_py
