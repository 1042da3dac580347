import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modp_intersect import (
    FieldElement,
    MatrixFp,
    NotASubspace,
    PrimeModulus,
    ZeroInverse,
    field_inverse,
    is_prime,
    kernel_basis,
    quotient_dimension,
    rank,
)

PRIMES_TO_101 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101]


def test_is_prime_small():
    found = [n for n in range(110) if is_prime(n)]
    assert found == PRIMES_TO_101 + [103, 107, 109]


def test_is_prime_large_words():
    assert is_prime(2**31 - 1)  # Mersenne
    assert not is_prime(2**31 - 3)


def test_prime_modulus_rejects_bad_values():
    with pytest.raises(ValueError):
        PrimeModulus(1)
    with pytest.raises(ValueError):
        PrimeModulus(91)  # 7 * 13
    with pytest.raises(ValueError):
        PrimeModulus(2**31)


def test_field_inverse_examples():
    assert field_inverse(FieldElement(1, PrimeModulus(5))).value == 1
    assert field_inverse(FieldElement(2, PrimeModulus(5))).value == 3
    with pytest.raises(ZeroInverse):
        field_inverse(FieldElement(0, PrimeModulus(7)))


@pytest.mark.parametrize("p", PRIMES_TO_101)
def test_field_inverse_exhaustive(p):
    pm = PrimeModulus(p)
    for a in range(1, p):
        elem = FieldElement(a, pm)
        assert (elem * field_inverse(elem)).value == 1


def test_field_element_reduces_and_computes():
    pm = PrimeModulus(7)
    a = FieldElement(10, pm)
    assert a.value == 3
    assert (a + 5).value == 1
    assert (a - FieldElement(4, pm)).value == 6
    assert (-a).value == 4
    assert bool(FieldElement(0, pm)) is False


def test_rank_examples():
    assert rank(MatrixFp.identity(2, PrimeModulus(3))) == 2
    assert rank(MatrixFp([[1, 1], [1, 1]], PrimeModulus(2))) == 1
    assert rank(MatrixFp([[1, 2], [2, 4]], PrimeModulus(5))) == 1


def test_kernel_examples():
    assert kernel_basis(MatrixFp.identity(2, PrimeModulus(3))) == []
    basis = kernel_basis(MatrixFp([[1, 1]], PrimeModulus(2)))
    assert [list(map(int, v)) for v in basis] == [[1, 1]]
    zero = MatrixFp.zeros(2, 3, PrimeModulus(5))
    assert len(kernel_basis(zero)) == 3


def test_quotient_dimension_examples():
    pm = PrimeModulus(3)
    eye = MatrixFp.identity(2, pm)
    assert quotient_dimension(eye, MatrixFp([[1, 0]], pm)) == 1
    assert quotient_dimension(eye, eye) == 0
    pm2 = PrimeModulus(2)
    assert quotient_dimension(MatrixFp.identity(2, pm2),
                              MatrixFp([[1, 1]], pm2)) == 1


def test_quotient_dimension_rejects_non_subspace():
    pm = PrimeModulus(5)
    a = MatrixFp([[1, 0, 0]], pm)
    b = MatrixFp([[0, 1, 0]], pm)
    with pytest.raises(NotASubspace):
        quotient_dimension(a, b)


def test_pivot_rule_is_first_nonzero():
    # column 0 is zero, the pivot of row 0 lands in column 1
    m = MatrixFp([[0, 2, 1], [0, 0, 3]], PrimeModulus(5))
    assert m.pivot_columns() == (1, 2)


@st.composite
def fp_matrices(draw):
    p = draw(st.sampled_from((2, 3, 5, 7)))
    rows = draw(st.integers(1, 12))
    cols = draw(st.integers(1, 12))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols,
                            max_size=rows * cols))
    grid = np.array(entries, dtype=np.int64).reshape(rows, cols)
    return MatrixFp(grid, PrimeModulus(p))


@given(fp_matrices())
@settings(max_examples=150, deadline=None)
def test_rank_plus_nullity(m):
    assert m.rank() + len(m.kernel_basis()) == m.cols


@given(fp_matrices())
@settings(max_examples=150, deadline=None)
def test_rank_equals_transpose_rank(m):
    assert m.rank() == m.transpose().rank()


@given(fp_matrices())
@settings(max_examples=100, deadline=None)
def test_kernel_vectors_annihilate(m):
    p = m.modulus.p
    for vec in m.kernel_basis():
        assert np.all(m.array @ vec % p == 0)


@given(fp_matrices(), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_quotient_of_row_subset_nonnegative(m, rnd):
    take = sorted(rnd.sample(range(m.rows), rnd.randint(0, m.rows)))
    sub = MatrixFp(m.array[take].reshape(len(take), m.cols), m.modulus)
    assert quotient_dimension(m, sub) >= 0


def test_large_random_dims_rank_nullity():
    rng = np.random.default_rng(20240817)
    for p in (2, 3, 5, 7):
        pm = PrimeModulus(p)
        for _ in range(5):
            rows, cols = rng.integers(1, 41, size=2)
            m = MatrixFp(rng.integers(0, p, size=(rows, cols)), pm)
            assert m.rank() + len(m.kernel_basis()) == m.cols
            assert m.rank() == m.transpose().rank()
