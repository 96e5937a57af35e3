"""
Exact linear algebra tests: ranks, kernels, solves over Q and F_p.

Usage:
  python scripts/linalg_test.py
"""
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

import numpy as np

from core import config
from core.errors import CertificateError, ConfigError
from core.forms.catalog import catalog
from core.linalg.fields import QQ, PrimeField, denominator_lcm
from core.linalg.sparse import (
    SparseMatrix,
    compare_ranks,
    determinant,
    inverse,
    kernel_basis,
    rank,
    rank_by_minors,
    solve,
)
from core.regularity.slots import slot_matrices

P1, P2 = config.PRIMES


def test_rank_basics():
    assert rank(SparseMatrix.identity(3)) == 3
    assert rank(SparseMatrix.zeros(4, 5)) == 0
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    assert rank(m, PrimeField(P1)) == 2
    print("PASS: rank basics")


def test_rank_depends_on_characteristic():
    # det = 2: full rank over Q, rank 1 over F_2
    m = SparseMatrix.from_dense([[1, 1], [1, -1]])
    assert rank(m, QQ) == 2
    assert rank(m, PrimeField(2)) == 1
    print("PASS: rank over Q vs F_2")


def test_rational_entries():
    m = SparseMatrix.from_dense([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert rank(m) == 1
    assert rank(m, PrimeField(P2)) == 1
    print("PASS: rational entries")


def test_rank_matches_minors_on_random_matrices():
    rng = np.random.default_rng(config.SEED)
    for _ in range(20):
        dense = [[int(x) for x in row] for row in rng.integers(-2, 3, size=(4, 5))]
        m = SparseMatrix.from_dense(dense)
        assert rank(m) == rank_by_minors(dense)
        assert rank(m.transpose()) == rank(m)
    print("PASS: rank vs brute-force minors")


def test_kernel_basis():
    m = SparseMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    basis = kernel_basis(m)
    assert len(basis) == 1
    assert not any(m.multiply_vector(basis[0]))
    assert kernel_basis(SparseMatrix.identity(3)) == []
    assert len(kernel_basis(SparseMatrix.zeros(2, 3))) == 3
    assert kernel_basis(SparseMatrix.from_dense([[1, -1]])) == [[1, 1]]
    print("PASS: kernel basis")


def test_kernel_rank_nullity():
    rng = np.random.default_rng(config.SEED + 1)
    for _ in range(10):
        dense = [[int(x) for x in row] for row in rng.integers(-1, 2, size=(5, 7))]
        m = SparseMatrix.from_dense(dense)
        assert len(kernel_basis(m)) + rank(m) == 7
        fp = PrimeField(P1)
        kp = kernel_basis(m, fp)
        assert len(kp) + rank(m, fp) == 7
    print("PASS: rank-nullity")


def test_solve():
    m = SparseMatrix.from_dense([[2, 1], [1, 3]])
    x = solve(m, [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    singular = SparseMatrix.from_dense([[1, 1], [1, 1]])
    assert solve(singular, [1, 2]) is None
    assert solve(singular, [2, 2]) is not None
    print("PASS: solve")


def test_inverse():
    m = SparseMatrix.from_dense([[2, 1], [1, 1]])
    inv = inverse(m)
    assert inv.to_dense() == [[1, -1], [-1, 2]]
    assert inverse(SparseMatrix.from_dense([[1, 2], [2, 4]])) is None
    print("PASS: inverse")


def test_determinant():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24
    print("PASS: determinant")


def test_compare_ranks():
    # det = P1: rank drops mod P1 only, which is logged, not raised
    m = SparseMatrix.from_dense([[P1, 0], [0, 1]])
    assert rank(m, QQ) == 2 and rank(m, PrimeField(P1)) == 1
    compare_ranks("det P1", 2, {P1: 1, P2: 2})
    try:
        compare_ranks("impossible", 1, {P1: 2})
    except CertificateError:
        pass
    else:
        raise AssertionError("rank mod p above the rational rank must raise CertificateError")
    print("PASS: rational vs prime ranks")


def test_slot_matrix_rank_matches_minors():
    a1 = slot_matrices(catalog("rho7").form).evaluate_at([1, 0, 0, 0, 0, 0, 0])
    dense = a1.tolist()
    assert rank(SparseMatrix.from_dense(dense)) == rank_by_minors(dense) == 2
    assert rank(SparseMatrix.from_dense(dense), PrimeField(P2)) == 2
    print("PASS: rank of A(e1) for rho")


def test_prime_field_validation():
    try:
        PrimeField(1048584)
    except ConfigError:
        pass
    else:
        raise AssertionError("composite modulus accepted")
    fp = PrimeField(P1)
    assert fp.coerce(Fraction(1, 2)) * 2 % P1 == 1
    assert fp.coerce(-1) == P1 - 1
    try:
        fp.coerce(Fraction(1, P1))
    except CertificateError:
        pass
    else:
        raise AssertionError("a denominator divisible by p has no residue")
    assert denominator_lcm([Fraction(1, 2), Fraction(5, 3), 7]) == 6
    assert denominator_lcm([]) == 1
    try:
        config.parse_primes("1048583,1048583")
    except ConfigError:
        pass
    else:
        raise AssertionError("equal primes accepted")
    try:
        config.parse_primes("7,11")
    except ConfigError:
        pass
    else:
        raise AssertionError("small primes accepted")
    print("PASS: prime field validation")


def test_sparse_storage():
    m = SparseMatrix.from_rows(2, 3, [{2: 5, 0: 0}, {1: -1}])
    assert m.rows == (((2, 5),), ((1, -1),))
    assert m.nnz() == 2
    assert m.transpose().shape == (3, 2)
    try:
        SparseMatrix.from_rows(1, 2, [{3: 1}])
    except IndexError:
        pass
    else:
        raise AssertionError("out of range column accepted")
    print("PASS: sparse storage")


if __name__ == "__main__":
    print("=" * 50)
    print("x3form linalg tests")
    print("=" * 50)

    try:
        test_rank_basics()
        test_rank_depends_on_characteristic()
        test_rational_entries()
        test_rank_matches_minors_on_random_matrices()
        test_kernel_basis()
        test_kernel_rank_nullity()
        test_solve()
        test_inverse()
        test_determinant()
        test_compare_ranks()
        test_slot_matrix_rank_matches_minors()
        test_prime_field_validation()
        test_sparse_storage()
        print("\nAll linalg tests passed.")
    except Exception as e:
        print(f"\nFAIL: linalg tests FAILED: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
