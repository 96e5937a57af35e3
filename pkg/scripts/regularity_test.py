"""
Regularity tests: slot matrices, nondegeneracy, 3-regularity, Lie closure,
stabilizers and the commutator/wedge correspondence.

Usage:
  python scripts/regularity_test.py
"""
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

import numpy as np

from core import config
from core.algebra.presentation import presentation
from core.algebra.tower import graded_dimension
from core.forms.catalog import alpha_p, alpha_plane, catalog
from core.forms.three_form import gl_transform, random_form, random_unimodular, zero_form
from core.regularity.intertwiners import (
    intertwiner_space,
    is_intertwiner,
    is_nondegenerate,
    is_three_regular,
)
from core.regularity.lie import commutator_wedge_check, lie_closure, stabilizer_dimension
from core.regularity.slots import block_matrix_au, block_matrix_check, slot_matrices

A_RHO = [
    ["0", "-x3", "x2", "0", "0", "0", "0"],
    ["x3", "0", "-x1", "-x6", "0", "x4", "0"],
    ["-x2", "x1", "0", "0", "-x7", "0", "x5"],
    ["0", "x6", "0", "0", "0", "-x2", "0"],
    ["0", "0", "x7", "0", "0", "0", "-x3"],
    ["0", "-x4", "0", "x2", "0", "0", "0"],
    ["0", "0", "-x5", "0", "x3", "0", "0"],
]


def _block(*blocks) -> np.ndarray:
    return np.array(np.block([[np.array(b, dtype=object) for b in row] for row in blocks]), dtype=object)


def test_slot_matrices():
    fam = slot_matrices(alpha_p(1))
    assert fam.display() == [["0", "-x3", "x2"], ["x3", "0", "-x1"], ["-x2", "x1", "0"]]
    assert slot_matrices(catalog("rho7").form).display() == A_RHO
    for entry in ("gamma6", "omega6", "beta7", "alpha3_double_prime"):
        f = catalog(entry).form
        fam = slot_matrices(f)
        assert fam.is_antisymmetric()
        for k in range(1, f.n + 1):
            for i in range(1, f.n + 1):
                for j in range(1, f.n + 1):
                    assert fam.matrix(k)[i - 1, j - 1] == f.component(i, k, j)
    assert not any(m.any() for m in slot_matrices(zero_form(4)).matrices)
    print("PASS: slot matrices")


def test_nondegeneracy():
    assert is_nondegenerate(alpha_p(1)) == (True, None)
    assert is_nondegenerate(catalog("gamma6").form)[0]
    ok, witness = is_nondegenerate(zero_form(3))
    assert not ok and any(witness)
    print("PASS: nondegeneracy")


def test_dimension_four_is_degenerate():
    rng = np.random.default_rng(config.SEED)
    for _ in range(100):
        f = random_form(4, rng)
        ok, x = is_nondegenerate(f)
        assert not ok and any(x)
        fam = slot_matrices(f)
        for a in fam.matrices:
            assert not any(a.dot(np.array(x, dtype=object)))
    print("PASS: every 3-form on K^4 is degenerate")


def test_three_regular_catalog():
    for name in ("alpha1", "alpha2", "rho7", "beta7", "alpha3", "alpha3_prime", "alpha3_double_prime"):
        v = is_three_regular(catalog(name).form)
        assert v.three_regular, name
        assert v.nondegenerate and v.intertwiner_dimension == 1
        assert v.reason == "3-regular"
    for name in ("gamma6", "omega6"):
        v = is_three_regular(catalog(name).form)
        assert not v.three_regular and v.nondegenerate, name
        assert v.intertwiner_dimension >= 2
    print("PASS: 3-regularity of the catalog")


def test_three_regular_alpha_plane():
    rng = np.random.default_rng(config.SEED)
    for _ in range(5):
        t1 = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
        t2 = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
        v = is_three_regular(alpha_plane(1 - t1 - t2, t1, t2))
        assert v.three_regular, (t1, t2)
    print("PASS: 3-regularity on the affine plane")


def test_intertwiners():
    dim, basis = intertwiner_space(catalog("rho7").form)
    assert dim == 1
    m, w = basis[0]
    assert (m == w).all() and (m == m[0, 0] * np.eye(7, dtype=int)).all()

    gamma = catalog("gamma6").form
    i3, z3 = np.eye(3, dtype=int), np.zeros((3, 3), dtype=int)
    for lam, mu in ((1, 0), (0, 1), (2, -3)):
        pair = _block([lam * i3, z3], [z3, mu * i3])
        assert is_intertwiner(gamma, pair, pair)

    omega = catalog("omega6").form
    m = _block([z3, i3], [z3, z3])
    n = _block([z3, z3], [i3, z3])
    assert is_intertwiner(omega, m, n)
    assert not is_intertwiner(omega, n, m)
    print("PASS: intertwiner spaces")


def test_intertwiner_space_contains_identity():
    rng = np.random.default_rng(config.SEED)
    for n in (3, 4, 5):
        f = random_form(n, rng)
        dim, basis = intertwiner_space(f)
        assert dim >= 1
        assert is_intertwiner(f, np.eye(n, dtype=int), np.eye(n, dtype=int))
        for m, w in basis:
            assert is_intertwiner(f, m, w)
    dim, _ = intertwiner_space(zero_form(3))
    assert dim == 18
    print("PASS: identity pair always intertwines")


def test_lie_closure_alpha_p():
    for p, expected in ((1, 3), (2, 10), (3, 21)):
        report = lie_closure(slot_matrices(alpha_p(p)))
        assert report.dimension == expected, (p, report.dimension)
        assert report.equals_so_n
    print("PASS: Lie closure of alpha_p is so(2p+1)")


def test_lie_closure_bounds():
    for name in ("rho7", "beta7", "alpha3_prime", "alpha3_double_prime", "gamma6", "omega6"):
        report = lie_closure(slot_matrices(catalog(name).form))
        assert slot_matrices(catalog(name).form).n == report.n
        assert report.dimension <= report.so_dimension
        for b in report.basis:
            assert (b.T == -b).all()
    assert lie_closure(slot_matrices(zero_form(3))).dimension == 0
    print("PASS: Lie closure bounds")


def test_stabilizer():
    assert stabilizer_dimension(alpha_p(1))[0] == 8
    assert stabilizer_dimension(catalog("alpha3_double_prime").form)[0] == 14
    assert stabilizer_dimension(zero_form(4))[0] == 16
    _, basis = stabilizer_dimension(alpha_p(1))
    for m in basis:
        assert sum(m[i, i] for i in range(3)) == 0
    print("PASS: infinitesimal stabilizers")


def test_commutator_wedge():
    for p in (1, 2, 3):
        assert commutator_wedge_check(p, seed=config.SEED, trials=10)
    print("PASS: commutators are signed wedge products")


def test_block_matrix():
    rng = np.random.default_rng(config.SEED)
    for p in (1, 2, 3):
        assert block_matrix_check(p, rng, trials=5)
    a = block_matrix_au(1, [1, 2, 3])
    assert a.tolist() == [[0, -3, 2], [3, 0, -1], [-2, 1, 0]]
    print("PASS: block matrix A(u)")


def test_gl_invariance():
    rho = catalog("rho7").form
    base = is_three_regular(rho)
    rng = np.random.default_rng(config.SEED)
    base_dims = [graded_dimension(presentation(rho), d) for d in range(4)]
    for _ in range(10):
        g = gl_transform(rho, random_unimodular(7, rng))
        v = is_three_regular(g)
        assert (v.nondegenerate, v.intertwiner_dimension) == (base.nondegenerate, base.intertwiner_dimension)
        assert [graded_dimension(presentation(g), d) for d in range(4)] == base_dims
    g = gl_transform(catalog("gamma6").form, random_unimodular(6, rng))
    assert lie_closure(slot_matrices(g)).dimension == lie_closure(slot_matrices(catalog("gamma6").form)).dimension
    assert stabilizer_dimension(g)[0] == stabilizer_dimension(catalog("gamma6").form)[0]
    print("PASS: GL invariance of verdicts")


if __name__ == "__main__":
    print("=" * 50)
    print("x3form regularity tests")
    print("=" * 50)

    try:
        test_slot_matrices()
        test_nondegeneracy()
        test_dimension_four_is_degenerate()
        test_three_regular_catalog()
        test_three_regular_alpha_plane()
        test_intertwiners()
        test_intertwiner_space_contains_identity()
        test_lie_closure_alpha_p()
        test_lie_closure_bounds()
        test_stabilizer()
        test_commutator_wedge()
        test_block_matrix()
        test_gl_invariance()
        print("\nAll regularity tests passed.")
    except Exception as e:
        print(f"\nFAIL: regularity tests FAILED: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
