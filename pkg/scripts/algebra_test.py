"""
Quadratic algebra tests: presentations, graded dimensions, Hilbert series,
Koszul strands and the structural checks on the catalog algebras.

Usage:
  python scripts/algebra_test.py
  X3F_SLOW_TESTS=1 python scripts/algebra_test.py   # adds the degree 5 / degree 4 n=7 runs
"""
import os
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from core import config
from core.algebra.checks import (
    bigrading_check,
    centrality_check,
    derivation_descends,
    derivation_images,
    free_subalgebra_check,
    ore_extension_check,
    typeset_relations_check,
    verify_matrix_identity_lemma,
)
from core.algebra.hilbert import (
    b_hilbert_check,
    hilbert_series,
    multiply_series,
    predicted_coefficients,
    series_from_denominator,
    tensor_factorization_check,
)
from core.algebra.koszul import euler_check, koszul_complex_check, subalgebra_koszul_check
from core.algebra.presentation import (
    adjoint_derivation,
    b_presentation,
    beta_subalgebra,
    presentation,
    restrict,
    typeset_to_tensor,
)
from core.algebra.tower import graded_dimension, graded_dimension_direct, graded_dimensions, ideal_membership
from core.errors import AlgebraError, CertificateError
from core.forms.catalog import alpha_p, catalog, catalog_derivation
from core.forms.three_form import from_components, zero_form
from core.linalg.fields import PrimeField

SLOW = os.getenv("X3F_SLOW_TESTS", "").lower() in ("1", "true", "yes")


def _expect(exc, fn, *args, **kwargs):
    try:
        fn(*args, **kwargs)
    except exc:
        return
    raise AssertionError(f"{fn.__name__}{args} did not raise {exc.__name__}")


def _pres(name: str):
    return presentation(catalog(name).form, name=name)


def test_presentations():
    a1 = presentation(alpha_p(1))
    assert a1.display() == ["x2x3-x3x2", "-x1x3+x3x1", "x1x2-x2x1"]
    assert a1.relation(1) == {(1, 2): 1, (2, 1): -1}
    assert a1.is_antisymmetric()
    assert _pres("rho7").is_antisymmetric()
    assert presentation(zero_form(3)).nonzero_relations() == []
    sub = beta_subalgebra(_pres("beta7"))
    assert sub.n == 4 and len(sub.relations) == 3
    b1 = b_presentation(1)
    assert b1.n == 2 and b1.display() == ["x1x2-x2x1"]
    _expect(AlgebraError, restrict, _pres("rho7"), [1, 2, 3], [2])
    print("PASS: presentations")


def test_graded_dimensions():
    assert graded_dimension(presentation(alpha_p(1)), 3) == 10
    assert graded_dimension(_pres("rho7"), 2) == 42
    assert graded_dimension(_pres("gamma6"), 3) == 146
    assert graded_dimension(b_presentation(1), 3) == 4
    _expect(AlgebraError, graded_dimension, _pres("rho7"), -1)
    print("PASS: graded dimensions")


def test_tower_matches_direct_rank():
    for name, d in (("alpha1", 3), ("alpha2", 3), ("rho7", 3), ("gamma6", 3), ("omega6", 3)):
        pres = _pres(name)
        assert graded_dimension(pres, d) == graded_dimension_direct(pres, d), name
    sub = beta_subalgebra(_pres("beta7"))
    assert graded_dimension(sub, 4) == graded_dimension_direct(sub, 4) == 121
    assert graded_dimension_direct(sub, 3, PrimeField(config.PRIMES[0])) == 40
    print("PASS: tower vs direct rank")


def test_dual_prime_dimensions():
    dims, cert = graded_dimensions(presentation(alpha_p(1)), 6, rational_degree=3)
    assert dims == [1, 3, 6, 10, 15, 21, 28]
    assert cert.field == "dual-prime" and cert.primes == config.PRIMES
    assert cert.to_dict() == {"field": "dual-prime", "primes": list(config.PRIMES), "rational_degree": 3}
    dims, cert = graded_dimensions(presentation(alpha_p(1)), 3)
    assert cert.field == "rational" and cert.primes == ()
    print("PASS: dual-prime graded dimensions")


def test_denominators_divisible_by_a_prime():
    p1 = config.PRIMES[0]
    f = from_components(3, [((1, 2, 3), Fraction(1, p1))])
    dims, cert = graded_dimensions(presentation(f), 4, rational_degree=1)
    assert dims == [1, 3, 6, 10, 15] and cert.field == "dual-prime"
    report = koszul_complex_check(f, dmax=3, rational_degree=1)
    assert report.exact_up_to == 3 and report.field_name == "dual-prime"
    # a numerator divisible by p1 kills every relation mod p1 only
    g = from_components(3, [((1, 2, 3), p1)])
    assert graded_dimensions(presentation(g), 3)[0] == [1, 3, 6, 10]
    _expect(CertificateError, graded_dimensions, presentation(g), 3, rational_degree=1)
    print("PASS: rational coefficients with a prime in the denominator")


def test_series_helpers():
    assert predicted_coefficients(7, 5) == [1, 7, 42, 246, 1435, 8365]
    assert predicted_coefficients(3, 5) == [1, 3, 6, 10, 15, 21]
    assert series_from_denominator([1, -4, 3], 4) == [1, 4, 13, 40, 121]
    assert multiply_series([1, 1], [1, -1], 3) == [1, 0, -1, 0]
    _expect(ValueError, series_from_denominator, [2, 1], 3)
    print("PASS: series helpers")


def test_hilbert_series():
    r = hilbert_series(presentation(alpha_p(1)), 5)
    assert r.actual == (1, 3, 6, 10, 15, 21) and r.first_mismatch is None
    r = hilbert_series(presentation(alpha_p(2)), 4)
    assert r.actual == (1, 5, 20, 76, 285) and all(r.matches)
    r = hilbert_series(_pres("rho7"), 4)
    assert r.actual == (1, 7, 42, 246, 1435) and r.match_depth == 4
    assert r.certificate.field == "rational"
    r = hilbert_series(_pres("gamma6"), 3)
    assert r.actual == (1, 6, 30, 146)
    assert r.predicted == (1, 6, 30, 145)
    assert r.first_mismatch == 3 and r.match_depth == 2
    assert r.to_dict()["matches"] == [True, True, True, False]
    _expect(AlgebraError, hilbert_series, _pres("rho7"), 1)
    print("PASS: Hilbert series")


def test_tensor_factorization():
    for p in (1, 2, 3):
        assert tensor_factorization_check(p, dmax=4)
        assert b_hilbert_check(p, dmax=4)
    _expect(AlgebraError, tensor_factorization_check, 0)
    print("PASS: tensor factorization of the alpha_p series")


def test_koszul_exact():
    for name in ("alpha1", "alpha2", "rho7", "beta7"):
        report = koszul_complex_check(catalog(name).form, dmax=3)
        assert report.exact_up_to == 3 and report.first_failure is None, name
        assert report.field_name == "rational" and not report.warnings
    report = koszul_complex_check(catalog("rho7").form, dmax=2)
    strand = report.strands[2]
    assert strand.dims == (0, 7, 49, 42)
    d = report.to_dict()
    assert d["exact_up_to"] == 2 and d["degrees"]["2"]["ranks"] == {"x^t": 0, "A(x)": 7, "x": 42}
    assert euler_check(hilbert_series(_pres("rho7"), 4).actual, 7)
    print("PASS: Koszul strands exact")


def test_koszul_failure():
    report = koszul_complex_check(catalog("gamma6").form, dmax=3)
    assert report.first_failure == 3 and report.exact_up_to == 2
    assert report.warnings
    assert report.strands[3].dims == (1, 36, 180, 146)
    assert report.strands[3].euler_characteristic == -1
    assert not euler_check([1, 6, 30, 146], 6)
    print("PASS: Koszul failure for a non-regular form")


def test_failures_on_dual_prime_path():
    gamma = _pres("gamma6")
    r = hilbert_series(gamma, 4, rational_degree=2)
    assert r.certificate.field == "dual-prime"
    assert r.actual[:4] == (1, 6, 30, 146) and r.first_mismatch == 3
    report = koszul_complex_check(catalog("gamma6").form, dmax=3, rational_degree=2)
    assert report.field_name == "dual-prime"
    assert report.first_failure == 3 and report.exact_up_to == 2
    assert any("not 3-regular" in w for w in report.warnings)
    assert report.strands[3].dims == (1, 36, 180, 146)
    report = koszul_complex_check(catalog("rho7").form, dmax=3, rational_degree=2)
    assert report.field_name == "dual-prime" and report.exact_up_to == 3 and not report.warnings
    print("PASS: Koszul and Hilbert verdicts through the dual-prime path")


def test_subalgebra_koszul():
    ok, report = subalgebra_koszul_check(_pres("beta7"), dmax=4)
    assert ok and report.exact_up_to == 4
    assert [s.dims[-1] for s in report.strands] == [1, 4, 13, 40, 121]
    print("PASS: Koszul subalgebra of A_beta")


def test_ideal_membership():
    rho = _pres("rho7")
    assert ideal_membership(rho, rho.relation(1))
    assert ideal_membership(rho, {(0, 1, 2): 1, (0, 2, 1): -1})
    assert not ideal_membership(rho, {(0, 1): 1})
    assert ideal_membership(rho, {}, degree=3)
    _expect(AlgebraError, ideal_membership, rho, {(0,): 1})
    _expect(AlgebraError, ideal_membership, rho, {(0, 1): 1, (0, 1, 2): 1})
    _expect(AlgebraError, ideal_membership, rho, {(0, 9): 1})
    print("PASS: ideal membership")


def test_matrix_identity_lemma():
    beta = _pres("beta7")
    assert verify_matrix_identity_lemma(beta)
    assert not verify_matrix_identity_lemma(beta, flip=(0, 0))
    print("PASS: B(x) C = u 1 modulo the relations")


def test_centrality():
    for p in (1, 2, 3):
        assert centrality_check(presentation(alpha_p(p)), 2 * p + 1)
    assert not centrality_check(_pres("rho7"), 1)
    assert all(centrality_check(presentation(alpha_p(1)), g) for g in (1, 2, 3))
    _expect(AlgebraError, centrality_check, _pres("rho7"), 8)
    print("PASS: centrality")


def test_derivations():
    b3 = b_presentation(3)
    assert derivation_descends(b3, catalog_derivation("delta0"))
    assert derivation_descends(b3, catalog_derivation("delta1"))
    assert derivation_descends(b3, catalog_derivation("delta2"))
    assert not derivation_descends(b3, catalog_derivation("delta1_typeset"))
    assert not derivation_descends(b3, catalog_derivation("delta2_typeset"))
    _expect(AlgebraError, derivation_images, b3, {1: ()})
    print("PASS: derivations of B(3)")


def test_adjoint_derivation():
    for form, delta in (("alpha3_prime", "delta1"), ("alpha3_double_prime", "delta2")):
        ours = adjoint_derivation(_pres(form), 7)
        printed = catalog_derivation(delta)
        assert set(ours) == set(printed) == {1, 2, 3, 4, 5, 6}
        for g in ours:
            assert typeset_to_tensor(ours[g]) == typeset_to_tensor(printed[g]), (form, g)
    assert all(v == () for v in adjoint_derivation(_pres("alpha3"), 7).values())
    _expect(AlgebraError, adjoint_derivation, _pres("rho7"), 7)
    _expect(AlgebraError, adjoint_derivation, _pres("rho7"), 0)
    print("PASS: ad(x7) read off the relations")


def test_ore_extensions():
    for name in ("alpha3", "alpha3_prime", "alpha3_double_prime"):
        assert ore_extension_check(name, dmax=4), name
    _expect(AlgebraError, ore_extension_check, "rho7")
    print("PASS: Ore extensions of B(3)")


def test_bigrading():
    assert bigrading_check(_pres("beta7"), dmax=4)
    assert not bigrading_check(_pres("rho7"), dmax=3)
    print("PASS: bigrading")


def test_free_subalgebra():
    assert free_subalgebra_check(_pres("beta7"), (5, 6, 7), dmax=3)
    assert not free_subalgebra_check(presentation(alpha_p(1)), (1, 2), dmax=2)
    print("PASS: free subalgebra")


def test_typeset_relations():
    for name in ("rho7", "beta7", "alpha3_prime", "alpha3_double_prime"):
        assert typeset_relations_check(name), name
    t = typeset_to_tensor([(Fraction(1), (1, 2)), (Fraction(-1), (2, 1)), (Fraction(1), (1, 2))])
    assert t == {(0, 1): 2, (1, 0): -1}
    print("PASS: printed relations")


def test_slow_n7():
    if not SLOW:
        print("SKIP: n=7 degree 5 Hilbert and degree 4 Koszul (set X3F_SLOW_TESTS=1)")
        return
    for name in ("rho7", "beta7", "alpha3", "alpha3_prime", "alpha3_double_prime"):
        r = hilbert_series(_pres(name), 5, rational_degree=4)
        assert r.actual == (1, 7, 42, 246, 1435, 8365), name
        assert r.certificate.field == "dual-prime"
    for name in ("rho7", "beta7"):
        report = koszul_complex_check(catalog(name).form, dmax=4, rational_degree=3)
        assert report.exact_up_to == 4 and report.field_name == "dual-prime", name
    print("PASS: n=7 deep degrees")


if __name__ == "__main__":
    print("=" * 50)
    print("x3form algebra tests")
    print("=" * 50)

    try:
        test_presentations()
        test_graded_dimensions()
        test_tower_matches_direct_rank()
        test_dual_prime_dimensions()
        test_denominators_divisible_by_a_prime()
        test_series_helpers()
        test_hilbert_series()
        test_tensor_factorization()
        test_koszul_exact()
        test_koszul_failure()
        test_failures_on_dual_prime_path()
        test_subalgebra_koszul()
        test_ideal_membership()
        test_matrix_identity_lemma()
        test_centrality()
        test_derivations()
        test_adjoint_derivation()
        test_ore_extensions()
        test_bigrading()
        test_free_subalgebra()
        test_typeset_relations()
        test_slow_n7()
        print("\nAll algebra tests passed.")
    except Exception as e:
        print(f"\nFAIL: algebra tests FAILED: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
