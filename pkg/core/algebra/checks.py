"""
Structural checks on quadratic superpotential algebras, all reduced to ideal
membership or rank computations in finitely many degrees.
"""
import logging
from fractions import Fraction
from itertools import product
from typing import Mapping, Optional, Sequence

from core import config
from core.algebra.hilbert import multiply_series
from core.algebra.presentation import (
    QuadraticPresentation,
    Tensor,
    adjoint_derivation,
    b_presentation,
    presentation,
    typeset_to_tensor,
)
from core.algebra.tower import graded_dimensions, ideal_membership, ideal_spanning_rows, tower
from core.errors import AlgebraError
from core.forms.catalog import catalog, typeset_relations
from core.linalg.fields import QQ
from core.linalg.sparse import SparseMatrix, rank

logger = logging.getLogger(__name__)

# Lemma matrices for beta, entries as {generator (1-based): coefficient}.
LEMMA_B = (
    ({3: -1}, {4: -1}, {1: 1}, {2: 1}),
    ({}, {}, {4: 1}, {3: -1}),
    ({2: 1}, {1: -1}, {}, {}),
)
LEMMA_C = (
    ({1: -1}, {}, {4: 2}),
    ({2: -1}, {}, {3: -2}),
    ({3: 1}, {2: 2}, {}),
    ({4: 1}, {1: -2}, {}),
)
# u = 2 (x1 x3 + x2 x4)
LEMMA_U = {(0, 2): Fraction(2), (1, 3): Fraction(2)}


def commutator(a: int, b: int) -> Tensor:
    """[x^a, x^b] for 0-based generators."""
    if a == b:
        return {}
    return {(a, b): Fraction(1), (b, a): Fraction(-1)}


def centrality_check(pres: QuadraticPresentation, g: int) -> bool:
    """x^g (1-based) commutes with every generator modulo I_2."""
    if not 1 <= g <= pres.n:
        raise AlgebraError(f"generator {g} outside 1..{pres.n}")
    return all(ideal_membership(pres, commutator(g - 1, j), degree=2) for j in range(pres.n))


def _leibniz(images: Mapping[int, Tensor], rel: Mapping[tuple, Fraction]) -> Tensor:
    """delta(x^j x^k) = delta(x^j) x^k + x^j delta(x^k) for a degree-2 tensor."""
    out: Tensor = {}
    for (j, k), c in rel.items():
        for w, v in images[j].items():
            out[w + (k,)] = out.get(w + (k,), 0) + c * v
        for w, v in images[k].items():
            out[(j,) + w] = out.get((j,) + w, 0) + c * v
    return {w: v for w, v in out.items() if v}


def derivation_images(pres: QuadraticPresentation, delta: Mapping[int, Sequence[tuple]]) -> dict[int, Tensor]:
    """Catalog-format derivation (1-based) to 0-based degree-2 images; must cover every generator."""
    missing = [g for g in range(1, pres.n + 1) if g not in delta]
    if missing:
        raise AlgebraError(f"derivation is not defined on generators {missing}")
    images = {}
    for g in range(1, pres.n + 1):
        t = typeset_to_tensor(delta[g])
        if any(len(w) != 2 or any(not 0 <= a < pres.n for a in w) for w in t):
            raise AlgebraError(f"image of x{g} is not a degree-2 tensor in the generators")
        images[g - 1] = t
    return images


def derivation_descends(pres: QuadraticPresentation, delta: Mapping[int, Sequence[tuple]]) -> bool:
    """True iff the product-rule extension of delta maps every relation into I_3."""
    images = derivation_images(pres, delta)
    for i, rel in enumerate(pres.nonzero_relations(), start=1):
        if not ideal_membership(pres, _leibniz(images, rel), degree=3):
            logger.info("%s: derivation image of relation %d is not in I_3", pres.name or "algebra", i)
            return False
    return True


def _linear_product(a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> Tensor:
    return {(i - 1, j - 1): Fraction(x) * y for i, x in a.items() for j, y in b.items()}


def verify_matrix_identity_lemma(pres_beta: QuadraticPresentation, flip: Optional[tuple] = None) -> bool:
    """
    B(x) C = u 1_3 modulo I_2 entrywise. ``flip`` = (row, column) negates one
    entry of C, which must break the identity.
    """
    c_matrix = [list(row) for row in LEMMA_C]
    if flip is not None:
        r, c = flip
        c_matrix[r][c] = {k: -v for k, v in c_matrix[r][c].items()}
    ok = True
    for i in range(3):
        for j in range(3):
            entry: Tensor = {}
            for k in range(4):
                for w, v in _linear_product(LEMMA_B[i][k], c_matrix[k][j]).items():
                    entry[w] = entry.get(w, 0) + v
            if i == j:
                for w, v in LEMMA_U.items():
                    entry[w] = entry.get(w, 0) - v
            entry = {w: v for w, v in entry.items() if v}
            if not ideal_membership(pres_beta, entry, degree=2):
                logger.info("matrix identity fails at entry (%d, %d)", i + 1, j + 1)
                ok = False
    return ok


def bidegree(word: Sequence[int], first: frozenset) -> tuple[int, int]:
    a = sum(1 for g in word if g in first)
    return a, len(word) - a


def bigrading_check(
    pres_beta: QuadraticPresentation,
    dmax: int = 4,
    first: Sequence[int] = (1, 2, 3, 4),
) -> bool:
    """
    Generators in ``first`` (1-based) get bidegree (1, 0), the rest (0, 1).
    Every relation must be bihomogeneous of bidegree (2, 0) or (1, 1), and the
    bigraded dimensions must add up to dim A_d for d <= dmax.
    """
    part = frozenset(g - 1 for g in first)
    for i, rel in enumerate(pres_beta.relations, start=1):
        degrees = {bidegree(w, part) for w, _ in rel}
        if len(degrees) > 1 or (degrees and degrees.pop() not in ((2, 0), (1, 1))):
            logger.info("relation %d is not bihomogeneous of bidegree (2,0) or (1,1)", i)
            return False

    dims, _ = graded_dimensions(pres_beta, dmax, rational_degree=max(dmax, config.RATIONAL_DEGREE))
    for d in range(2, dmax + 1):
        total = sum(bigraded_dimension(pres_beta, d, a, part) for a in range(d + 1))
        if total != dims[d]:
            logger.info("bigraded dimensions in degree %d add up to %d, not %d", d, total, dims[d])
            return False
    return True


def bigraded_dimension(pres: QuadraticPresentation, d: int, a: int, part: frozenset) -> int:
    """dim of the bidegree (a, d - a) part of A_d, by rank on the spanning set of I_d."""
    words = [w for w in product(range(pres.n), repeat=d) if bidegree(w, part)[0] == a]
    index = {w: i for i, w in enumerate(words)}
    rows = []
    for t in ideal_spanning_rows(pres, d):
        if next(iter(t)) in index:
            rows.append({index[w]: c for w, c in t.items()})
    m = SparseMatrix.from_rows(len(rows), len(words), rows)
    return len(words) - rank(m, QQ)


def free_subalgebra_check(pres: QuadraticPresentation, generators: Sequence[int], dmax: int = 3) -> bool:
    """Words in ``generators`` (1-based) stay linearly independent in A_d for d <= dmax."""
    gens = [g - 1 for g in generators]
    tw = tower(pres, QQ)
    for d in range(1, dmax + 1):
        comp = tw.component(d)
        rows = []
        for w in product(gens, repeat=d):
            nf = tw.normal_form({w: 1})
            rows.append({comp.index[s]: v for s, v in nf.items()})
        m = SparseMatrix.from_rows(len(rows), comp.dimension, rows)
        if rank(m, QQ) != len(gens) ** d:
            logger.info("words in %s are dependent in degree %d", list(generators), d)
            return False
    return True


def typeset_relations_check(name: str) -> bool:
    """The printed relations of a catalog entry lie in I_2 and span the relation space."""
    pres = presentation(catalog(name).form, name=name)
    printed = [typeset_to_tensor(r) for r in typeset_relations(name)]
    if not all(ideal_membership(pres, t, degree=2) for t in printed):
        return False
    words = {w: i for i, w in enumerate(product(range(pres.n), repeat=2))}
    own = [{words[w]: c for w, c in r.items()} for r in pres.nonzero_relations()]
    theirs = [{words[w]: c for w, c in t.items()} for t in printed]
    return (
        rank(SparseMatrix.from_rows(len(theirs), len(words), theirs), QQ)
        == rank(SparseMatrix.from_rows(len(own), len(words), own), QQ)
    )


ORE_FORMS = ("alpha3", "alpha3_prime", "alpha3_double_prime")


def ore_extension_check(name: str, dmax: int = 4) -> bool:
    """
    A = B(3) extended by x^7 acting through ad(x^7): the derivation read off
    the relations descends to B(3), and h_A = h_{B(3)} / (1 - t) up to dmax.
    """
    if name not in ORE_FORMS:
        raise AlgebraError(f"{name!r} is not one of {', '.join(ORE_FORMS)}")
    pres = presentation(catalog(name).form, name=name)
    b3 = b_presentation(3)
    delta = adjoint_derivation(pres, 7)
    if not derivation_descends(b3, delta):
        return False
    dims_a, _ = graded_dimensions(pres, dmax)
    dims_b, _ = graded_dimensions(b3, dmax)
    return multiply_series(dims_a, [1, -1], dmax) == dims_b
