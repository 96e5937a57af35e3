"""
Lie-algebraic data of a 3-form: the bracket closure of its slot matrices
inside so(n), the infinitesimal stabilizer in gl(n), and the check that for
alpha_p the commutator [A(u), A(v)] is a signed permutation of u ^ v.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from core import config
from core.forms.catalog import alpha_p
from core.forms.three_form import ExteriorThreeForm
from core.linalg.fields import QQ
from core.linalg.sparse import Echelon, SparseMatrix, kernel_basis
from core.regularity.slots import SlotMatrixFamily, slot_matrices

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LieClosureReport:
    n: int
    dimension: int
    basis: list = field(default_factory=list)
    rounds: int = 0
    stabilizer_dimension: Optional[int] = None

    @property
    def so_dimension(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def equals_so_n(self) -> bool:
        return self.dimension == self.so_dimension


def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x.dot(y) - y.dot(x)


class _Span:
    """Span of antisymmetric matrices, coordinatized by their strict upper triangle."""

    def __init__(self, n: int):
        self.upper = list(combinations(range(n), 2))
        self.echelon = Echelon(QQ)
        self.basis: list[np.ndarray] = []

    def _vector(self, m: np.ndarray) -> dict:
        return {c: Fraction(m[i, j]) for c, (i, j) in enumerate(self.upper) if m[i, j]}

    def contains(self, m: np.ndarray) -> bool:
        return not self.echelon.reduce(self._vector(m))

    def add(self, m: np.ndarray) -> bool:
        if self.echelon.add(self._vector(m)) is None:
            return False
        self.basis.append(m)
        return True


def lie_closure(family: SlotMatrixFamily) -> LieClosureReport:
    """
    Smallest bracket-closed subspace of so(n) containing the A_k. Each round
    brackets the newest basis elements with the generators; once a round adds
    nothing, the whole basis is bracketed again, and the fixpoint is accepted
    after two quiet rounds.
    """
    n = family.n
    for a in family.matrices:
        if not (a.T == -a).all():
            raise ArithmeticError("slot matrix is not antisymmetric")
    span = _Span(n)
    for a in family.matrices:
        span.add(a)
    generators = list(span.basis)
    frontier = list(span.basis)
    quiet = 0
    rounds = 0
    while quiet < 2 and generators:
        rounds += 1
        added = []
        for x in frontier:
            for g in generators:
                c = bracket(x, g)
                if span.add(c):
                    added.append(c)
        logger.debug("Lie closure round %d: +%d (dimension %d)", rounds, len(added), len(span.basis))
        if added:
            quiet = 0
            frontier = added
        else:
            quiet += 1
            frontier = list(span.basis)

    for x, y in combinations(span.basis, 2):
        if not span.contains(bracket(x, y)):
            raise ArithmeticError("Lie closure fixpoint is not closed under the bracket")

    stabilizer = stabilizer_dimension(family.form)[0] if family.form is not None else None
    return LieClosureReport(
        n=n,
        dimension=len(span.basis),
        basis=span.basis,
        rounds=rounds,
        stabilizer_dimension=stabilizer,
    )


def stabilizer_system(alpha: ExteriorThreeForm) -> SparseMatrix:
    """
    Rows (i1, i2, i3) of sum_j L[j][i1] a_{j i2 i3} + L[j][i2] a_{i1 j i3}
    + L[j][i3] a_{i1 i2 j} = 0, with L[j][i] the unknown j*n + i.
    """
    n = alpha.n
    t = alpha.to_tensor()
    rows = []
    for i1 in range(n):
        for i2 in range(n):
            for i3 in range(n):
                row: dict[int, Fraction] = {}
                for j in range(n):
                    for col, v in (
                        (j * n + i1, t[j, i2, i3]),
                        (j * n + i2, t[i1, j, i3]),
                        (j * n + i3, t[i1, i2, j]),
                    ):
                        if v:
                            row[col] = row.get(col, 0) + v
                rows.append(row)
    return SparseMatrix.from_rows(n ** 3, n * n, rows)


def stabilizer_dimension(alpha: ExteriorThreeForm) -> tuple[int, list[np.ndarray]]:
    """Dimension and basis of {L in gl(n) : L . alpha = 0}."""
    n = alpha.n
    basis = [np.array(v, dtype=object).reshape(n, n) for v in kernel_basis(stabilizer_system(alpha), QQ)]
    return len(basis), basis


def _signed_wedge_map(family: SlotMatrixFamily) -> Optional[dict]:
    """
    Map each upper entry (i, j) of [A(u), A(v)] to (sign, (a, b)) when it is
    sign * (u^a v^b - u^b v^a); None if some entry has another shape.
    """
    n = family.n
    coeff: dict[tuple, dict] = {ij: {} for ij in combinations(range(n), 2)}
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            c = bracket(family.matrices[a], family.matrices[b])
            for (i, j), d in coeff.items():
                if c[i, j]:
                    d[(a, b)] = c[i, j]
    out = {}
    for ij, d in coeff.items():
        if len(d) != 2:
            return None
        (a, b), s = min(d.items())
        if s not in (1, -1) or d.get((b, a)) != -s:
            return None
        out[ij] = (s, (a, b))
    return out


def commutator_wedge_check(p: int, seed: int = config.SEED, trials: int = config.TRIALS) -> bool:
    """
    For alpha_p, the strict upper triangle of [A(u), A(v)] is a signed
    permutation of the components u^a v^b - u^b v^a of u ^ v. The sign pattern
    is read off the basis vectors and confirmed on random integer vectors.
    """
    family = slot_matrices(alpha_p(p))
    n = family.n
    mapping = _signed_wedge_map(family)
    if mapping is None:
        logger.info("alpha_%d: commutator entries are not single wedge components", p)
        return False
    if sorted(pair for _, pair in mapping.values()) != list(combinations(range(n), 2)):
        logger.info("alpha_%d: commutator entries do not cover u ^ v bijectively", p)
        return False

    rng = np.random.default_rng(seed)
    for trial in range(trials):
        u = [Fraction(int(x)) for x in rng.integers(-9, 10, size=n)]
        v = u if trial == 0 else [Fraction(int(x)) for x in rng.integers(-9, 10, size=n)]
        c = bracket(family.evaluate_at(u), family.evaluate_at(v))
        for (i, j), (s, (a, b)) in mapping.items():
            if c[i, j] != s * (u[a] * v[b] - u[b] * v[a]) or c[j, i] != -c[i, j]:
                logger.warning("alpha_%d: commutator mismatch at %s in trial %d", p, (i, j), trial)
                return False
    return True
