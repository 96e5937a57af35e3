"""
Graded components A_d = V^(x)d / I_d of a quadratic algebra.

The tower is built one degree at a time: A_d is the quotient of A_{d-1} (x) V
by the image of A_{d-2} (x) R. Columns of degree d are the words b + (k,)
with b a standard word of degree d-1, rows are the relations multiplied on the
left by the standard words of degree d-2 (reduced in degree d-1), and the
reduced row-echelon form with the largest word leading selects the pivot
words. The remaining (standard) words are the coset basis, and every pivot
word has an explicit normal form in terms of them.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Mapping, Optional, Sequence

from core import config
from core.algebra.presentation import QuadraticPresentation, Tensor, Word
from core.errors import AlgebraError, CertificateError
from core.linalg.fields import QQ, Field, PrimeField, denominator_lcm
from core.linalg.sparse import Echelon, SparseMatrix, compare_ranks, rank

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GradedComponentBasis:
    degree: int
    words: tuple  # standard words, lexicographically sorted
    reductions: Mapping  # pivot word -> {standard word: coefficient}
    index: Mapping = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.words)


class GradedTower:
    """Lazily extended coset bases of one presentation over one field."""

    def __init__(self, pres: QuadraticPresentation, field: Field = QQ):
        self.pres = pres
        self.field = field
        self.relations = []
        for r in pres.nonzero_relations():
            # clear denominators: same span, and the residue mod p is always defined
            m = denominator_lcm(r.values())
            coerced = {w: field.coerce(c * m) for w, c in r.items()}
            self.relations.append({w: c for w, c in coerced.items() if c})
        n = pres.n
        self.components: list[GradedComponentBasis] = [
            GradedComponentBasis(0, ((),), {}, {(): 0}),
            GradedComponentBasis(1, tuple((g,) for g in range(n)), {}, {(g,): g for g in range(n)}),
        ]

    @property
    def n(self) -> int:
        return self.pres.n

    def component(self, d: int) -> GradedComponentBasis:
        if d < 0:
            raise AlgebraError(f"degree must be nonnegative, got {d}")
        self.extend_to(d)
        return self.components[d]

    def dimension(self, d: int) -> int:
        return 0 if d < 0 else self.component(d).dimension

    def extend_to(self, d: int) -> None:
        while len(self.components) <= d:
            self.components.append(self._build(len(self.components)))

    def _build(self, d: int) -> GradedComponentBasis:
        prev = self.components[d - 1]
        n = self.n
        columns = [b + (k,) for b in prev.words for k in range(n)]
        col_index = {w: i for i, w in enumerate(columns)}
        rows = []
        for c in self.components[d - 2].words:
            for rel in self.relations:
                row: dict[int, object] = {}
                for (j, k), coef in rel.items():
                    for b, v in self.multiply(c, j).items():
                        col = col_index[b + (k,)]
                        row[col] = row.get(col, 0) + coef * v
                row = {i: self.field.coerce(v) for i, v in row.items()}
                row = {i: v for i, v in row.items() if v}
                if row:
                    rows.append(row)

        ech = Echelon(self.field, key=lambda i: -i)
        for row in sorted(rows, key=len):
            ech.add(row, full=False)
        ech.make_reduced()

        neg = self._neg
        reductions = {}
        for pivot, row in ech.pivots.items():
            reductions[columns[pivot]] = {columns[i]: neg(v) for i, v in row.items() if i != pivot}
        words = tuple(w for w in columns if w not in reductions)
        logger.debug(
            "%s over %s: degree %d has %d columns, rank %d, dimension %d",
            self.pres.name or "algebra", self.field.name, d, len(columns), len(reductions), len(words),
        )
        return GradedComponentBasis(d, words, reductions, {w: i for i, w in enumerate(words)})

    def _neg(self, v):
        return (-v) % self.field.p if isinstance(self.field, PrimeField) else -v

    def multiply(self, word: Word, letter: int) -> dict:
        """Normal form of (standard word) * x^letter."""
        target = word + (letter,)
        comp = self.component(len(target))
        if target in comp.index:
            return {target: self.field.coerce(1)}
        return comp.reductions[target]

    def normal_form(self, t: Mapping[Word, object]) -> dict:
        """Normal form of a homogeneous tensor, built left to right one letter at a time."""
        out: dict = {}
        for w, c in t.items():
            c = self.field.coerce(c)
            if not c:
                continue
            cur = {(): self.field.coerce(1)}
            for letter in w:
                nxt: dict = {}
                for b, v in cur.items():
                    for s, u in self.multiply(b, letter).items():
                        nxt[s] = nxt.get(s, 0) + v * u
                cur = {s: self.field.coerce(v) for s, v in nxt.items()}
                cur = {s: v for s, v in cur.items() if v}
            for s, v in cur.items():
                out[s] = out.get(s, 0) + c * v
        out = {s: self.field.coerce(v) for s, v in out.items()}
        return {s: v for s, v in out.items() if v}


@lru_cache(maxsize=64)
def tower(pres: QuadraticPresentation, field: Field = QQ) -> GradedTower:
    return GradedTower(pres, field)


def _degree_of(t: Mapping[Word, object]) -> int:
    degrees = {len(w) for w in t}
    if len(degrees) > 1:
        raise AlgebraError(f"tensor is not homogeneous (degrees {sorted(degrees)})")
    return degrees.pop() if degrees else 0


def ideal_membership(pres: QuadraticPresentation, t: Tensor, degree: Optional[int] = None) -> bool:
    """True iff the homogeneous tensor t (0-based words) lies in I_d."""
    d = _degree_of(t) if t else degree
    if d is None or d < 2:
        raise AlgebraError(f"membership needs a tensor of degree >= 2, got {d}")
    for w in t:
        if any(not 0 <= g < pres.n for g in w):
            raise AlgebraError(f"word {w} uses a generator outside 1..{pres.n}")
    return not tower(pres, QQ).normal_form(t)


@dataclass(frozen=True)
class Certificate:
    field: str  # "rational" or "dual-prime"
    primes: tuple = ()
    rational_degree: int = 0

    def to_dict(self) -> dict:
        return {"field": self.field, "primes": list(self.primes), "rational_degree": self.rational_degree}


def _compare_with_rational(pres: QuadraticPresentation, dims: Sequence[int], per_prime: Mapping[int, Sequence[int]]) -> None:
    """rank I_d = n^d - dim A_d over Q and mod each prime, for the degrees computed over Q."""
    n = pres.n
    for d, dq in enumerate(dims):
        compare_ranks(
            f"{pres.name or 'algebra'} I_{d}",
            n ** d - dq,
            {p: n ** d - dims_p[d] for p, dims_p in per_prime.items()},
        )


def graded_dimensions(
    pres: QuadraticPresentation,
    dmax: int,
    primes: Sequence[int] = config.PRIMES,
    rational_degree: int = config.RATIONAL_DEGREE,
) -> tuple[list[int], Certificate]:
    """
    dim A_0 .. dim A_dmax. Degrees up to ``rational_degree`` are computed over
    Q; higher degrees modulo each prime, which must agree. The rational degrees
    are cross-checked mod p (only the first prime when nothing is computed
    beyond them).
    """
    if dmax < 0:
        raise AlgebraError(f"degree must be nonnegative, got {dmax}")
    low = min(dmax, rational_degree)
    q = tower(pres, QQ)
    dims = [q.dimension(d) for d in range(low + 1)]
    if dmax <= rational_degree:
        if primes:
            tp = tower(pres, PrimeField(primes[0]))
            _compare_with_rational(pres, dims, {primes[0]: [tp.dimension(d) for d in range(low + 1)]})
        return dims, Certificate("rational", (), rational_degree)

    per_prime = {}
    for p in primes:
        tp = tower(pres, PrimeField(p))
        per_prime[p] = [tp.dimension(d) for d in range(dmax + 1)]
    for d in range(dmax + 1):
        values = [dims_p[d] for dims_p in per_prime.values()]
        if len(set(values)) != 1:
            logger.warning("%s: dim A_%d is %s over primes %s", pres.name or "algebra", d, values, list(primes))
            raise CertificateError(f"dim A_{d} disagrees across primes {list(primes)}: {values}")
    _compare_with_rational(pres, dims, per_prime)
    dims.extend(per_prime[primes[0]][low + 1:])
    return dims, Certificate("dual-prime", tuple(primes), rational_degree)


def graded_dimension(
    pres: QuadraticPresentation,
    d: int,
    primes: Sequence[int] = config.PRIMES,
    rational_degree: int = config.RATIONAL_DEGREE,
) -> int:
    if d < 0:
        raise AlgebraError(f"degree must be nonnegative, got {d}")
    if d <= rational_degree:
        return tower(pres, QQ).dimension(d)
    return graded_dimensions(pres, d, primes, rational_degree)[0][d]


def ideal_spanning_rows(pres: QuadraticPresentation, d: int):
    """The tensors v (x) r (x) w, |v| + |w| = d - 2, as (word -> coefficient) dicts."""
    rels = [{w: c * denominator_lcm(r.values()) for w, c in r.items()} for r in pres.nonzero_relations()]
    for a in range(d - 1):
        for v in product(range(pres.n), repeat=a):
            for w in product(range(pres.n), repeat=d - 2 - a):
                for r in rels:
                    yield {v + jk + w: c for jk, c in r.items()}


def graded_dimension_direct(pres: QuadraticPresentation, d: int, field: Field = QQ) -> int:
    """n^d minus the rank of the full spanning set of I_d; exponential in d."""
    if d < 2:
        return pres.n ** d if d >= 0 else 0
    words = {w: i for i, w in enumerate(product(range(pres.n), repeat=d))}
    rows = [{words[w]: c for w, c in t.items()} for t in ideal_spanning_rows(pres, d)]
    m = SparseMatrix.from_rows(len(rows), len(words), rows)
    return len(words) - rank(m, field)
