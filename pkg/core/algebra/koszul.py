"""
Degreewise exactness of Koszul-type complexes of free left A-modules.

Maps between free modules A^r -> A^c are given by r x c matrices of linear
forms and act on row vectors: (b_1..b_r) -> (sum_i b_i M_{ij})_j. The complex
of a 3-regular form is

    0 -> A -x^t-> A^n -A(x)-> A^n -x-> A -> K -> 0

and its strand of total degree e is

    0 -> A_{e-3} -> A_{e-2}^n -> A_{e-1}^n -> A_e -> K_e -> 0.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from core import config
from core.algebra.hilbert import series_from_denominator
from core.algebra.presentation import QuadraticPresentation, beta_subalgebra, presentation
from core.algebra.tower import GradedTower, tower
from core.errors import CertificateError
from core.forms.three_form import ExteriorThreeForm
from core.regularity.intertwiners import is_three_regular
from core.linalg.fields import QQ, PrimeField, denominator_lcm
from core.linalg.sparse import SparseMatrix, compare_ranks, rank

logger = logging.getLogger(__name__)

LinearMatrix = list  # rows of {generator (0-based): coefficient}


@dataclass(frozen=True)
class StrandReport:
    degree: int
    dims: tuple  # dimensions of the free modules' components, left to right
    ranks: tuple  # ranks of the maps, left to right
    exact: tuple  # exactness at each module position, left to right

    @property
    def is_exact(self) -> bool:
        return all(self.exact)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))


@dataclass(frozen=True)
class KoszulExactnessReport:
    n: int
    map_names: tuple
    strands: tuple = ()
    field_name: str = "rational"
    warnings: tuple = field(default_factory=tuple)

    @property
    def exact_up_to(self) -> int:
        """Largest d with every strand of degree <= d exact; -1 if degree 0 fails."""
        last = -1
        for s in self.strands:
            if not s.is_exact:
                break
            last = s.degree
        return last

    @property
    def first_failure(self) -> Optional[int]:
        for s in self.strands:
            if not s.is_exact:
                return s.degree
        return None

    def to_dict(self) -> dict:
        degrees = {}
        for s in self.strands:
            degrees[str(s.degree)] = {
                "dims": list(s.dims),
                "ranks": dict(zip(self.map_names, s.ranks)),
                "exact": list(s.exact),
            }
        return {"degrees": degrees, "exact_up_to": self.exact_up_to, "field": self.field_name}


def slot_linear_matrix(alpha: ExteriorThreeForm) -> LinearMatrix:
    """A(x)_{ji} = sum_k alpha_{jki} x^k."""
    t = alpha.to_tensor()
    n = alpha.n
    return [[{k: t[j, k, i] for k in range(n) if t[j, k, i]} for i in range(n)] for j in range(n)]


def relation_linear_matrix(pres: QuadraticPresentation) -> LinearMatrix:
    """M with r_i = sum_j M_{ij} x^j: M_{ij} = sum_k (r_i)_{kj} x^k."""
    out = []
    for rel in pres.relations:
        row = [dict() for _ in range(pres.n)]
        for (k, j), c in rel:
            row[j][k] = c
        out.append(row)
    return out


def row_of_generators(n: int) -> LinearMatrix:
    return [[{k: Fraction(1)} for k in range(n)]]


def column_of_generators(n: int) -> LinearMatrix:
    return [[{k: Fraction(1)}] for k in range(n)]


def map_rank(tw: GradedTower, degree: int, matrix: LinearMatrix) -> int:
    """Rank of A_degree^r -> A_{degree+1}^c given by right multiplication with ``matrix``."""
    if degree < 0 or not matrix:
        return 0
    src = tw.component(degree)
    dst = tw.component(degree + 1)
    ncols = len(matrix[0])
    width = dst.dimension
    coerce = tw.field.coerce
    rows = []
    for i, mrow in enumerate(matrix):
        # scaling one source row leaves the rank unchanged
        scale = denominator_lcm(c for form in mrow for c in form.values())
        for s in src.words:
            row: dict[int, object] = {}
            for j, form in enumerate(mrow):
                for k, c in form.items():
                    for w, v in tw.multiply(s, k).items():
                        col = j * width + dst.index[w]
                        row[col] = row.get(col, 0) + coerce(c * scale) * v
            rows.append(row)
    m = SparseMatrix.from_rows(len(rows), ncols * width, ({c: coerce(v) for c, v in r.items()} for r in rows))
    return rank(m, tw.field)


def _strand(tw: GradedTower, e: int, ranks_of: Sequence[int], matrices: Sequence[LinearMatrix]) -> StrandReport:
    """
    Strand of total degree e of 0 -> A^{r_0} -> ... -> A^{r_L} -> K -> 0 where
    module i sits in internal degree e - (L - i).
    """
    length = len(matrices)
    dims = [r * tw.dimension(e - (length - i)) for i, r in enumerate(ranks_of)]
    ranks = [map_rank(tw, e - (length - i), m) for i, m in enumerate(matrices)]
    augmentation = 1 if e == 0 else 0
    ranks.append(augmentation)
    exact = []
    incoming = 0
    for i, d in enumerate(dims):
        exact.append(d - ranks[i] == incoming)
        incoming = ranks[i]
    return StrandReport(degree=e, dims=tuple(dims), ranks=tuple(ranks[:-1]), exact=tuple(exact))


def _strands(tw: GradedTower, dmax: int, ranks_of: Sequence[int], matrices: Sequence[LinearMatrix]) -> tuple:
    return tuple(_strand(tw, e, ranks_of, matrices) for e in range(dmax + 1))


def _compare_strands(label: str, rational: Sequence[StrandReport], modular: Mapping[int, Sequence[StrandReport]]) -> None:
    for s in rational:
        for i, r in enumerate(s.ranks):
            compare_ranks(
                f"{label} strand {s.degree} map {i}",
                r,
                {p: strands[s.degree].ranks[i] for p, strands in modular.items()},
            )


def _complex_report(
    pres: QuadraticPresentation,
    ranks_of: Sequence[int],
    matrices: Sequence[LinearMatrix],
    map_names: Sequence[str],
    dmax: int,
    primes: Sequence[int],
    rational_degree: int,
    warnings: Sequence[str] = (),
) -> KoszulExactnessReport:
    """Strands up to ``rational_degree`` over Q, cross-checked mod p; higher strands over every prime."""
    label = pres.name or "algebra"
    low = min(dmax, rational_degree)
    rational = _strands(tower(pres, QQ), low, ranks_of, matrices)
    if dmax <= rational_degree:
        if primes:
            tp = tower(pres, PrimeField(primes[0]))
            _compare_strands(label, rational, {primes[0]: _strands(tp, low, ranks_of, matrices)})
        return KoszulExactnessReport(pres.n, tuple(map_names), rational, "rational", tuple(warnings))

    per_prime = {p: _strands(tower(pres, PrimeField(p)), dmax, ranks_of, matrices) for p in primes}
    if len(set(per_prime.values())) != 1:
        logger.warning("%s: Koszul ranks disagree across primes %s", label, list(primes))
        raise CertificateError(f"Koszul ranks disagree across primes {list(primes)}")
    _compare_strands(label, rational, per_prime)
    strands = rational + per_prime[primes[0]][low + 1:]
    return KoszulExactnessReport(pres.n, tuple(map_names), strands, "dual-prime", tuple(warnings))


def koszul_complex_check(
    alpha: ExteriorThreeForm,
    dmax: int = config.KOSZUL_DEGREE,
    primes: Sequence[int] = config.PRIMES,
    rational_degree: int = config.RATIONAL_DEGREE,
    three_regular: Optional[bool] = None,
) -> KoszulExactnessReport:
    warnings = []
    if three_regular is None:
        three_regular = is_three_regular(alpha).three_regular
    if not three_regular:
        msg = "form is not 3-regular; the Koszul complex shape is not guaranteed"
        logger.warning(msg)
        warnings.append(msg)
    n = alpha.n
    pres = presentation(alpha)
    return _complex_report(
        pres,
        ranks_of=(1, n, n, 1),
        matrices=(row_of_generators(n), slot_linear_matrix(alpha), column_of_generators(n)),
        map_names=("x^t", "A(x)", "x"),
        dmax=dmax,
        primes=primes,
        rational_degree=rational_degree,
        warnings=warnings,
    )


def subalgebra_koszul_check(
    pres_beta: QuadraticPresentation,
    dmax: int = 4,
    primes: Sequence[int] = config.PRIMES,
    rational_degree: int = config.RATIONAL_DEGREE,
) -> tuple[bool, KoszulExactnessReport]:
    """
    For the subalgebra B of A_beta on x^1..x^4: 0 -> B^3 -B(x)-> B^4 -x-> B -> K -> 0
    is exact up to dmax and h_B = 1 / (1 - 4t + 3t^2) there.
    """
    sub = beta_subalgebra(pres_beta)
    report = _complex_report(
        sub,
        ranks_of=(3, 4, 1),
        matrices=(relation_linear_matrix(sub), column_of_generators(4)),
        map_names=("B(x)", "x"),
        dmax=dmax,
        primes=primes,
        rational_degree=rational_degree,
    )
    dims = [s.dims[-1] for s in report.strands]
    expected = series_from_denominator([1, -4, 3], dmax)
    return report.exact_up_to >= dmax and dims == expected, report


def euler_check(dims: Sequence[int], n: int) -> bool:
    """h_{e-3} - n h_{e-2} + n h_{e-1} - h_e = 0 for every e >= 1 covered by ``dims``."""
    def h(d: int) -> int:
        return dims[d] if d >= 0 else 0

    return all(h(e - 3) - n * h(e - 2) + n * h(e - 1) - h(e) == 0 for e in range(1, len(dims)))
