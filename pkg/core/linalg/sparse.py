"""
Sparse exact matrices and Gaussian elimination over Q and F_p.

Rows are kept as ``{column: value}`` dicts during elimination and as sorted
``(column, value)`` tuples when stored in an immutable ``SparseMatrix``.

Elimination is leading-term based: every pivot row is normalized to 1 on its
pivot column, and the pivot of a row is its smallest column under a column
order ``key``. Subtracting a pivot row only introduces columns that come after
its pivot, so reducing a row in ascending key order always terminates.

Pivot strategy for pure rank computations is a static Markowitz-style choice:
rows are fed sparsest first, and within a row the column with the fewest
nonzeros in the whole matrix wins (ties broken by row index, then column
index), which keeps fill low and the result reproducible.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Mapping, Optional, Sequence

from core.errors import CertificateError
from core.linalg.fields import QQ, Field, PrimeField

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SparseMatrix:
    nrows: int
    ncols: int
    rows: tuple  # tuple of tuples of (column, value), columns strictly increasing, no zeros

    @classmethod
    def from_rows(cls, nrows: int, ncols: int, rows: Iterable[Mapping[int, object]]) -> "SparseMatrix":
        stored = []
        for row in rows:
            entries = []
            for c, v in sorted(row.items()):
                if not 0 <= c < ncols:
                    raise IndexError(f"column {c} outside 0..{ncols - 1}")
                if v:
                    entries.append((c, v))
            stored.append(tuple(entries))
        if len(stored) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(stored)}")
        return cls(nrows, ncols, tuple(stored))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        return cls.from_rows(nrows, ncols, ({c: v for c, v in enumerate(r) if v} for r in dense))

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, tuple(((i, 1),) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols, tuple(() for _ in range(nrows)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def transpose(self) -> "SparseMatrix":
        cols: list[dict] = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for c, v in row:
                cols[c][i] = v
        return SparseMatrix.from_rows(self.ncols, self.nrows, cols)

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for c, v in row:
                out[i][c] = v
        return out

    def row_dicts(self, field: Field = QQ) -> list[dict]:
        out = []
        for row in self.rows:
            d = {}
            for c, v in row:
                x = field.coerce(v)
                if x:
                    d[c] = x
            out.append(d)
        return out

    def multiply_vector(self, v: Sequence[object], field: Field = QQ) -> list:
        if len(v) != self.ncols:
            raise ValueError(f"vector length {len(v)} != {self.ncols} columns")
        vec = [field.coerce(x) for x in v]
        out = []
        for row in self.rows:
            s = field.coerce(0)
            for c, a in row:
                s += field.coerce(a) * vec[c]
            out.append(field.coerce(s) if isinstance(field, PrimeField) else s)
        return out


class Echelon:
    """
    Incrementally built row-echelon basis of a row space.

    ``pivots`` maps a pivot column to its row, normalized to 1 on that column;
    every other column of that row comes later in ``key`` order.
    """

    def __init__(self, field: Field = QQ, key: Optional[Callable[[int], object]] = None):
        self.field = field
        self.key = key if key is not None else (lambda c: c)
        self.pivots: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, object], full: bool = True) -> dict:
        """
        Reduce ``row`` against the pivots. With ``full`` every pivot column is
        cleared; otherwise only the leading column is cleared repeatedly.
        """
        row = dict(row)
        key = self.key
        pivots = self.pivots
        sub = self.field.subtract_multiple
        while row:
            if full:
                hits = [c for c in row if c in pivots]
                if not hits:
                    break
                c = min(hits, key=key)
            else:
                c = min(row, key=key)
                if c not in pivots:
                    break
            sub(row, row[c], pivots[c])
        return row

    def add(self, row: Mapping[int, object], full: bool = True) -> Optional[int]:
        """Insert a row; return its new pivot column, or None if it was dependent."""
        r = self.reduce(row, full=full)
        if not r:
            return None
        c = min(r, key=self.key)
        self.pivots[c] = self.field.normalize_row(r, c)
        return c

    def make_reduced(self) -> None:
        """Bring the basis to reduced row-echelon form (no pivot row touches another pivot column)."""
        key = self.key
        sub = self.field.subtract_multiple
        done: set[int] = set()
        for c in sorted(self.pivots, key=key, reverse=True):
            row = self.pivots[c]
            while True:
                hits = [h for h in row if h != c and h in done]
                if not hits:
                    break
                h = min(hits, key=key)
                sub(row, row[h], self.pivots[h])
            done.add(c)


def _markowitz_order(rows: list[dict], ncols: int) -> tuple[list[int], Callable[[int], object]]:
    counts = [0] * ncols
    for r in rows:
        for c in r:
            counts[c] += 1
    order = sorted(range(len(rows)), key=lambda i: (len(rows[i]), i))
    return order, lambda c: (counts[c], c)


def rank(m: SparseMatrix, field: Field = QQ) -> int:
    """Exact rank of ``m`` over ``field``."""
    rows = m.row_dicts(field)
    order, key = _markowitz_order(rows, m.ncols)
    ech = Echelon(field, key)
    for i in order:
        if rows[i]:
            ech.add(rows[i], full=False)
        if len(ech) == min(m.nrows, m.ncols):
            break
    return len(ech)


def kernel_basis(m: SparseMatrix, field: Field = QQ) -> list[list]:
    """
    Basis of the right null space {v : m v = 0}, one vector per free column.
    Every returned vector is re-multiplied against ``m`` before it is returned.
    """
    ech = Echelon(field)
    for r in m.row_dicts(field):
        if r:
            ech.add(r)
    ech.make_reduced()
    zero = field.coerce(0)
    one = field.coerce(1)
    free = [c for c in range(m.ncols) if c not in ech.pivots]
    basis = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for c, row in ech.pivots.items():
            if f in row:
                v[c] = _neg(field, row[f])
        basis.append(v)
    _verify_kernel(m, basis, field)
    return basis


def _neg(field: Field, a):
    return (-a) % field.p if isinstance(field, PrimeField) else -a


def _verify_kernel(m: SparseMatrix, basis: list[list], field: Field) -> None:
    for v in basis:
        if any(m.multiply_vector(v, field)):
            raise ArithmeticError("kernel vector failed the re-multiplication check")


def solve(m: SparseMatrix, rhs: Sequence[object], field: Field = QQ) -> Optional[list]:
    """One exact solution x of m x = rhs, or None when the system is inconsistent."""
    if len(rhs) != m.nrows:
        raise ValueError(f"rhs length {len(rhs)} != {m.nrows} rows")
    aug = m.ncols
    ech = Echelon(field)
    for row, b in zip(m.row_dicts(field), rhs):
        r = dict(row)
        b = field.coerce(b)
        if b:
            r[aug] = b
        if r:
            ech.add(r)
    if aug in ech.pivots:
        return None
    ech.make_reduced()
    zero = field.coerce(0)
    x = [zero] * m.ncols
    for c, row in ech.pivots.items():
        x[c] = row.get(aug, zero)
    return x


def inverse(m: SparseMatrix, field: Field = QQ) -> Optional[SparseMatrix]:
    """Inverse of a square matrix, or None when it is singular."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("only square matrices can be inverted")
    if rank(m, field) < n:
        return None
    columns = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        columns.append(solve(m, e, field))
    return SparseMatrix.from_rows(n, n, ({j: columns[j][i] for j in range(n)} for i in range(n)))


def compare_ranks(label: str, rational: int, modular: Mapping[int, int]) -> None:
    """
    Reduction mod p can only lose rank. A smaller rank mod p is logged; a larger
    one means the computation itself is wrong and raises CertificateError.
    """
    for p, rp in modular.items():
        if rp > rational:
            raise CertificateError(f"{label}: rank {rp} over F_{p} exceeds rank {rational} over Q")
        if rp < rational:
            logger.warning("%s: rank over F_%d is %d but rank over Q is %d", label, p, rp, rational)


def determinant(dense: Sequence[Sequence[object]]):
    """Laplace expansion along the first row. Exponential; for cross-checks on small matrices."""
    n = len(dense)
    if n == 0:
        return 1
    if n == 1:
        return dense[0][0]
    total = 0
    for j, a in enumerate(dense[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in dense[1:]]
        term = a * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def rank_by_minors(dense: Sequence[Sequence[object]]) -> int:
    """Largest k with a nonzero k x k minor, by brute force over all minors."""
    nrows = len(dense)
    ncols = len(dense[0]) if nrows else 0
    for k in range(min(nrows, ncols), 0, -1):
        for rows in combinations(range(nrows), k):
            for cols in combinations(range(ncols), k):
                sub = [[list(dense[i])[j] for j in cols] for i in rows]
                if determinant(sub):
                    return k
    return 0
