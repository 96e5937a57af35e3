"""
Nondegeneracy and 3-regularity of exterior 3-forms.

A form is nondegenerate when A_k X = 0 for all k forces X = 0, and 3-regular
when it is nondegenerate and the only solutions (M, N) of M A_k = A_k N for
all k are the scalar pairs (lambda 1, lambda 1).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from core.forms.three_form import ExteriorThreeForm
from core.linalg.fields import QQ
from core.linalg.sparse import SparseMatrix, kernel_basis
from core.regularity.slots import SlotMatrixFamily, slot_matrices

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RegularityVerdict:
    nondegenerate: bool
    witness: Optional[tuple]
    intertwiner_dimension: int
    intertwiner_basis: list = field(default_factory=list)  # (M, N) pairs of object arrays
    three_regular: bool = False

    @property
    def reason(self) -> str:
        if not self.nondegenerate:
            return "degenerate"
        if self.three_regular:
            return "3-regular"
        return f"intertwiner space of dimension {self.intertwiner_dimension}"


def _stacked(family: SlotMatrixFamily) -> SparseMatrix:
    n = family.n
    rows = []
    for a in family.matrices:
        for i in range(n):
            rows.append({j: a[i, j] for j in range(n) if a[i, j]})
    return SparseMatrix.from_rows(n * n, n, rows)


def is_nondegenerate(alpha: ExteriorThreeForm) -> tuple[bool, Optional[tuple]]:
    """(True, None), or (False, X) with X != 0 and A_k X = 0 for all k."""
    kernel = kernel_basis(_stacked(slot_matrices(alpha)), QQ)
    if not kernel:
        return True, None
    return False, tuple(kernel[0])


def intertwiner_system(family: SlotMatrixFamily) -> SparseMatrix:
    """
    Rows (k, i, j) of M A_k - A_k N = 0. M_{ab} is unknown a*n + b and
    N_{ab} is unknown n^2 + a*n + b.
    """
    n = family.n
    rows = []
    for a in family.matrices:
        for i in range(n):
            for j in range(n):
                row: dict[int, Fraction] = {}
                for l in range(n):
                    if a[l, j]:
                        row[i * n + l] = row.get(i * n + l, 0) + a[l, j]
                    if a[i, l]:
                        col = n * n + l * n + j
                        row[col] = row.get(col, 0) - a[i, l]
                rows.append(row)
    return SparseMatrix.from_rows(len(rows), 2 * n * n, rows)


def _as_pair(v: list, n: int) -> tuple[np.ndarray, np.ndarray]:
    m = np.array(v[: n * n], dtype=object).reshape(n, n)
    w = np.array(v[n * n:], dtype=object).reshape(n, n)
    return m, w


def intertwiner_space(alpha: ExteriorThreeForm) -> tuple[int, list]:
    family = slot_matrices(alpha)
    basis = [_as_pair(v, alpha.n) for v in kernel_basis(intertwiner_system(family), QQ)]
    return len(basis), basis


def is_intertwiner(alpha: ExteriorThreeForm, m, w) -> bool:
    """M A_k == A_k N for every k."""
    m = np.array(m, dtype=object)
    w = np.array(w, dtype=object)
    return all((m.dot(a) == a.dot(w)).all() for a in slot_matrices(alpha).matrices)


def _is_scalar_pair(m: np.ndarray, w: np.ndarray) -> bool:
    lam = m[0, 0]
    if not lam:
        return False
    n = m.shape[0]
    scalar = np.diag([lam] * n).astype(object)
    return bool((m == scalar).all() and (w == scalar).all())


def is_three_regular(alpha: ExteriorThreeForm) -> RegularityVerdict:
    nondegenerate, witness = is_nondegenerate(alpha)
    dim, basis = intertwiner_space(alpha)
    three_regular = nondegenerate and dim == 1 and _is_scalar_pair(*basis[0])
    logger.debug("nondegenerate=%s intertwiner_dimension=%d", nondegenerate, dim)
    return RegularityVerdict(
        nondegenerate=nondegenerate,
        witness=witness,
        intertwiner_dimension=dim,
        intertwiner_basis=basis,
        three_regular=three_regular,
    )
