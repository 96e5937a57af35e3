"""
Slot matrices of an exterior 3-form.

For a form alpha on K^n the k-th slot matrix is (A_k)^i_j = alpha_{ikj}, i.e.
A_k e_j = sum_i alpha_{ikj} e_i. Each A_k is antisymmetric, and the matrix
A(x) = sum_k A_k x^k with entries linear in the generators packages the
relations of the quadratic algebra as the column identity d x = A(x) x.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from core.forms.catalog import alpha_p
from core.forms.three_form import ExteriorThreeForm, as_scalar


@dataclass(frozen=True, eq=False)
class SlotMatrixFamily:
    n: int
    matrices: tuple  # A_1..A_n as n x n object arrays (index 0 holds A_1)
    form: Optional[ExteriorThreeForm] = None

    def matrix(self, k: int) -> np.ndarray:
        """A_k for 1-based k."""
        return self.matrices[k - 1]

    def evaluate_at(self, u: Sequence[object]) -> np.ndarray:
        """A(u) = sum_k u^k A_k."""
        out = np.full((self.n, self.n), Fraction(0), dtype=object)
        for k, uk in enumerate(u):
            uk = as_scalar(uk)
            if uk:
                out = out + uk * self.matrices[k]
        return out

    def symbolic(self) -> list[list[dict[int, Fraction]]]:
        """A(x) entrywise as linear forms {k: coefficient of x^k} (1-based k)."""
        out = [[{} for _ in range(self.n)] for _ in range(self.n)]
        for k, a in enumerate(self.matrices, start=1):
            for i in range(self.n):
                for j in range(self.n):
                    if a[i, j]:
                        out[i][j][k] = a[i, j]
        return out

    def display(self) -> list[list[str]]:
        rows = []
        for row in self.symbolic():
            cells = []
            for entry in row:
                text = ""
                for k, c in sorted(entry.items()):
                    mono = f"x{k}" if abs(c) == 1 else f"{abs(c)}*x{k}"
                    text += ("-" if c < 0 else ("+" if text else "")) + mono
                cells.append(text or "0")
            rows.append(cells)
        return rows

    def is_antisymmetric(self) -> bool:
        return all((a.T == -a).all() for a in self.matrices)


def slot_matrices(alpha: ExteriorThreeForm) -> SlotMatrixFamily:
    tensor = alpha.to_tensor()
    mats = tuple(np.array(tensor[:, k, :], dtype=object) for k in range(alpha.n))
    return SlotMatrixFamily(n=alpha.n, matrices=mats, form=alpha)


def block_matrix_au(p: int, u: Sequence[object]) -> np.ndarray:
    """
    The block form of A(u) for alpha_p:

        [ 0_p            -u^{2p+1} 1_p   (u^{p+1} .. u^{2p})^t ]
        [ u^{2p+1} 1_p    0_p            (-u^1 .. -u^p)^t      ]
        [ -u^{p+1}..-u^{2p}  u^1..u^p    0                     ]
    """
    n = 2 * p + 1
    if len(u) != n:
        raise ValueError(f"u must have length {n}")
    u = [as_scalar(x) for x in u]
    a = np.full((n, n), Fraction(0), dtype=object)
    top = u[2 * p]
    for m in range(p):
        a[m, p + m] = -top
        a[p + m, m] = top
        a[m, 2 * p] = u[p + m]
        a[2 * p, m] = -u[p + m]
        a[p + m, 2 * p] = -u[m]
        a[2 * p, p + m] = u[m]
    return a


def block_matrix_check(p: int, rng: np.random.Generator, trials: int = 5) -> bool:
    """The block form agrees with the slot-matrix family of alpha_p at random integer points."""
    family = slot_matrices(alpha_p(p))
    for _ in range(trials):
        u = [Fraction(int(x)) for x in rng.integers(-9, 10, size=2 * p + 1)]
        if not (block_matrix_au(p, u) == family.evaluate_at(u)).all():
            return False
    return True
