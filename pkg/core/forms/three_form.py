"""
Exterior 3-forms on K^n with exact coefficients.

A form is stored by its coefficients alpha_{ijk} on strictly increasing,
1-based index triples i<j<k (the wedge monomials theta^i ^ theta^j ^ theta^k);
the full tensor is recovered by antisymmetrization. Storage is canonical, so two
forms are equal exactly when their dataclasses compare equal.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from core.errors import FormError
from core.linalg.fields import QQ
from core.linalg.sparse import SparseMatrix, inverse

Triple = tuple[int, int, int]


def permutation_sign(indices: Sequence[int]) -> int:
    """Sign of the permutation sorting ``indices``; 0 when an index repeats."""
    if len(set(indices)) != len(indices):
        return 0
    sign = 1
    idx = list(indices)
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign


def as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise FormError(f"floating-point coefficient {value!r} is not exact")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as e:
        raise FormError(f"coefficient {value!r} is not a rational number") from e


@dataclass(frozen=True)
class ExteriorThreeForm:
    n: int
    terms: tuple  # sorted tuple of ((i, j, k), Fraction) with i<j<k and nonzero coefficients

    def __post_init__(self):
        if self.n < 3:
            raise FormError(f"dimension must be at least 3, got {self.n}")
        for (i, j, k), c in self.terms:
            if not (1 <= i < j < k <= self.n):
                raise FormError(f"triple {(i, j, k)} is not strictly increasing within 1..{self.n}")
            if not c:
                raise FormError(f"stored zero coefficient on {(i, j, k)}")

    @property
    def coefficients(self) -> dict[Triple, Fraction]:
        return dict(self.terms)

    def component(self, i: int, j: int, k: int) -> Fraction:
        """Full antisymmetric tensor component alpha_{ijk} (1-based, any order)."""
        sign = permutation_sign((i, j, k))
        if sign == 0:
            return Fraction(0)
        key = tuple(sorted((i, j, k)))
        return sign * self.coefficients.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Triple]:
        return [t for t, _ in self.terms]

    def to_tensor(self) -> np.ndarray:
        """Dense n x n x n object array of exact components (0-based axes)."""
        t = np.full((self.n,) * 3, Fraction(0), dtype=object)
        for (i, j, k), c in self.terms:
            for perm in ((i, j, k), (j, k, i), (k, i, j)):
                t[perm[0] - 1, perm[1] - 1, perm[2] - 1] = c
            for perm in ((j, i, k), (i, k, j), (k, j, i)):
                t[perm[0] - 1, perm[1] - 1, perm[2] - 1] = -c
        return t

    def wedge_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j, k), c in self.terms:
            mono = f"t{i}^t{j}^t{k}"
            if c == 1:
                parts.append(f"+ {mono}")
            elif c == -1:
                parts.append(f"- {mono}")
            else:
                parts.append(f"{'-' if c < 0 else '+'} {abs(c)}*{mono}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text

    def __add__(self, other: "ExteriorThreeForm") -> "ExteriorThreeForm":
        return add(self, other)

    def __neg__(self) -> "ExteriorThreeForm":
        return scale(self, -1)


def from_components(n: int, entries: Iterable[tuple[Sequence[int], object]]) -> ExteriorThreeForm:
    """
    Build a form from (triple, coefficient) pairs given in any index order.
    Each pair contributes sign(sort) * coefficient to the sorted triple; repeated
    indices contribute nothing; exact zeros are dropped.
    """
    if n < 3:
        raise FormError(f"dimension must be at least 3, got {n}")
    acc: dict[Triple, Fraction] = {}
    for triple, value in entries:
        if len(triple) != 3:
            raise FormError(f"expected an index triple, got {triple!r}")
        for idx in triple:
            if not 1 <= int(idx) <= n:
                raise FormError(f"index {idx} out of range 1..{n}")
        sign = permutation_sign(triple)
        if sign == 0:
            continue
        key = tuple(sorted(int(i) for i in triple))
        acc[key] = acc.get(key, Fraction(0)) + sign * as_scalar(value)
    return ExteriorThreeForm(n, tuple(sorted((t, c) for t, c in acc.items() if c)))


def zero_form(n: int) -> ExteriorThreeForm:
    return ExteriorThreeForm(n, ())


def _check_vector(alpha: ExteriorThreeForm, v: Sequence[object], name: str) -> list[Fraction]:
    if len(v) != alpha.n:
        raise FormError(f"{name} has length {len(v)}, expected {alpha.n}")
    return [as_scalar(x) for x in v]


def evaluate(alpha: ExteriorThreeForm, X, Y, Z) -> Fraction:
    """alpha(X, Y, Z): sum over stored monomials of coefficient times the 3x3 minor."""
    X = _check_vector(alpha, X, "X")
    Y = _check_vector(alpha, Y, "Y")
    Z = _check_vector(alpha, Z, "Z")
    total = Fraction(0)
    for (i, j, k), c in alpha.terms:
        a, b, d = i - 1, j - 1, k - 1
        minor = (
            X[a] * (Y[b] * Z[d] - Y[d] * Z[b])
            - X[b] * (Y[a] * Z[d] - Y[d] * Z[a])
            + X[d] * (Y[a] * Z[b] - Y[b] * Z[a])
        )
        total += c * minor
    return total


def interior_product(alpha: ExteriorThreeForm, X) -> np.ndarray:
    """The 2-form i_X(alpha) as an antisymmetric matrix M[j][k] = alpha(X, e_j, e_k)."""
    X = _check_vector(alpha, X, "X")
    m = np.full((alpha.n, alpha.n), Fraction(0), dtype=object)
    for (i, j, k), c in alpha.terms:
        a, b, d = i - 1, j - 1, k - 1
        # i_X(t^a ^ t^b ^ t^d) = X_a t^b^t^d - X_b t^a^t^d + X_d t^a^t^b
        for (s, p, q) in ((X[a], b, d), (-X[b], a, d), (X[d], a, b)):
            if s:
                m[p, q] += c * s
                m[q, p] -= c * s
    return m


def add(alpha: ExteriorThreeForm, beta: ExteriorThreeForm) -> ExteriorThreeForm:
    if alpha.n != beta.n:
        raise FormError(f"dimension mismatch: {alpha.n} != {beta.n}")
    return from_components(alpha.n, list(alpha.terms) + list(beta.terms))


def scale(alpha: ExteriorThreeForm, c) -> ExteriorThreeForm:
    c = as_scalar(c)
    return from_components(alpha.n, [(t, c * v) for t, v in alpha.terms])


def _as_square(Q, n: int) -> list[list[Fraction]]:
    rows = [[as_scalar(x) for x in row] for row in np.asarray(Q, dtype=object).tolist()]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormError(f"transformation must be {n} x {n}")
    return rows


def gl_transform(alpha: ExteriorThreeForm, Q) -> ExteriorThreeForm:
    """Pullback alpha'(X, Y, Z) = alpha(QX, QY, QZ) by an invertible matrix Q."""
    q = _as_square(Q, alpha.n)
    if inverse(SparseMatrix.from_dense(q), QQ) is None:
        raise FormError("transformation matrix is singular")
    columns = [[q[r][c] for r in range(alpha.n)] for c in range(alpha.n)]
    entries = []
    for a, b, d in combinations(range(alpha.n), 3):
        value = evaluate(alpha, columns[a], columns[b], columns[d])
        if value:
            entries.append(((a + 1, b + 1, d + 1), value))
    return from_components(alpha.n, entries)


def random_unimodular(n: int, rng: np.random.Generator, steps: int = 12) -> np.ndarray:
    """Integer matrix of determinant +-1 built from seeded elementary operations."""
    q = np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object)
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        if rng.random() < 0.2:
            q[[i, j], :] = q[[j, i], :]
        else:
            c = int(rng.choice([-2, -1, 1, 2]))
            q[i, :] = q[i, :] + c * q[j, :]
    return q


def random_form(n: int, rng: np.random.Generator, bound: int = 5) -> ExteriorThreeForm:
    """Seeded random form with integer coefficients in [-bound, bound]."""
    entries = [(t, int(rng.integers(-bound, bound + 1))) for t in combinations(range(1, n + 1), 3)]
    return from_components(n, entries)
