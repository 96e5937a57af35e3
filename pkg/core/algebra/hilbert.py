"""Truncated Hilbert series and their comparison with the 3-Calabi-Yau prediction."""
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from core import config
from core.algebra.presentation import QuadraticPresentation, b_presentation, presentation
from core.algebra.tower import Certificate, graded_dimensions
from core.errors import AlgebraError
from core.forms.catalog import alpha_p

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HilbertReport:
    n: int
    actual: tuple
    predicted: tuple
    certificate: Certificate = field(default_factory=lambda: Certificate("rational"))

    @property
    def matches(self) -> tuple:
        return tuple(a == p for a, p in zip(self.actual, self.predicted))

    @property
    def first_mismatch(self) -> Optional[int]:
        for d, ok in enumerate(self.matches):
            if not ok:
                return d
        return None

    @property
    def match_depth(self) -> int:
        """Largest d with actual = predicted in every degree up to d."""
        bad = self.first_mismatch
        return len(self.actual) - 1 if bad is None else bad - 1

    def to_dict(self) -> dict:
        return {
            "actual": list(self.actual),
            "predicted": list(self.predicted),
            "matches": list(self.matches),
            "first_mismatch": self.first_mismatch,
        }


def series_from_denominator(denominator: Sequence[int], dmax: int) -> list[int]:
    """Coefficients up to t^dmax of 1 / (sum_i denominator[i] t^i), with denominator[0] = 1."""
    if not denominator or denominator[0] != 1:
        raise ValueError("the constant term of the denominator must be 1")
    h: list[int] = []
    for d in range(dmax + 1):
        value = 1 if d == 0 else 0
        for i in range(1, min(d, len(denominator) - 1) + 1):
            value -= denominator[i] * h[d - i]
        h.append(value)
    return h


def multiply_series(a: Sequence[int], b: Sequence[int], dmax: int) -> list[int]:
    out = [0] * (dmax + 1)
    for i, x in enumerate(a[: dmax + 1]):
        for j, y in enumerate(b[: dmax + 1 - i]):
            out[i + j] += x * y
    return out


def predicted_coefficients(n: int, dmax: int) -> list[int]:
    """h_d = n h_{d-1} - n h_{d-2} + h_{d-3}: the series of 1 / (1 - n t + n t^2 - t^3)."""
    return series_from_denominator([1, -n, n, -1], dmax)


def hilbert_series(
    pres: QuadraticPresentation,
    dmax: int = config.MAX_DEGREE,
    primes: Sequence[int] = config.PRIMES,
    rational_degree: int = config.RATIONAL_DEGREE,
) -> HilbertReport:
    if dmax < 2:
        raise AlgebraError(f"Hilbert series needs dmax >= 2, got {dmax}")
    actual, certificate = graded_dimensions(pres, dmax, primes, rational_degree)
    report = HilbertReport(
        n=pres.n,
        actual=tuple(actual),
        predicted=tuple(predicted_coefficients(pres.n, dmax)),
        certificate=certificate,
    )
    if report.first_mismatch is not None:
        logger.info(
            "%s: Hilbert coefficient %d is %d, predicted %d",
            pres.name or "algebra", report.first_mismatch,
            actual[report.first_mismatch], report.predicted[report.first_mismatch],
        )
    return report


def tensor_factorization_check(p: int, dmax: int = 4, **kwargs) -> bool:
    """h_{A(p)} (1 - 2p t + t^2)(1 - t) = 1 up to t^dmax."""
    if p < 1:
        raise AlgebraError(f"p must be at least 1, got {p}")
    dims, _ = graded_dimensions(presentation(alpha_p(p), name=f"A({p})"), dmax, **kwargs)
    product = multiply_series(dims, multiply_series([1, -2 * p, 1], [1, -1], dmax), dmax)
    return product == [1] + [0] * dmax


def b_hilbert_check(p: int, dmax: int = 4, **kwargs) -> bool:
    """h_{B(p)} (1 - 2p t + t^2) = 1 up to t^dmax."""
    dims, _ = graded_dimensions(b_presentation(p), dmax, **kwargs)
    return multiply_series(dims, [1, -2 * p, 1], dmax) == [1] + [0] * dmax
