"""
Exact scalar domains: the rationals Q and prime fields F_p.

A field object knows how to coerce integers and Fractions into its elements and
how to do the one kernel operation every elimination in this package needs:
``target -= factor * source`` on sparse rows stored as ``{column: value}`` dicts.
Rationals are ``fractions.Fraction`` (always in lowest terms with a positive
denominator); residues are plain ints in ``[0, p)``.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Union

from core.config import is_prime
from core.errors import CertificateError, ConfigError

Scalar = Union[Fraction, int]


@dataclass(frozen=True)
class RationalField:
    name: str = "rational"

    def coerce(self, x) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)

    def normalize_row(self, row: dict, col: int) -> dict:
        """Scale ``row`` so that ``row[col] == 1``."""
        inv = 1 / row[col]
        return {c: v * inv for c, v in row.items()}

    def subtract_multiple(self, target: dict, factor, source: dict) -> None:
        for c, v in source.items():
            new = target.get(c, 0) - factor * v
            if new:
                target[c] = new
            else:
                target.pop(c, None)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ConfigError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return f"F_{self.p}"

    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise CertificateError(f"denominator {x.denominator} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def normalize_row(self, row: dict, col: int) -> dict:
        p = self.p
        inv = pow(row[col], -1, p)
        return {c: v * inv % p for c, v in row.items()}

    def subtract_multiple(self, target: dict, factor, source: dict) -> None:
        p = self.p
        for c, v in source.items():
            new = (target.get(c, 0) - factor * v) % p
            if new:
                target[c] = new
            else:
                target.pop(c, None)


QQ = RationalField()

Field = Union[RationalField, PrimeField]


def denominator_lcm(values: Iterable) -> int:
    """Least common multiple of the denominators; 1 for integers and empty input."""
    return lcm(1, *(Fraction(v).denominator for v in values))
