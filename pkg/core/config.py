"""
Central configuration for x3form.

All settings are loaded from environment variables (or a .env file via python-dotenv).
Key variables:
  - X3F_PRIMES: two primes > 2^20 for dual-prime certificates (default: 1048583,2097169)
  - X3F_MAX_DEGREE: truncation degree of Hilbert series (default: 5)
  - X3F_KOSZUL_DEGREE: highest Koszul strand checked (default: 4)
  - X3F_RATIONAL_DEGREE: graded components up to this degree are computed over Q (default: 4)
  - X3F_SEED: seed of the randomized checks (default: 20240917)
  - X3F_LOG_LEVEL: logging level of the command line (default: INFO)
"""
import os
from pathlib import Path

from dotenv import load_dotenv

from core.errors import ConfigError

load_dotenv()

ROOT = Path(__file__).resolve().parent.parent


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e


def parse_primes(raw: str) -> tuple[int, int]:
    """Parse a 'p1,p2' string into a validated prime pair."""
    try:
        values = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError as e:
        raise ConfigError(f"primes must be integers, got {raw!r}") from e
    if len(values) != 2:
        raise ConfigError(f"exactly two primes are required, got {raw!r}")
    return validate_primes(values)


def validate_primes(primes: tuple[int, ...]) -> tuple[int, int]:
    p1, p2 = primes
    if p1 == p2:
        raise ConfigError("the two certificate primes must be distinct")
    for p in (p1, p2):
        if p <= 2**20 or not is_prime(p):
            raise ConfigError(f"{p} is not a prime above 2^20")
    return p1, p2


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# ── Certification ──────────────────────────────────────────────────────────
PRIMES: tuple[int, int] = parse_primes(os.getenv("X3F_PRIMES", "1048583,2097169"))
RATIONAL_DEGREE: int = _int_env("X3F_RATIONAL_DEGREE", 4)

# ── Depths ─────────────────────────────────────────────────────────────────
MAX_DEGREE: int = _int_env("X3F_MAX_DEGREE", 5)
KOSZUL_DEGREE: int = _int_env("X3F_KOSZUL_DEGREE", 4)
DEEP_DEGREE: int = _int_env("X3F_DEEP_DEGREE", 6)

# ── Randomized checks ──────────────────────────────────────────────────────
SEED: int = _int_env("X3F_SEED", 20240917)
TRIALS: int = _int_env("X3F_TRIALS", 10)

# ── Paths ──────────────────────────────────────────────────────────────────
SCHEMAS_DIR: Path = ROOT / "core" / "pipeline" / "schemas"
CATALOG_PATH: Path = ROOT / "core" / "forms" / "catalog.yaml"

_output_env = os.getenv("X3F_OUTPUT_DIR", "")
OUTPUT_DIR: Path = Path(_output_env) if _output_env else ROOT / "outputs"

LOG_LEVEL: str = os.getenv("X3F_LOG_LEVEL", "INFO").upper()

SCHEMA_VERSION = "1.0"
