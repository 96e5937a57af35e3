"""Exception types raised by the x3form library.

Input and certificate errors derive from ValueError so callers that only care
about "bad input" can catch one type. ReportError marks a defect in the
analysis itself. The CLI maps each class to an exit code.
"""


class FormError(ValueError):
    """Invalid exterior form construction or operation (dimensions, indices, singular Q)."""


class CatalogError(ValueError):
    """Unknown catalog entry or invalid catalog parameters."""


class FormFileError(ValueError):
    """A form file could not be read or violates the form file schema."""


class AlgebraError(ValueError):
    """Precondition violated by a graded-algebra operation."""


class CertificateError(ValueError):
    """The configured primes disagree, so no dual-prime certificate can be issued."""


class ConfigError(ValueError):
    """Invalid configuration value."""


class ReportError(RuntimeError):
    """The analysis produced an inconsistent or schema-invalid report."""
