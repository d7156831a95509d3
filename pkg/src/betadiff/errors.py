"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, NumericAbort -> 3,
everything else -> a regular traceback.
"""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ArgumentError(ValueError):
    """Arguments are individually valid but mutually inconsistent (e.g. s >= t)."""


class ConfigError(ValueError):
    """A configuration file or preset is invalid."""


class DataError(ValueError):
    """User-supplied data violates the documented range contract."""


class NumericAbort(RuntimeError):
    """A non-finite value surfaced where the algorithm requires finiteness."""
