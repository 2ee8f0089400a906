"""Exception hierarchy shared by every percepta module.

The CLI maps these onto process exit codes: configuration / input /
format problems exit 1, numerical failures (training divergence) exit 2.
"""


class PerceptaError(Exception):
    exit_code = 1


class ConfigError(PerceptaError):
    """Bad or inconsistent configuration (counts, depths, ranges)."""


class InputError(PerceptaError):
    """Invalid runtime input (shape mismatch, unknown label, ...)."""


class DegenerateInputError(InputError):
    """Input is structurally valid but carries no usable signal."""


class FormatError(PerceptaError):
    """On-disk artifact is malformed (bad magic, truncation, ...)."""


class DataError(PerceptaError):
    """File parsed but its payload is unusable (NaN/Inf values)."""


class IngestionError(PerceptaError):
    """Corpus layout violates expectations (unknown genre directory)."""


class TrainingError(PerceptaError):
    """Numerical failure during optimization."""

    exit_code = 2
