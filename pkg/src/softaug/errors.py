"""Exception types shared across the package."""


class SoftAugError(Exception):
    """Base class for package errors."""


class DataError(SoftAugError):
    """Malformed input data: lexicon files, dataset files, label maps."""


class DomainError(SoftAugError, ValueError):
    """An argument violates an operation's precondition."""


class TrainingError(SoftAugError, RuntimeError):
    """Training diverged or produced a non-finite loss."""
