"""Exception types shared across the package."""


class DiapredError(Exception):
    """Base class for all package errors."""


class DataError(DiapredError):
    """Bad input data: schema problems, unparseable cells, empty files."""


class TrainingError(DiapredError):
    """A model could not be trained (degenerate data, divergence, ...)."""


class DataWarning(UserWarning):
    """Non-fatal data issues (all-zero columns, constant features, ...)."""
