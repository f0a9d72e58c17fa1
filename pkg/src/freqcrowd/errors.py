"""Exception types shared across the package."""


class FreqcrowdError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(FreqcrowdError, ValueError):
    """A caller-supplied parameter is outside its valid domain."""


class InputError(FreqcrowdError, ValueError):
    """Input data (arrays, files, tables) is malformed or inconsistent."""


class UnfittableError(FreqcrowdError, RuntimeError):
    """A fit has no informative data to constrain it."""


class SingularFitError(FreqcrowdError, RuntimeError):
    """A fit's design matrix is singular (e.g. a trend with a single abscissa)."""
