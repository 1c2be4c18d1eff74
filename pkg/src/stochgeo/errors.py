"""Exception types shared across the package.

The CLI maps ParameterError to exit code 2 (usage error) and DataError /
missing files to exit code 1 (runtime error).
"""


class ParameterError(ValueError):
    """A parameter value is outside its documented domain."""


class DataError(RuntimeError):
    """Input data is malformed, empty, or otherwise unusable."""
