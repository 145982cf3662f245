from typing import Optional

from sparse_ddm.constants import EXIT_CONFIG, EXIT_INPUT, EXIT_NUMERIC


class DDMError(Exception):
    """Base class for every error raised by sparse_ddm."""

    exit_code: int = EXIT_NUMERIC


class ConfigError(DDMError, ValueError):
    """A configuration value, or a modelling hypothesis it encodes, is violated."""

    exit_code = EXIT_CONFIG


class DimensionError(DDMError, ValueError):
    """Lengths or indices do not match the dimension of the measure."""

    exit_code = EXIT_CONFIG


class InputError(DDMError, ValueError):
    """Data could not be read or contains non-finite values.

    Args:
        message (str): what went wrong
        line (int, optional): 1-based line number in the offending file. Defaults to None.
    """

    exit_code = EXIT_INPUT

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NumericError(DDMError, ArithmeticError):
    """An internal computation produced a non-finite value."""

    exit_code = EXIT_NUMERIC
