"""Exception hierarchy for the enantioswitch package."""

from __future__ import annotations


class EnantioSwitchError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(EnantioSwitchError, ValueError):
    """A physical or numerical parameter is out of its valid range."""


class SchemeShapeError(EnantioSwitchError, ValueError):
    """A drive scheme does not have the level/coupling layout an operation requires."""


class IntegrationFailureError(EnantioSwitchError, RuntimeError):
    """Time propagation could not meet its tolerances.

    Carries ``time``, the integration time (ns) at which the failure occurred.
    """

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


class GridMismatchError(EnantioSwitchError, ValueError):
    """Two objects expected to share a time grid do not."""


class DegenerateInputError(EnantioSwitchError, ValueError):
    """The input is degenerate (e.g. a null-space query on a zero Hamiltonian)."""


class ConfigError(EnantioSwitchError, ValueError):
    """Base class for run-configuration errors."""


class ConfigSyntaxError(ConfigError):
    """Configuration text is not syntactically valid.

    Carries ``line`` and ``column`` of the first offending character.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ConfigKeyError(ConfigError):
    """A configuration key is unknown or carries an invalid value.

    Carries ``key``, the offending key name.
    """

    def __init__(self, message: str, key: str):
        super().__init__(message)
        self.key = key
