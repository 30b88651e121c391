"""Exception hierarchy shared by every app.

Each error carries a structured ``detail`` mapping and the process exit code
the command line should terminate with.
"""

EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


class EnergyLabError(Exception):
    exit_code = EXIT_DOMAIN

    def __init__(self, message, **detail):
        self.message = message
        self.detail = detail
        super().__init__(f"{message} {detail}" if detail else message)


class BoundsError(EnergyLabError):
    """An argument lies outside the range an operation accepts."""


class CeilingExceededError(EnergyLabError):
    """A configured ceiling (pairs, set size, sieve limit) would be crossed."""


class ArithmeticOverflowError(EnergyLabError):
    """A result would leave the signed 63-bit magnitude range."""

    def __init__(self, message, pair=None, **detail):
        self.pair = pair
        if pair is not None:
            detail["pair"] = pair
        super().__init__(message, **detail)


class IncompleteFactorizationError(EnergyLabError):
    pass


class DivergenceError(EnergyLabError):
    pass


class UndefinedInputError(EnergyLabError):
    pass


class DegenerateDilationError(EnergyLabError):
    pass


class CoverageError(EnergyLabError):
    """A prime factor has no phase in the assignment."""


class DomainError(EnergyLabError):
    pass


class NumericalError(EnergyLabError):
    def __init__(self, message, sample_index=None, **detail):
        self.sample_index = sample_index
        super().__init__(message, sample_index=sample_index, **detail)


class GeneratorSyntaxError(EnergyLabError):
    exit_code = EXIT_USAGE

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        pointer = f"\n  {text}\n  {' ' * position}^" if text else ""
        super().__init__(f"{message} (at position {position}){pointer}")


class ConfigError(EnergyLabError):
    exit_code = EXIT_USAGE


class DataFileError(EnergyLabError):
    exit_code = EXIT_IO

    def __init__(self, message, path, **detail):
        self.path = str(path)
        super().__init__(message, path=self.path, **detail)
