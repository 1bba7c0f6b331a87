class LefschetzError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(LefschetzError, ValueError):
    pass


class UnsupportedError(LefschetzError):
    """Input is well formed but outside what the library can compute."""


class UnsupportedCurveError(UnsupportedError):
    pass


class FiberMismatchError(LefschetzError, ValueError):
    pass


class ValidationError(LefschetzError, ValueError):
    """A datum failed a necessary condition (closure, presentation checks...)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CalibrationError(LefschetzError):
    pass


class InvariantViolation(LefschetzError):
    """A move that should preserve (sigma, eta) changed them."""


class ParseError(LefschetzError, ValueError):
    def __init__(self, code: str, line: int, message: str):
        super().__init__(f"line {line}: {code}: {message}")
        self.code = code
        self.line = line
        self.message = message
