'''
Error hierarchy for the quartered-hexagon toolkit.
Every error carries the CLI exit code it maps to, so the front end can
distinguish math failures from misuse without string matching.
'''


class QHexError(Exception):
    exit_code = 1


class ConfigError(QHexError):
    # bad values in the environment / .env file
    exit_code = 2


class InvalidInputError(QHexError, ValueError):
    exit_code = 2


class ExponentOverflowError(QHexError, OverflowError):
    pass


class ExactDivisionError(QHexError, ArithmeticError):
    '''Raised when a Laurent polynomial quotient leaves a remainder.'''


class VariableSetMismatchError(QHexError, ValueError):
    pass


class SizeBoundExceededError(QHexError):
    pass


class ZeroDenominatorError(QHexError, ZeroDivisionError):
    pass


class EnumerationCapError(QHexError):
    exit_code = 4

    def __init__(self, message: str, visited: int = 0, cap: int = 0):
        super().__init__(message)
        self.visited = visited
        self.cap = cap


class RouteDisagreementError(QHexError):
    # the three routes of a region computation returned different polynomials
    exit_code = 3
