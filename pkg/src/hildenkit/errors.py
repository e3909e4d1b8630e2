class HildenkitError(Exception):
    pass


class ParseError(HildenkitError, ValueError):
    pass


class IndexRangeError(HildenkitError, ValueError):
    """A generator index is outside the range allowed at the ambient size."""


class StrandMismatch(HildenkitError, ValueError):
    pass


class IllegalStep(HildenkitError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class SearchLimitExceeded(HildenkitError):
    pass


class CosetLimitExceeded(HildenkitError):
    pass


class ActionError(HildenkitError):
    pass


class TerminalFace(HildenkitError):
    """Raised when decomposing a face class that is already a basis element."""
