"""Exception hierarchy shared by every stage of the pipeline."""


class AspsemError(Exception):
    pass


class ParseError(AspsemError):
    """Syntax error in program text, carrying a 1-based source location."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class RefusalError(AspsemError):
    """A configured enumeration cap would be exceeded.

    Raised instead of silently sampling or truncating; ``size`` is the
    offending count and ``limit`` the cap that was in force.
    """

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"refusing {what}: size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class TruncationError(RefusalError):
    """An interval term has more values than the enumeration cap."""
